#pragma once

// Umbrella header for the credit scoring and rating library.

#include "zrating/csv.hpp"
#include "zrating/discriminant.hpp"
#include "zrating/errors.hpp"
#include "zrating/evaluate.hpp"
#include "zrating/lmoments.hpp"
#include "zrating/model_io.hpp"
#include "zrating/pearson3.hpp"
#include "zrating/pipeline.hpp"
#include "zrating/report.hpp"
#include "zrating/stats.hpp"
#include "zrating/synthetic.hpp"
#include "zrating/toy.hpp"
#include "zrating/transform.hpp"
#include "zrating/types.hpp"
