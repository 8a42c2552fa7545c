// Acceptance suite: one check per numbered criterion, one pass/fail line
// each, nonzero exit when any criterion fails. Pass a criterion number to
// run it alone.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zrating/zrating.hpp"

using namespace zrating;

namespace {

struct Criterion {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

std::string fmt(const char* format, ...) {
    char buf[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// 1. Reference-example golden suite: replay the embedded dataset with the
// reference weights and match every published intermediate at its stated
// tolerance, ratings exactly.
Criterion criterion_toy_golden() {
    Criterion c;
    const auto result = run_toy_check();
    for (const auto& check : result.checks) {
        // display_only entries are the published theta3/tau3 values; the
        // stated tolerances apply to them here as written, although they are
        // arithmetically incompatible with the delta = 0.7202 anchor checked
        // alongside (3*pi*(0.279)^2 = 0.734). See the toy table for both.
        const bool ok = std::fabs(check.actual - check.expected) <= check.tolerance;
        c.require(ok, fmt("%s: expected %.4f +- %.4g, got %.5f", check.name.c_str(),
                          check.expected, check.tolerance, check.actual));
    }
    return c;
}

// 2. PWM estimator equals the subset-enumeration expectation
// E[max of (r+1) values] / (r+1) on random samples.
Criterion criterion_pwm_oracle() {
    Criterion c;
    std::mt19937_64 rng(220001);
    std::uniform_int_distribution<int> size(3, 50);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> v(size(rng));
        for (auto& x : v) x = value(rng);
        for (int r = 0; r <= 2; ++r) {
            if (v.size() <= static_cast<std::size_t>(r)) continue;
            const double diff = std::fabs(sample_pwm(v, r) - oracles::brute_force_pwm(v, r));
            worst = std::max(worst, diff);
        }
    }
    c.require(worst <= 1e-10, fmt("max |estimator - enumeration| = %.3g > 1e-10", worst));
    c.notes.push_back(fmt("max deviation %.3g over 1000 samples", worst));
    return c;
}

// 3. Distribution fit round trip over the parameter grid at n = 1e5:
// each parameter within +-5% (|c| <= 0.05 when c = 0).
Criterion criterion_p3_round_trip() {
    Criterion c;
    std::mt19937_64 rng(42);
    for (const double loc : {-5.0, 0.0, 5.0}) {
        for (const double scale : {0.5, 2.0, 10.0}) {
            for (const double shape : {0.6, 1.449, 5.0}) {
                const P3Params truth{loc, scale, shape, false};
                const auto xs = p3_sample(truth, 100000, rng);
                const auto fit = fit_p3(l_moments(xs));
                const double ec = loc == 0.0 ? std::fabs(fit.location_c)
                                             : std::fabs(fit.location_c - loc) / std::fabs(loc);
                const double ea = std::fabs(fit.scale_alpha - scale) / scale;
                const double ee = std::fabs(fit.shape_eta - shape) / shape;
                const double climit = 0.05;
                const bool ok = ec <= climit && ea <= 0.05 && ee <= 0.05;
                c.require(ok, fmt("cell (c=%g, alpha=%g, eta=%g): fitted "
                                  "(%.4f, %.4f, %.4f), errors (%.3f, %.3f, %.3f)",
                                  loc, scale, shape, fit.location_c, fit.scale_alpha,
                                  fit.shape_eta, ec, ea, ee));
            }
        }
    }
    return c;
}

// 4. Cube-root normal approximation: the index of true draws is close to
// standard normal in mean and spread.
Criterion criterion_index_normality() {
    Criterion c;
    for (const double eta : {1.0, 2.0, 5.0}) {
        const P3Params p{0.0, 1.0, eta, false};
        std::mt19937_64 rng(440000 + static_cast<unsigned>(eta));
        const auto xs = p3_sample(p, 10000, rng);
        double mean = 0.0;
        std::vector<double> hs;
        hs.reserve(xs.size());
        for (double x : xs) {
            hs.push_back(credit_index(p, x));
            mean += hs.back();
        }
        mean /= static_cast<double>(hs.size());
        double var = 0.0;
        for (double h : hs) var += (h - mean) * (h - mean);
        var /= static_cast<double>(hs.size());
        const double sd = std::sqrt(var);
        c.require(std::fabs(mean) < 0.05,
                  fmt("eta=%g: |mean H| = %.4f >= 0.05", eta, std::fabs(mean)));
        c.require(std::fabs(sd - 1.0) < 0.1,
                  fmt("eta=%g: |sd H - 1| = %.4f >= 0.1", eta, std::fabs(sd - 1.0)));
        c.notes.push_back(fmt("eta=%g: mean H = %+.4f, sd H = %.4f", eta, mean, sd));
    }
    return c;
}

// 5. Classification-matrix arithmetic on the published counts.
Criterion criterion_matrix_arithmetic() {
    Criterion c;
    const ClassificationMatrix m{1966, 426, 14, 1526};
    c.require(std::fabs(m.accuracy() - 3492.0 / 3932.0) < 1e-15, "accuracy != 3492/3932");
    c.require(std::fabs(m.accuracy() - 0.888) < 5e-4,
              fmt("accuracy %.4f does not round to 88.8%%", m.accuracy()));
    c.require(std::fabs(m.type_i() - 426.0 / 2392.0) < 1e-15, "type I != 426/2392");
    c.require(m.type_i() > 0.177 && m.type_i() < 0.179,
              fmt("type I %.4f outside the accepted roundings 17.7%%..17.8%%", m.type_i()));
    c.require(std::fabs(m.type_ii() - 14.0 / 1540.0) < 1e-15, "type II != 14/1540");
    c.require(std::fabs(m.type_ii() - 0.009) < 1e-4,
              fmt("type II %.4f does not round to 0.9%%", m.type_ii()));
    c.notes.push_back(fmt("accuracy %.4f, type I %.4f, type II %.4f", m.accuracy(), m.type_i(),
                          m.type_ii()));
    return c;
}

// 6. Full pipeline on seeded synthetic data (4000 records, 12 industries):
// hold-out accuracy >= 90%, negative significant logit slope on the
// nonlinear score, and strictly directional threshold sweep.
Criterion criterion_synthetic_pipeline() {
    Criterion c;
    SyntheticConfig cfg;
    const auto data = generate_synthetic(4242, cfg);
    const auto ev = holdout_evaluate(data, 4242, default_thresholds());

    const double acc = ev.holdout_matrix.accuracy();
    c.require(acc >= 0.90, fmt("hold-out accuracy %.4f < 0.90", acc));
    c.require(ev.logistic_zm.slope < 0.0,
              fmt("logit slope %.4f is not negative", ev.logistic_zm.slope));
    c.require(ev.logistic_zm.wald_slope > 3.84,
              fmt("Wald %.2f <= 3.84", ev.logistic_zm.wald_slope));

    const auto& sweep = ev.sweep.matrices;
    c.require(sweep.size() == 3, "sweep did not produce three variants");
    if (sweep.size() == 3) {
        c.require(sweep[0].type_i() > sweep[1].type_i() && sweep[1].type_i() > sweep[2].type_i(),
                  fmt("type I not strictly decreasing: %.4f, %.4f, %.4f", sweep[0].type_i(),
                      sweep[1].type_i(), sweep[2].type_i()));
        c.require(
            sweep[0].type_ii() < sweep[1].type_ii() && sweep[1].type_ii() < sweep[2].type_ii(),
            fmt("type II not strictly increasing: %.4f, %.4f, %.4f", sweep[0].type_ii(),
                sweep[1].type_ii(), sweep[2].type_ii()));
    }
    c.notes.push_back(fmt("hold-out accuracy %.4f, slope %.3f, Wald %.1f", acc,
                          ev.logistic_zm.slope, ev.logistic_zm.wald_slope));
    if (sweep.size() == 3) {
        c.notes.push_back(fmt("sweep type I: %.4f -> %.4f -> %.4f; type II: %.4f -> %.4f -> %.4f",
                              sweep[0].type_i(), sweep[1].type_i(), sweep[2].type_i(),
                              sweep[0].type_ii(), sweep[1].type_ii(), sweep[2].type_ii()));
    }
    return c;
}

// 7. Property battery from the module contracts.
Criterion criterion_properties() {
    Criterion c;
    std::mt19937_64 rng(770001);

    {  // signed_log oddness and strict monotonicity
        std::uniform_real_distribution<double> u(-40.0, 40.0);
        bool odd = true, mono = true;
        for (int i = 0; i < 5000; ++i) {
            const double x = u(rng), y = u(rng);
            if (signed_log(-x) != -signed_log(x)) odd = false;
            if (x < y && !(signed_log(x) < signed_log(y))) mono = false;
        }
        c.require(odd, "signed_log oddness violated");
        c.require(mono, "signed_log monotonicity violated");
    }

    {  // L-moment affine equivariance
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> coef(0.2, 4.0);
        bool ok = true;
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> xs(30);
            for (auto& x : xs) x = gauss(rng) * gauss(rng);
            const double a = coef(rng) * (trial % 2 == 0 ? 1.0 : -1.0);
            const double b = gauss(rng) * 3.0;
            std::vector<double> ys(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = a * xs[i] + b;
            const auto lx = l_moments(xs);
            const auto ly = l_moments(ys);
            if (std::fabs(ly.theta1 - (a * lx.theta1 + b)) > 1e-10 ||
                std::fabs(ly.theta2 - std::fabs(a) * lx.theta2) > 1e-10 ||
                std::fabs(ly.tau3 - (a > 0 ? lx.tau3 : -lx.tau3)) > 1e-10) {
                ok = false;
            }
        }
        c.require(ok, "L-moment affine equivariance violated");
    }

    {  // credit_index strict monotonicity and location-scale stability
        const P3Params p{0.3, 1.9, 2.4, false};
        std::uniform_real_distribution<double> zd(-15.0, 15.0);
        bool mono = true;
        for (int i = 0; i < 5000; ++i) {
            const double a = zd(rng), b = zd(rng);
            if (a < b && !(credit_index(p, a) < credit_index(p, b))) mono = false;
        }
        c.require(mono, "credit_index monotonicity violated");

        P3Params truth{1.0, 2.0, 1.7, false};
        const auto xs = p3_sample(truth, 3000, rng);
        const auto fit = fit_p3(l_moments(xs));
        const double a = 2.75, b = -6.0;
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = a * xs[i] + b;
        const auto fit2 = fit_p3(l_moments(ys));
        bool stable = true;
        for (double z : {0.0, 0.8, 2.2, 5.5, 9.0}) {
            if (std::fabs(credit_index(fit2, a * z + b) - credit_index(fit, z)) > 1e-8) {
                stable = false;
            }
        }
        c.require(stable, "credit_index location-scale stability violated");
    }

    {  // pipeline determinism and subset independence
        const auto data = generate_synthetic(771, SyntheticConfig{500, 2, 0.6, -1.3, 1.1, 0.5});
        const auto r1 = run_pipeline(data, std::nullopt, default_thresholds());
        const auto r2 = run_pipeline(data, std::nullopt, default_thresholds());
        bool identical = true;
        for (std::size_t i = 0; i < r1.records.size(); ++i) {
            if (r1.records[i].h != r2.records[i].h || r1.records[i].grade != r2.records[i].grade) {
                identical = false;
            }
        }
        c.require(identical, "pipeline determinism violated");

        DiscriminantModel fixed;
        fixed.weights = {1.0, 0.8, 1.2, 0.9, 1.1};
        std::vector<RatioRecord> industry1;
        for (const auto& rec : data) {
            if (rec.industry == 1) industry1.push_back(rec);
        }
        const auto alone = run_pipeline(industry1, fixed, default_thresholds());
        const auto together = run_pipeline(data, fixed, default_thresholds());
        bool independent = true;
        std::size_t j = 0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (data[i].industry != 1) continue;
            if (together.records[i].h != alone.records[j].h ||
                together.records[i].grade != alone.records[j].grade) {
                independent = false;
            }
            ++j;
        }
        c.require(independent, "per-industry subset independence violated");
    }

    {  // spearman invariance under strictly monotone transforms
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> a(60), b(60);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = gauss(rng);
            b[i] = 0.4 * a[i] + gauss(rng);
        }
        const double base = spearman_rho(a, b);
        std::vector<double> ga(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) ga[i] = std::exp(3.0 * a[i]) - 5.0;
        c.require(spearman_rho(ga, b) == base, "spearman monotone invariance violated");
    }

    return c;
}

struct Entry {
    int number;
    const char* name;
    Criterion (*run)();
    double budget_seconds;
};

const Entry kCriteria[] = {
    {1, "reference-example golden suite", criterion_toy_golden, 1.0},
    {2, "PWM subset-enumeration equivalence", criterion_pwm_oracle, 0.0},
    {3, "P3 fit round trip over the grid", criterion_p3_round_trip, 30.0},
    {4, "index normality (cube-root approximation)", criterion_index_normality, 0.0},
    {5, "classification-matrix arithmetic", criterion_matrix_arithmetic, 0.0},
    {6, "synthetic pipeline hold-out", criterion_synthetic_pipeline, 60.0},
    {7, "module property battery", criterion_properties, 0.0},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& entry : kCriteria) {
        if (only != 0 && entry.number != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Criterion result = entry.run();
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (entry.budget_seconds > 0.0 && elapsed >= entry.budget_seconds) {
            result.pass = false;
            result.notes.push_back(fmt("runtime %.2f s over the %.0f s budget", elapsed,
                                       entry.budget_seconds));
        }
        std::printf("[%s] criterion %d: %s (%.2f s)\n", result.pass ? "PASS" : "FAIL",
                    entry.number, entry.name, elapsed);
        for (const auto& note : result.notes) {
            std::printf("       %s\n", note.c_str());
        }
        if (!result.pass) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
