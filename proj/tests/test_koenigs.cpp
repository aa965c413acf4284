#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "gaugedyn/koenigs.hpp"
#include "gaugedyn/numeric.hpp"

using namespace gaugedyn;

namespace {

// Independent oracle: the raw limit mu^n * L^n(x) in extended precision,
// no reduction step, 200 iterations.
double raw_limit(long double mu, long double x) {
    long double y = x, pw = 1.0L, prev = 0.0L;
    for (int i = 0; i < 200; ++i) {
        y = std::log1p(y / mu);
        pw *= mu;
        long double cur = pw * y;
        if (i > 3 && std::fabs(cur - prev) <= 1e-18L * std::fabs(cur)) {
            prev = cur;
            break;
        }
        prev = cur;
    }
    return static_cast<double>(prev);
}

}  // namespace

TEST_CASE("inverse step") {
    CHECK(inverse_step(2.0, 0.0) == 0.0);
    double e = std::exp(1.0);
    CHECK(inverse_step(2.0, 2.0 * (e - 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    // direct evaluation oracle
    CHECK(inverse_step(3.0, 100.0) ==
          doctest::Approx(std::log(103.0 / 3.0)).epsilon(1e-15));
    CHECK(inverse_step(3.0, 100.0) ==
          doctest::Approx(3.5361166995615261).epsilon(1e-15));
    CHECK_THROWS_AS(inverse_step(2.0, -2.5), DomainError);
}

TEST_CASE("reduction thresholds") {
    KoenigsEvaluator e15(1.5), e2(2.0), e4(4.0);
    CHECK(e15.x1() == doctest::Approx(5.1548454853771357).epsilon(1e-15));
    CHECK(e2.x1() == doctest::Approx(6.8731273138361809).epsilon(1e-15));
    CHECK(e4.x1() == doctest::Approx(13.746254627672362).epsilon(1e-15));
    // x0 = log1p(2*(e-1)) whenever the 2*mu*(e-1) branch dominates
    for (const KoenigsEvaluator* ev : {&e15, &e2, &e4}) {
        CHECK(ev->x0() == doctest::Approx(1.48988012564475).epsilon(1e-14));
        CHECK(ev->x0() > 1.0);
    }
    CHECK_THROWS_AS(KoenigsEvaluator(1.0), DomainError);
    CHECK_THROWS_AS(KoenigsEvaluator(0.5), DomainError);
}

TEST_CASE("reduction counts") {
    KoenigsEvaluator ev(2.0);
    CHECK(ev.reduction_count(ev.x0()) == 0);
    CHECK(ev.reduction_count(ev.x1() - 1e-9) == 0);
    CHECK(ev.reduction_count(ev.x1()) == 1);

    // count-loop oracle
    int n = 0;
    double x = 1e6;
    while (x >= ev.x1()) {
        x = inverse_step(2.0, x);
        ++n;
    }
    CHECK(n == 2);
    CHECK(x == doctest::Approx(2.0230276182603201).epsilon(1e-14));
    CHECK(ev.reduction_count(1e6) == n);

    // counts grow extremely slowly with x
    CHECK(ev.reduction_count(1e250) == 2);
    CHECK(ev.reduction_count(1e300) == 2);

    CHECK_THROWS_AS(ev.reduction_count(1.0), DomainError);
    CHECK_THROWS_AS(ev.reduction_count(-3.0), DomainError);
}

TEST_CASE("linearizer against the raw extended-precision limit") {
    // oracle first
    double oracle = raw_limit(2.0L, 1.0L);
    CHECK(oracle == doctest::Approx(0.67654896854789204).epsilon(1e-15));

    KoenigsEvaluator ev(2.0);
    CHECK(ev.linearizer_eval(0.0) == 0.0);
    CHECK(ev.linearizer_eval(1.0) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(ev.linearizer_eval(2.0) ==
          doctest::Approx(1.0381524874386587).epsilon(1e-12));
    CHECK(ev.linearizer_eval(2.0) ==
          doctest::Approx(raw_limit(2.0L, 2.0L)).epsilon(1e-10));
    CHECK_THROWS_AS(ev.linearizer_eval(-0.5), DomainError);
}

TEST_CASE("functional equation") {
    // Phi(mu*(e^x - 1)) = mu*Phi(x)
    KoenigsEvaluator ev(2.0);
    double lhs = ev.linearizer_eval(2.0 * std::expm1(1.0));
    double rhs = 2.0 * ev.linearizer_eval(1.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));

    for (double mu : {1.5, 2.0, 4.0}) {
        KoenigsEvaluator e(mu);
        for (double x : {1e-3, 0.3, 2.0, 40.0, 600.0}) {
            double l = e.linearizer_eval(mu * std::expm1(x));
            double r = mu * e.linearizer_eval(x);
            CHECK(std::abs(l - r) <= 1e-9 * std::abs(r));
        }
    }
}

TEST_CASE("iterated-log sandwich") {
    // log^n(x) - log(mu) <= L^n(x) <= log^n(x) for n <= reduction count
    for (double mu : {1.5, 2.0, 4.0}) {
        KoenigsEvaluator ev(mu);
        double lmu = std::log(mu);
        for (double x : {10.0, 1e3, 1e6, 1e30, 1e250}) {
            int n_max = ev.reduction_count(x);
            double ln = x, logn = x;
            for (int n = 1; n <= n_max; ++n) {
                ln = inverse_step(mu, ln);
                logn = std::log(logn);
                CHECK(ln <= logn + 1e-12);
                CHECK(ln >= logn - lmu - 1e-12);
            }
        }
    }
}

TEST_CASE("phi_eval in the unshifted coordinate") {
    double lam = 2.0 * std::exp(-2.0);
    double beta = 2.0;
    CHECK(phi_eval(lam, beta) == doctest::Approx(0.0).epsilon(1e-12));

    // central difference of the normalized derivative at beta
    double h = 1e-6;
    double fd = (phi_eval(lam, beta + h) - phi_eval(lam, beta)) / h;
    CHECK(fd == doctest::Approx(1.0).epsilon(1e-5));

    // functional equation in the lambda*e^x coordinate at x = beta + 1
    double x = beta + 1.0;
    double lhs = phi_eval(lam, lam * std::exp(x));
    double rhs = beta * phi_eval(lam, x);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));

    CHECK_THROWS_AS(phi_eval(lam, beta - 0.5), DomainError);
    CHECK_THROWS_AS(phi_eval(lam, 1e301), DomainError);
}

TEST_CASE("gauge function") {
    GaugeFunction h(2.0, 1.0);
    CHECK(h.t_max() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(h.lambda() == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-15));

    // boundary value is the finite positive linearizer at 1
    double boundary = h(h.t_max());
    CHECK(boundary > 0);
    CHECK(boundary ==
          doctest::Approx(h.t_max() * h.t_max() *
                          KoenigsEvaluator(2.0).linearizer_eval(1.0))
              .epsilon(1e-12));

    // h(t)/t^2 = Phi(1/t)^gamma decreases with t
    double prev = -1;
    for (double t : {1e-12, 1e-8, 1e-4, 1e-2, 0.3}) {
        double v = h(t) / (t * t);
        if (prev > 0) CHECK(v < prev);
        prev = v;
    }

    // compose-with-phi_eval oracle at t = 1e-3
    double lam = 2.0 * std::exp(-2.0);
    double t = 1e-3;
    double oracle = t * t * phi_eval(lam, 1.0 / t);
    CHECK(h(t) == doctest::Approx(oracle).epsilon(1e-9));

    // gamma enters as a plain power
    GaugeFunction h12(2.0, 1.2);
    CHECK(h12(t) == doctest::Approx(t * t * std::pow(h(t) / (t * t), 1.2))
                        .epsilon(1e-12));

    CHECK_THROWS_AS(h(0.0), DomainError);
    CHECK_THROWS_AS(h(h.t_max() * 1.01), DomainError);
    CHECK_THROWS_AS(GaugeFunction(2.0, 0.0), DomainError);
    CHECK_THROWS_AS(GaugeFunction(1.0, 1.0), DomainError);
}

TEST_CASE("tower factors are exactly log-affine") {
    double mu = 2.0, gamma = 1.2, x_start = 5.0;
    TowerValue t0 = tower_gauge_factor(mu, gamma, 0, x_start);
    CHECK(t0.log_slope == gamma * std::log(mu));
    CHECK(std::exp(t0.log_value()) ==
          doctest::Approx(std::pow(KoenigsEvaluator(mu).linearizer_eval(
                                       x_start - mu),
                                   gamma))
              .epsilon(1e-12));
    for (int k : {0, 1, 2, 7, 40}) {
        TowerValue tv = tower_gauge_factor(mu, gamma, k, x_start);
        CHECK(tv.log_value() == k * tv.log_slope + tv.log_offset);
        CHECK(tv.base == t0.base);
    }

    // level 1 from x_start = 2*beta matches a direct evaluation
    double lam = 2.0 * std::exp(-2.0);
    TowerValue t1 = tower_gauge_factor(mu, gamma, 1, 2.0 * mu);
    double direct = std::pow(phi_eval(lam, lam * std::exp(2.0 * mu)), gamma);
    CHECK(std::exp(t1.log_value()) == doctest::Approx(direct).epsilon(1e-9));

    CHECK_THROWS_AS(tower_gauge_factor(2.0, 1.0, 0, 1.5), DomainError);
}

TEST_CASE("gauge equivalence probe") {
    auto grid = log_spaced_desc(1e-3, 1e-60, 200);
    REQUIRE(grid.size() == 200);
    CHECK(grid.front() == 1e-3);
    CHECK(grid.back() == 1e-60);

    SUBCASE("identical gauges give ratio exactly 1") {
        RatioStats st = equivalence_probe(2.0, 1.0, 2.0, 1.0, grid);
        CHECK(st.min_ratio == 1.0);
        CHECK(st.max_ratio == 1.0);
        CHECK(st.log_spread == 0.0);
        CHECK(st.max_reduction_gap == 0);
    }
    SUBCASE("mu1^gamma1 = mu2^gamma2 pair stays within a bounded band") {
        RatioStats st = equivalence_probe(2.0, 1.0, 4.0, 0.5, grid);
        CHECK(st.min_ratio > 0);
        CHECK(st.max_ratio >= st.min_ratio);
        CHECK(std::abs(st.drift_slope) <= 0.01);
        CHECK(st.max_reduction_gap == 1);
        CHECK(st.log_spread ==
              doctest::Approx(0.34418697405561271).epsilon(1e-9));  // recorded baseline
    }
    SUBCASE("mismatched products are rejected") {
        CHECK_THROWS_AS(equivalence_probe(2.0, 1.0, 4.0, 0.7, grid), DomainError);
    }
    SUBCASE("tiny grids are rejected") {
        std::vector<double> g{1e-3, 1e-4, 1e-5};
        CHECK_THROWS_AS(equivalence_probe(2.0, 1.0, 4.0, 0.5, g), DomainError);
    }
}

TEST_CASE("dichotomy threshold gamma*") {
    double eps = 1e-6;
    // closed-form oracle
    double oracle = std::log((1 + eps) * (1 + eps) / (0.5 - eps)) / std::log(2.0);
    CHECK(dichotomy_gamma_star(2.0, eps) == doctest::Approx(oracle).epsilon(1e-15));
    CHECK(dichotomy_gamma_star(2.0, eps) ==
          doctest::Approx(1.0000057707816063).epsilon(1e-14));
    CHECK(std::abs(dichotomy_gamma_star(2.0, eps) - 1.0) <= 1e-5);
    CHECK(std::abs(dichotomy_gamma_star(4.0, eps) - 0.5) <= 1e-5);
    // decreasing in eps toward log2/log(beta)
    CHECK(dichotomy_gamma_star(2.0, 1e-3) > dichotomy_gamma_star(2.0, 1e-6));
    CHECK_THROWS_AS(dichotomy_gamma_star(2.0, 0.5), DomainError);
    CHECK_THROWS_AS(dichotomy_gamma_star(1.0, 0.01), DomainError);
}

TEST_CASE("divergence products") {
    SUBCASE("slope sign oracle: gamma = 1.2 diverges") {
        DivergenceProduct dp = divergence_product(2.0, 1.2, 0.01, 50);
        double slope_oracle =
            1.2 * std::log(2.0) + std::log((0.5 - 0.01) / (1.01 * 1.01));
        CHECK(slope_oracle > 0);
        CHECK(dp.slope == doctest::Approx(slope_oracle).epsilon(1e-15));
        CHECK(dp.slope == doctest::Approx(0.09852606708813345).epsilon(1e-14));
        REQUIRE(dp.log_values.size() == 51);
        for (std::size_t k = 1; k < dp.log_values.size(); ++k)
            CHECK(dp.log_values[k] > dp.log_values[k - 1]);
        CHECK(dp.offset ==
              doctest::Approx(1.2 * std::log(1.0381524874386587)).epsilon(1e-12));
    }
    SUBCASE("slope sign oracle: gamma = 0.9 vanishes") {
        DivergenceProduct dp = divergence_product(2.0, 0.9, 0.01, 50);
        CHECK(dp.slope == doctest::Approx(-0.10941808707985015).epsilon(1e-14));
        for (std::size_t k = 1; k < dp.log_values.size(); ++k)
            CHECK(dp.log_values[k] < dp.log_values[k - 1]);
    }
    SUBCASE("threshold gamma gives a flat sequence") {
        double gamma = dichotomy_gamma_star(2.0, 0.01);
        DivergenceProduct dp = divergence_product(2.0, gamma, 0.01, 50);
        CHECK(std::abs(dp.slope) <= 1e-15);
        CHECK(std::abs(dp.log_values.back() - dp.log_values.front()) <= 1e-12);
    }
    CHECK_THROWS_AS(divergence_product(2.0, -1.0, 0.01, 50), DomainError);
    CHECK_THROWS_AS(divergence_product(2.0, 1.2, 0.01, -1), DomainError);
}
