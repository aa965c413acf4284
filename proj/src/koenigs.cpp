#include "gaugedyn/koenigs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gaugedyn/exp_dynamics.hpp"
#include "gaugedyn/numeric.hpp"

namespace gaugedyn {

double inverse_step(double mu, double x) {
    if (!(mu > 1)) throw DomainError("inverse_step: mu must exceed 1");
    if (!(x > -mu)) throw DomainError("inverse_step: x must exceed -mu");
    return std::log1p(x / mu);
}

KoenigsEvaluator::KoenigsEvaluator(double mu, double tol) : mu_(mu), tol_(tol) {
    if (!(mu > 1)) throw DomainError("KoenigsEvaluator: mu must exceed 1");
    if (!(tol > 0) || !(tol < 0.1))
        throw DomainError("KoenigsEvaluator: tol must lie in (0, 0.1)");
    // Threshold choice keeps one inverse step a genuine contraction
    // (L(x1) <= log x1) while guaranteeing x0 = L(x1) > 1 for every mu.
    x1_ = std::max(mu / (mu - 1.0), 2.0 * mu * (2.718281828459045235 - 1.0));
    x0_ = std::log1p(x1_ / mu);
}

int KoenigsEvaluator::reduction_count(double x) const {
    if (!(x >= x0_))
        throw DomainError("reduction_count: argument below x0");
    int n = 0;
    while (x >= x1_) {
        x = std::log1p(x / mu_);
        ++n;
        if (n > 64) throw ConvergenceError("reduction_count: runaway reduction");
    }
    return n;
}

double KoenigsEvaluator::limit_below_threshold(double x) const {
    if (x == 0) return 0.0;
    double y = x;
    double pw = 1.0;
    double prev = y;
    for (int k = 1; k <= 10000; ++k) {
        y = std::log1p(y / mu_);
        pw *= mu_;
        double cur = pw * y;
        if (std::abs(cur - prev) <= tol_ * std::abs(cur)) return cur;
        prev = cur;
    }
    throw ConvergenceError("linearizer_eval: limit did not stabilize");
}

double KoenigsEvaluator::linearizer_eval(double x) const {
    if (!(x >= 0)) throw DomainError("linearizer_eval: argument must be >= 0");
    int n = 0;
    while (x >= x1_) {
        x = std::log1p(x / mu_);
        ++n;
    }
    double v = limit_below_threshold(x);
    return std::pow(mu_, static_cast<double>(n)) * v;
}

double phi_eval(double lambda, double x, double tol) {
    double beta = repelling_fixed_point(lambda);
    if (!(x >= beta)) throw DomainError("phi_eval: argument below the repelling point");
    if (!(x <= 1e300)) throw DomainError("phi_eval: argument too large");
    return KoenigsEvaluator(beta, tol).linearizer_eval(x - beta);
}

GaugeFunction::GaugeFunction(double mu, double gamma, double tol)
    : mu_(mu), gamma_(gamma), t_max_(1.0 / (mu + 1.0)), eval_(mu, tol) {
    if (!(gamma > 0)) throw DomainError("GaugeFunction: gamma must be positive");
}

double GaugeFunction::lambda() const { return mu_ * std::exp(-mu_); }

double GaugeFunction::operator()(double t) const {
    if (!(t > 0) || !(t <= t_max_))
        throw DomainError("GaugeFunction: t outside (0, 1/(mu+1)]");
    double phi = eval_.linearizer_eval(1.0 / t - mu_);
    return t * t * std::pow(phi, gamma_);
}

TowerValue tower_gauge_factor(double mu, double gamma, int level, double x_start,
                              double tol) {
    if (level < 0) throw DomainError("tower_gauge_factor: level must be >= 0");
    if (!(gamma > 0)) throw DomainError("tower_gauge_factor: gamma must be positive");
    KoenigsEvaluator ev(mu, tol);
    if (!(x_start > mu))
        throw DomainError("tower_gauge_factor: x_start must exceed the repelling point");
    TowerValue tv;
    tv.level = level;
    tv.base = ev.linearizer_eval(x_start - mu);
    tv.log_slope = gamma * std::log(mu);
    tv.log_offset = gamma * std::log(tv.base);
    return tv;
}

RatioStats equivalence_probe(double mu1, double gamma1, double mu2, double gamma2,
                             const std::vector<double>& t_grid) {
    double a = std::pow(mu1, gamma1), b = std::pow(mu2, gamma2);
    if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b)))
        throw DomainError("equivalence_probe: mu1^gamma1 must equal mu2^gamma2");
    if (t_grid.size() < 4)
        throw DomainError("equivalence_probe: need at least 4 grid points");

    GaugeFunction h1(mu1, gamma1), h2(mu2, gamma2);
    KoenigsEvaluator e1(mu1), e2(mu2);

    std::vector<std::size_t> order(t_grid.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return t_grid[i] > t_grid[j]; });

    RatioStats st;
    st.min_ratio = std::numeric_limits<double>::infinity();
    st.max_ratio = 0;
    std::vector<double> log_t, log_ratio;
    log_t.reserve(t_grid.size());
    log_ratio.reserve(t_grid.size());
    for (std::size_t idx : order) {
        double t = t_grid[idx];
        double ratio = h1(t) / h2(t);
        st.min_ratio = std::min(st.min_ratio, ratio);
        st.max_ratio = std::max(st.max_ratio, ratio);
        log_t.push_back(std::log(t));
        log_ratio.push_back(std::log(ratio));
        int gap = std::abs(e1.reduction_count(1.0 / t) - e2.reduction_count(1.0 / t));
        st.max_reduction_gap = std::max(st.max_reduction_gap, gap);
    }
    st.log_spread = std::log(st.max_ratio / st.min_ratio);
    std::size_t half = t_grid.size() / 2;
    std::vector<double> xs(log_t.begin() + half, log_t.end());
    std::vector<double> ys(log_ratio.begin() + half, log_ratio.end());
    st.drift_slope = ls_slope(xs, ys);
    return st;
}

double dichotomy_gamma_star(double beta, double eps) {
    if (!(beta > 1)) throw DomainError("dichotomy_gamma_star: beta must exceed 1");
    if (!(eps >= 0) || !(eps < 0.5))
        throw DomainError("dichotomy_gamma_star: eps must lie in [0, 1/2)");
    double shrink = (0.5 - eps) / ((1.0 + eps) * (1.0 + eps));
    return -std::log(shrink) / std::log(beta);
}

DivergenceProduct divergence_product(double mu, double gamma, double eps, int k_max,
                                     double tol) {
    if (!(gamma > 0)) throw DomainError("divergence_product: gamma must be positive");
    if (!(eps >= 0) || !(eps < 0.5))
        throw DomainError("divergence_product: eps must lie in [0, 1/2)");
    if (k_max < 0) throw DomainError("divergence_product: k_max must be >= 0");
    KoenigsEvaluator ev(mu, tol);
    double shrink = (0.5 - eps) / ((1.0 + eps) * (1.0 + eps));
    DivergenceProduct dp;
    dp.slope = gamma * std::log(mu) + std::log(shrink);
    dp.offset = gamma * std::log(ev.linearizer_eval(mu));
    dp.log_values.resize(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k)
        dp.log_values[static_cast<std::size_t>(k)] = dp.offset + k * dp.slope;
    return dp;
}

}  // namespace gaugedyn
