#pragma once

#include <vector>

#include "gaugedyn/errors.hpp"

namespace gaugedyn {

// One inverse step of the shifted map x -> mu*(e^x - 1): log1p(x/mu), x > -mu.
double inverse_step(double mu, double x);

// Evaluates the linearizer Phi of x -> mu*(e^x - 1) at its repelling fixed
// point 0 (multiplier mu), normalized so Phi(0) = 0, Phi'(0) = 1:
//   Phi(x) = lim_n mu^n * L^n(x),  L(x) = log1p(x/mu).
// Large arguments are first pulled below x1 by counted inverse steps and the
// factor mu^count is restored at the end.
class KoenigsEvaluator {
public:
    explicit KoenigsEvaluator(double mu, double tol = 1e-12);

    double mu() const { return mu_; }
    double x1() const { return x1_; }  // reduction threshold
    double x0() const { return x0_; }  // = L(x1), always > 1
    double tol() const { return tol_; }

    // Inverse steps needed to bring x below x1 (0 for x in [x0, x1);
    // arguments below x0 are rejected so counts stay comparable across mu).
    int reduction_count(double x) const;
    // Phi(x) for x >= 0.
    double linearizer_eval(double x) const;

private:
    double limit_below_threshold(double x) const;
    double mu_, tol_, x1_, x0_;
};

// Linearizer of lambda*e^z at its repelling point beta = mu, as a function on
// the real ray: phi_eval(lambda, x) = Phi(x - mu) under the coordinate shift
// moving beta to 0. Domain beta <= x <= 1e300.
double phi_eval(double lambda, double x, double tol = 1e-12);

// h(t) = t^2 * Phi(1/t)^gamma on 0 < t <= 1/(mu+1).
class GaugeFunction {
public:
    GaugeFunction(double mu, double gamma, double tol = 1e-12);
    double mu() const { return mu_; }
    double gamma() const { return gamma_; }
    double t_max() const { return t_max_; }
    double lambda() const;
    double operator()(double t) const;

private:
    double mu_, gamma_, t_max_;
    KoenigsEvaluator eval_;
};

// Value of the gauge along the tower t_k with 1/t_k = E^k(x0): in log space
// the sequence is exactly affine in the level,
//   ln h(t_k) = -2 ln E^k(x0) + gamma * (k ln mu + ln Phi(x0)).
// The -2 ln t part is carried by the caller; this type tracks the gauge's
// linearizer factor gamma * ln Phi_k = level * log_slope + log_offset.
struct TowerValue {
    int level = 0;
    double base = 0;        // Phi(x0 - mu), the level-0 linearizer value
    double log_slope = 0;   // gamma * ln mu
    double log_offset = 0;  // gamma * ln base

    double log_value() const {
        return static_cast<double>(level) * log_slope + log_offset;
    }
};

TowerValue tower_gauge_factor(double mu, double gamma, int level, double x_start,
                              double tol = 1e-12);

struct RatioStats {
    double min_ratio = 0;
    double max_ratio = 0;
    double log_spread = 0;    // ln(max/min)
    double drift_slope = 0;   // LS slope of ln ratio vs ln t over the small-t half
    int max_reduction_gap = 0;
};

// Compares h1 = (mu1, gamma1) against h2 = (mu2, gamma2) on a t-grid.
// Requires mu1^gamma1 = mu2^gamma2 (relative 1e-12), the exact condition for
// the two gauges to be equivalent.
RatioStats equivalence_probe(double mu1, double gamma1, double mu2, double gamma2,
                             const std::vector<double>& t_grid);

// Slope threshold between vanishing and non-sigma-finite gauged measure:
// gamma*(eps) = ln((1+eps)^2 / (1/2 - eps)) / ln beta, decreasing to
// log 2 / log beta as eps -> 0.
double dichotomy_gamma_star(double beta, double eps);

struct DivergenceProduct {
    std::vector<double> log_values;  // log P_k, k = 0..k_max
    double slope = 0;                // gamma*ln beta + ln((1/2-eps)/(1+eps)^2)
    double offset = 0;               // gamma*ln Phi(2*beta)
};

// Lower-bound mass products P_k = (Delta * beta^gamma)^k * Phi(2*beta)^gamma
// in log space; they diverge iff slope > 0, i.e. gamma > gamma*(eps).
DivergenceProduct divergence_product(double mu, double gamma, double eps, int k_max,
                                     double tol = 1e-12);

}  // namespace gaugedyn
