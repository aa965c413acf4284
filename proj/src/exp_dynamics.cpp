#include "gaugedyn/exp_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gaugedyn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kInvE = 0.36787944117144232159552377016146087;

// Bisection on [lo, hi] with g(lo), g(hi) of opposite sign, then Newton polish
// of x = lambda*e^x (g = lambda*e^x - x, g' = lambda*e^x - 1).
double solve_fixed_point(double lambda, double lo, double hi, double tol) {
    double glo = lambda * std::exp(lo) - lo;
    for (int i = 0; i < 200 && hi - lo > tol * std::max(1.0, std::abs(lo)); ++i) {
        double mid = 0.5 * (lo + hi);
        double gm = lambda * std::exp(mid) - mid;
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        double e = lambda * std::exp(x);
        double dg = e - 1.0;
        if (dg == 0) break;
        double step = (e - x) / dg;
        x -= step;
        if (std::abs(step) <= std::abs(x) * 1e-17) break;
    }
    return x;
}

}  // namespace

cplx overflow_value() {
    return {std::numeric_limits<double>::infinity(), 0.0};
}

bool is_overflow(const cplx& z) {
    return std::isinf(z.real()) && z.real() > 0;
}

double attracting_fixed_point(double lambda, double tol) {
    if (!(lambda > 0) || !(lambda < kInvE))
        throw DomainError("attracting_fixed_point: lambda must lie in (0, 1/e)");
    return solve_fixed_point(lambda, 0.0, 1.0, tol);
}

double repelling_fixed_point(double lambda, double tol) {
    if (!(lambda > 0) || !(lambda < kInvE))
        throw DomainError("repelling_fixed_point: lambda must lie in (0, 1/e)");
    double hi = 2.0;
    while (lambda * std::exp(hi) - hi < 0) {
        hi *= 2.0;
        if (hi > 1e4)
            throw ConvergenceError("repelling_fixed_point: bracket not found");
    }
    return solve_fixed_point(lambda, 1.0, hi, tol);
}

double StripSpec::band_center() const {
    return kind == StripKind::Julia ? 0.0 : kPi;
}

StripSpec make_strip(double delta, double arg_lambda, StripKind kind) {
    if (!(delta > 0) || !(delta < kPi / 2))
        throw DomainError("make_strip: delta must lie in (0, pi/2)");
    return StripSpec{delta, arg_lambda, kind};
}

bool strip_contains(const StripSpec& s, const cplx& z) {
    return strip_band_index(s, z.imag()).has_value();
}

std::optional<long long> strip_band_index(const StripSpec& s, double im) {
    double y = im + s.arg_lambda - s.band_center();
    double k = std::round(y / (2 * kPi));
    double r = y - 2 * kPi * k;
    if (std::abs(r) <= s.half_height()) return static_cast<long long>(k);
    return std::nullopt;
}

double julia_strip_growth_bound(double lambda_abs, double delta, double re_z) {
    return lambda_abs * std::sin(delta) * std::exp(re_z);
}

ExpMap ExpMap::from_lambda(double lambda, double tol) {
    ExpMap m;
    m.lambda_ = lambda;
    m.real_param_ = true;
    m.alpha_ = attracting_fixed_point(lambda, tol);
    m.beta_ = repelling_fixed_point(lambda, tol);
    return m;
}

ExpMap ExpMap::from_mu(double mu, double tol) {
    if (!(mu > 1))
        throw DomainError("ExpMap::from_mu: mu must exceed 1");
    double lambda = mu * std::exp(-mu);
    ExpMap m;
    m.lambda_ = lambda;
    m.real_param_ = true;
    m.alpha_ = attracting_fixed_point(lambda, tol);
    m.beta_ = mu;
    return m;
}

ExpMap ExpMap::from_complex(cplx lambda) {
    if (lambda == cplx{0.0, 0.0} || !std::isfinite(lambda.real()) ||
        !std::isfinite(lambda.imag()))
        throw DomainError("ExpMap::from_complex: parameter must be finite and nonzero");
    ExpMap m;
    m.lambda_ = lambda;
    m.real_param_ = false;
    return m;
}

double ExpMap::lambda_real() const {
    if (!real_param_) throw DomainError("ExpMap: parameter is not real");
    return lambda_.real();
}

double ExpMap::alpha() const {
    if (!real_param_) throw DomainError("ExpMap: no real fixed-point pair");
    return alpha_;
}

double ExpMap::beta() const {
    if (!real_param_) throw DomainError("ExpMap: no real fixed-point pair");
    return beta_;
}

double ExpMap::attraction_radius() const {
    return -std::log(alpha()) / 2.0;
}

double ExpMap::default_escape_re() const {
    return std::max(50.0, 2.0 * beta());
}

cplx ExpMap::apply(const cplx& z) const {
    if (z.real() > kOverflowRe) return overflow_value();
    return lambda_ * std::exp(z);
}

double ExpMap::deriv_log_abs(const cplx& z) const {
    return std::log(std::abs(lambda_)) + z.real();
}

cplx ExpMap::inverse_branch(const cplx& w, long long k) const {
    if (w == cplx{0.0, 0.0} || !std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw DomainError("inverse_branch: w must be finite and nonzero");
    cplx q = w / lambda_;
    return {std::log(std::abs(q)), std::arg(q) + 2 * kPi * static_cast<double>(k)};
}

cplx ExpMap::inverse_branch_toward(const cplx& w, double im_target) const {
    if (w == cplx{0.0, 0.0} || !std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw DomainError("inverse_branch: w must be finite and nonzero");
    cplx q = w / lambda_;
    double a = std::arg(q);
    long long k = static_cast<long long>(std::llround((im_target - a) / (2 * kPi)));
    return {std::log(std::abs(q)), a + 2 * kPi * static_cast<double>(k)};
}

const std::vector<double>& ExpMap::postcritical_tail() const {
    if (!real_param_) throw DomainError("ExpMap: postcritical tail needs a real parameter");
    if (tail_.empty()) {
        double lam = lambda_.real();
        double x = 0.0;
        tail_.push_back(x);
        double stop = alpha_ - 4 * std::abs(alpha_) * std::numeric_limits<double>::epsilon();
        while (tail_.size() < 128) {
            x = lam * std::exp(x);
            tail_.push_back(x);
            if (x >= stop) break;
        }
    }
    return tail_;
}

double ExpMap::postcritical_distance(const cplx& z) const {
    double a = alpha();
    double x = std::clamp(z.real(), 0.0, a);
    return std::hypot(z.real() - x, z.imag());
}

OrbitResult ExpMap::classify_orbit(const cplx& z, int max_steps, double escape_re,
                                   std::size_t state_cap) const {
    if (max_steps < 0) throw DomainError("classify_orbit: max_steps must be >= 0");
    if (state_cap < 2) throw DomainError("classify_orbit: state_cap must be >= 2");
    double esc = escape_re > 0 ? escape_re : default_escape_re();
    if (real_param_ && esc < 2.0 * beta_)
        throw DomainError("classify_orbit: escape threshold below 2*beta");

    double a = real_param_ ? alpha_ : 0.0;
    double rho = real_param_ ? -std::log(alpha_) / 2.0 : 0.0;

    OrbitResult res;
    cplx cur = z;
    res.states.push_back(cur);
    for (int step = 0;; ++step) {
        if (cur.real() >= esc || is_overflow(cur)) {
            res.verdict = OrbitVerdict::EscapingCandidate;
            res.steps_used = step;
            break;
        }
        if (real_param_ && std::hypot(cur.real() - a, cur.imag()) < rho) {
            res.verdict = OrbitVerdict::Attracted;
            res.steps_used = step;
            break;
        }
        if (step == max_steps) {
            res.verdict = OrbitVerdict::Undecided;
            res.steps_used = step;
            break;
        }
        cur = apply(cur);
        if (res.states.size() < state_cap - 1) {
            res.states.push_back(cur);
        }
    }
    if (res.states.back() != cur) res.states.push_back(cur);
    return res;
}

}  // namespace gaugedyn
