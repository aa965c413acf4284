#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "gaugedyn/errors.hpp"

namespace gaugedyn {

using cplx = std::complex<double>;

// Real parts past this are treated as escaped rather than exponentiated.
inline constexpr double kOverflowRe = 690.0;

cplx overflow_value();
bool is_overflow(const cplx& z);

// Real fixed points of x -> lambda*e^x for 0 < lambda < 1/e:
// attracting alpha in (0,1), repelling beta in (1, inf).
double attracting_fixed_point(double lambda, double tol = 1e-14);
double repelling_fixed_point(double lambda, double tol = 1e-14);

enum class StripKind { Julia, Fatou };

// Horizontal bands, closed, 2*pi-periodic in Im z:
//   Julia: Im z + arg(lambda) in [-pi/2 + delta,  pi/2 - delta]  (mod 2*pi)
//   Fatou: Im z + arg(lambda) in [ pi/2 + delta, 3*pi/2 - delta] (mod 2*pi)
struct StripSpec {
    double delta = 0.1;
    double arg_lambda = 0.0;
    StripKind kind = StripKind::Julia;

    double half_height() const { return 1.5707963267948966 - delta; }
    double band_center() const;  // center height of band k=0 (before arg shift)
};

StripSpec make_strip(double delta, double arg_lambda = 0.0,
                     StripKind kind = StripKind::Julia);
bool strip_contains(const StripSpec& s, const cplx& z);
// Band index containing height `im`, or nullopt if between bands.
std::optional<long long> strip_band_index(const StripSpec& s, double im);
// Lower bound for Re(lambda*e^z) when z lies in the Julia-type band family.
double julia_strip_growth_bound(double lambda_abs, double delta, double re_z);

enum class OrbitVerdict { Attracted, EscapingCandidate, Undecided };

struct OrbitResult {
    std::vector<cplx> states;  // leading states up to the cap, then the final one
    OrbitVerdict verdict = OrbitVerdict::Undecided;
    int steps_used = 0;
};

class ExpMap {
public:
    // Real parameter in (0, 1/e): full fixed-point data available.
    static ExpMap from_lambda(double lambda, double tol = 1e-14);
    // lambda = mu*exp(-mu) for mu > 1; the repelling point is mu exactly.
    static ExpMap from_mu(double mu, double tol = 1e-14);
    // Arbitrary nonzero parameter; fixed-point accessors unavailable.
    static ExpMap from_complex(cplx lambda);

    cplx lambda() const { return lambda_; }
    double lambda_real() const;
    bool has_real_parameter() const { return real_param_; }
    double alpha() const;             // attracting fixed point
    double beta() const;              // repelling fixed point
    double attraction_radius() const; // rho = -ln(alpha)/2
    double default_escape_re() const; // max(50, 2*beta)

    cplx apply(const cplx& z) const;  // lambda*e^z, overflow-tagged
    // ln|lambda| + Re z: exact log-modulus of the derivative (E' = E).
    double deriv_log_abs(const cplx& z) const;

    // z with E(z) = w and Im z = arg(w/lambda) + 2*pi*k.
    cplx inverse_branch(const cplx& w, long long k) const;
    // Branch whose imaginary part lands nearest im_target.
    cplx inverse_branch_toward(const cplx& w, double im_target) const;

    // Orbit of 0 (the singular value), strictly increasing toward alpha;
    // stops once within a few ulp of alpha or after 128 entries.
    const std::vector<double>& postcritical_tail() const;
    // Distance from z to the segment [0, alpha] (closure of that orbit).
    double postcritical_distance(const cplx& z) const;

    // Verdict checks run on the initial point too, escape before attraction.
    // Attracted: entered the open disc D(alpha, rho).
    // EscapingCandidate: Re z >= escape_re (or exp overflow).
    // Requires escape_re >= 2*beta (pass <= 0 for the default).
    OrbitResult classify_orbit(const cplx& z, int max_steps,
                               double escape_re = -1.0,
                               std::size_t state_cap = 64) const;

private:
    ExpMap() = default;
    cplx lambda_{};
    bool real_param_ = false;
    double alpha_ = 0, beta_ = 0;
    mutable std::vector<double> tail_;  // lazily built postcritical orbit
};

}  // namespace gaugedyn
