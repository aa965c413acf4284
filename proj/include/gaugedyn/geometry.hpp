#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "gaugedyn/exp_dynamics.hpp"

namespace gaugedyn {

// Closed square of given side, rotated by angle about its center.
struct Box {
    cplx center{0.0, 0.0};
    double side = 1.0;
    double angle = 0.0;

    double area() const { return side * side; }
    double half() const { return side / 2.0; }
    bool contains(const cplx& z, double pad = 0.0) const;
    std::array<cplx, 4> corners() const;
};

Box make_box(cplx center, double side, double angle = 0.0);

// Measurable sets the density estimator understands: finite unions of
// axis-aligned boxes, one rotated box, a strip family, or an intersection
// of two of those.
class Region {
public:
    enum class Kind { BoxUnion, RotatedBox, Strip, Intersection };

    static Region box_union(std::vector<Box> axis_boxes);
    static Region box(const Box& b);  // BoxUnion when angle == 0
    static Region strip(const StripSpec& s);
    static Region intersect(Region a, Region b);

    Kind kind() const { return kind_; }
    bool contains(const cplx& z) const;
    // Exact area where computable (box unions, box-union/strip intersections);
    // negative when only sampling can measure it.
    double exact_area() const;
    const std::vector<Box>& boxes() const { return boxes_; }
    const StripSpec& strip_spec() const { return strip_; }
    const Region& lhs() const { return parts_[0]; }
    const Region& rhs() const { return parts_[1]; }
    // A bounded box to sample from, if the region has one.
    bool sample_base(Box& out) const;

private:
    Region() = default;
    Kind kind_ = Kind::BoxUnion;
    std::vector<Box> boxes_;
    StripSpec strip_{};
    std::vector<Region> parts_;
};

// Fraction of |B| covered by A. Exact for axis-aligned box unions against
// box unions or strips; otherwise deterministic stratified sampling over B's
// bounded base (DomainError if B has none or has zero area).
double density(const Region& a, const Region& b, std::size_t samples = 1 << 17,
               std::uint64_t seed = 0);

struct PackedBox {
    long long ix = 0, iy = 0;   // grid indices (relative to the grid anchor)
    long long band = 0;         // strip band, 0 when the strip filter is off
    cplx center;
    double side = 0;
};

struct PackOptions {
    double margin = -1.0;        // grid slack eps; default r/16
    double coarse_c = -1.0;      // min host/box ratio c(r); default 64*max(1,1/r)
    bool skip_strip = false;     // accept boxes regardless of the strip
    cplx grid_anchor{0.0, 0.0};  // grid origin (huge hosts anchor locally)
    std::size_t denom_samples = 1 << 17;
    std::uint64_t seed = 0;
};

struct Packing {
    std::vector<PackedBox> boxes;
    Box host;
    StripSpec strip;
    double r = 0;
    double margin = 0;
    double density = 0;       // covered fraction of host ∩ strip
    double density_host = 0;  // covered fraction of host
};

// Greedy grid packing of side-r boxes inside host ∩ strip: a grid box is kept
// iff its centered (r+eps)-enlargement lies wholly inside the host and inside
// one strip band. Boxes come out sorted by (band, iy, ix).
// TooCoarseError when host.side < c(r)*r.
Packing build_packing(const Box& host, const StripSpec& strip, double r,
                      const PackOptions& opt = {});

// Asymptotic in-band packing density lower bound 1/2 - delta/pi - delta_slack.
double packing_density_bound(double delta, double delta_slack);

struct DerivativeBounds {
    double lo = 0, hi = 0;
};

// Distortion of a univalent map on D(z0, r) at distance d < r from z0,
// normalized by |f'(z0)| = deriv_mod:
//   derivative: deriv_mod * r^2 * (r -+ d) / (r +- d)^3
//   displacement: deriv_mod * r^2 * d / (r +- d)^2
DerivativeBounds koebe_derivative_bounds(double r, double d, double deriv_mod = 1.0);
DerivativeBounds koebe_displacement_bounds(double r, double d, double deriv_mod = 1.0);

// Distortion constants for K-fold inradius/diameter control, K > 3:
// single stage ((K+1)/(K-3))^6, two-stage composite the square of that.
double distortion_bound_single(double K);
double distortion_bound_composite(double K);

struct DistortionEstimate {
    double c_f = 0;  // inf over pairs of |f(z)-f(w)| / |z-w|
    double C_f = 0;  // sup over pairs
    double ratio = 0;
    std::size_t pairs_used = 0;
};

// Empirical distortion of a sampled map {(z_i, f(z_i))}: all pairs when their
// count fits the budget, else a deterministic seeded subsample of pairs.
DistortionEstimate empirical_distortion(const std::vector<std::pair<cplx, cplx>>& samples,
                                        std::size_t max_pairs = 100000,
                                        std::uint64_t seed = 0);

struct SquareSandwich {
    Box inner, outer;
};

// Certified square sandwich for the image of Q(z0, r*...) under a map with
// derivative deriv_mod*e^(i*deriv_arg) at the center, derivative ratio bound d
// on the square, and relative nonlinearity eps < 1/sqrt(2):
//   inner side deriv_mod*r*(1 - sqrt(2)*eps)/d, outer side deriv_mod*r*d*(1 + sqrt(2)*eps),
// both centered at f_center and rotated by theta + deriv_arg.
SquareSandwich image_square_sandwich(cplx f_center, double deriv_mod, double deriv_arg,
                                     double r, double d, double eps, double theta = 0.0);

// Transported density bound factor: dens(A, U) <= D^2 * dens(f(A), f(U)).
double density_transport_factor(double distortion);

}  // namespace gaugedyn
