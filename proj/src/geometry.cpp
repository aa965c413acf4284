#include "gaugedyn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gaugedyn/numeric.hpp"

namespace gaugedyn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct Interval {
    double lo, hi;
};

double merged_length(std::vector<Interval>& iv) {
    if (iv.empty()) return 0.0;
    std::sort(iv.begin(), iv.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    double total = 0, lo = iv[0].lo, hi = iv[0].hi;
    for (std::size_t i = 1; i < iv.size(); ++i) {
        if (iv[i].lo > hi) {
            total += hi - lo;
            lo = iv[i].lo;
            hi = iv[i].hi;
        } else {
            hi = std::max(hi, iv[i].hi);
        }
    }
    return total + (hi - lo);
}

// Total length of [y0, y1] covered by the strip's band family.
double band_measure(const StripSpec& s, double y0, double y1) {
    if (y1 <= y0) return 0.0;
    double base = s.band_center() - s.arg_lambda;
    double H = s.half_height();
    long long k0 = static_cast<long long>(std::floor((y0 - base) / (2 * kPi))) - 1;
    long long k1 = static_cast<long long>(std::ceil((y1 - base) / (2 * kPi))) + 1;
    double total = 0;
    for (long long k = k0; k <= k1; ++k) {
        double c = base + 2 * kPi * static_cast<double>(k);
        total += std::max(0.0, std::min(y1, c + H) - std::max(y0, c - H));
    }
    return total;
}

struct Slab {
    double x0, x1;
    std::vector<Interval> ys;  // merged, disjoint
};

// Disjoint vertical-slab decomposition of an axis-aligned box union.
std::vector<Slab> decompose(const std::vector<Box>& boxes) {
    std::vector<double> xs;
    xs.reserve(boxes.size() * 2);
    for (const auto& b : boxes) {
        xs.push_back(b.center.real() - b.half());
        xs.push_back(b.center.real() + b.half());
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Slab> slabs;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        Slab s{xs[i], xs[i + 1], {}};
        if (s.x1 <= s.x0) continue;
        std::vector<Interval> iv;
        for (const auto& b : boxes) {
            double blo = b.center.real() - b.half(), bhi = b.center.real() + b.half();
            if (blo <= s.x0 && bhi >= s.x1)
                iv.push_back({b.center.imag() - b.half(), b.center.imag() + b.half()});
        }
        if (iv.empty()) continue;
        std::sort(iv.begin(), iv.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        double lo = iv[0].lo, hi = iv[0].hi;
        for (std::size_t j = 1; j < iv.size(); ++j) {
            if (iv[j].lo > hi) {
                s.ys.push_back({lo, hi});
                lo = iv[j].lo;
                hi = iv[j].hi;
            } else {
                hi = std::max(hi, iv[j].hi);
            }
        }
        s.ys.push_back({lo, hi});
        slabs.push_back(std::move(s));
    }
    return slabs;
}

double union_area(const std::vector<Box>& boxes) {
    double a = 0;
    for (const auto& s : decompose(boxes))
        for (const auto& y : s.ys) a += (s.x1 - s.x0) * (y.hi - y.lo);
    return a;
}

double union_strip_area(const std::vector<Box>& boxes, const StripSpec& strip) {
    double a = 0;
    for (const auto& s : decompose(boxes))
        for (const auto& y : s.ys) a += (s.x1 - s.x0) * band_measure(strip, y.lo, y.hi);
    return a;
}

}  // namespace

bool Box::contains(const cplx& z, double pad) const {
    cplx d = z - center;
    double c = std::cos(angle), s = std::sin(angle);
    double x = c * d.real() + s * d.imag();
    double y = -s * d.real() + c * d.imag();
    double h = half() + pad;
    return std::abs(x) <= h && std::abs(y) <= h;
}

std::array<cplx, 4> Box::corners() const {
    double h = half();
    double c = std::cos(angle), s = std::sin(angle);
    auto rot = [&](double x, double y) {
        return center + cplx{c * x - s * y, s * x + c * y};
    };
    return {rot(-h, -h), rot(h, -h), rot(h, h), rot(-h, h)};
}

Box make_box(cplx center, double side, double angle) {
    if (!(side > 0) || !std::isfinite(side))
        throw DomainError("make_box: side must be positive and finite");
    return Box{center, side, angle};
}

Region Region::box_union(std::vector<Box> axis_boxes) {
    for (const auto& b : axis_boxes)
        if (b.angle != 0.0)
            throw DomainError("Region::box_union: boxes must be axis-aligned");
    Region r;
    r.kind_ = Kind::BoxUnion;
    r.boxes_ = std::move(axis_boxes);
    return r;
}

Region Region::box(const Box& b) {
    if (b.angle == 0.0) return box_union({b});
    Region r;
    r.kind_ = Kind::RotatedBox;
    r.boxes_ = {b};
    return r;
}

Region Region::strip(const StripSpec& s) {
    Region r;
    r.kind_ = Kind::Strip;
    r.strip_ = s;
    return r;
}

Region Region::intersect(Region a, Region b) {
    Region r;
    r.kind_ = Kind::Intersection;
    r.parts_.push_back(std::move(a));
    r.parts_.push_back(std::move(b));
    return r;
}

bool Region::contains(const cplx& z) const {
    switch (kind_) {
        case Kind::BoxUnion:
            for (const auto& b : boxes_)
                if (b.contains(z)) return true;
            return false;
        case Kind::RotatedBox:
            return boxes_[0].contains(z);
        case Kind::Strip:
            return strip_contains(strip_, z);
        case Kind::Intersection:
            return parts_[0].contains(z) && parts_[1].contains(z);
    }
    return false;
}

double Region::exact_area() const {
    switch (kind_) {
        case Kind::BoxUnion:
            return union_area(boxes_);
        case Kind::RotatedBox:
            return boxes_[0].area();
        case Kind::Strip:
            return -1.0;
        case Kind::Intersection: {
            const Region& a = parts_[0];
            const Region& b = parts_[1];
            if (a.kind_ == Kind::BoxUnion && b.kind_ == Kind::BoxUnion) {
                double area = 0;
                auto sa = decompose(a.boxes_);
                auto sb = decompose(b.boxes_);
                for (const auto& pa : sa)
                    for (const auto& pb : sb) {
                        double x0 = std::max(pa.x0, pb.x0), x1 = std::min(pa.x1, pb.x1);
                        if (x1 <= x0) continue;
                        for (const auto& ya : pa.ys)
                            for (const auto& yb : pb.ys) {
                                double y0 = std::max(ya.lo, yb.lo);
                                double y1 = std::min(ya.hi, yb.hi);
                                if (y1 > y0) area += (x1 - x0) * (y1 - y0);
                            }
                    }
                return area;
            }
            if (a.kind_ == Kind::BoxUnion && b.kind_ == Kind::Strip)
                return union_strip_area(a.boxes_, b.strip_);
            if (a.kind_ == Kind::Strip && b.kind_ == Kind::BoxUnion)
                return union_strip_area(b.boxes_, a.strip_);
            return -1.0;
        }
    }
    return -1.0;
}

bool Region::sample_base(Box& out) const {
    switch (kind_) {
        case Kind::BoxUnion: {
            if (boxes_.empty()) return false;
            double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
            double y0 = x0, y1 = -x0;
            for (const auto& b : boxes_) {
                x0 = std::min(x0, b.center.real() - b.half());
                x1 = std::max(x1, b.center.real() + b.half());
                y0 = std::min(y0, b.center.imag() - b.half());
                y1 = std::max(y1, b.center.imag() + b.half());
            }
            double side = std::max(x1 - x0, y1 - y0);
            if (!(side > 0)) return false;
            out = Box{{(x0 + x1) / 2, (y0 + y1) / 2}, side, 0.0};
            return true;
        }
        case Kind::RotatedBox:
            out = boxes_[0];
            return true;
        case Kind::Strip:
            return false;
        case Kind::Intersection: {
            if (parts_[0].sample_base(out)) return true;
            return parts_[1].sample_base(out);
        }
    }
    return false;
}

double density(const Region& a, const Region& b, std::size_t samples,
               std::uint64_t seed) {
    double den = b.exact_area();
    if (den == 0) throw DomainError("density: reference region has zero area");
    if (den > 0) {
        double num = Region::intersect(a, b).exact_area();
        if (num >= 0) return num / den;
    }
    Box base;
    if (!b.sample_base(base))
        throw DomainError("density: reference region is unbounded");
    std::size_t m = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(std::max<std::size_t>(samples, 16)))));
    double cb = std::cos(base.angle), sb = std::sin(base.angle);
    std::size_t in_b = 0, in_ab = 0;
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            std::uint64_t idx = static_cast<std::uint64_t>(j) * m + i;
            double u = (static_cast<double>(i) + uniform01(seed, 2 * idx)) /
                       static_cast<double>(m);
            double v = (static_cast<double>(j) + uniform01(seed, 2 * idx + 1)) /
                       static_cast<double>(m);
            double x = (u - 0.5) * base.side, y = (v - 0.5) * base.side;
            cplx p = base.center + cplx{cb * x - sb * y, sb * x + cb * y};
            if (!b.contains(p)) continue;
            ++in_b;
            if (a.contains(p)) ++in_ab;
        }
    }
    if (in_b == 0) throw DomainError("density: no samples landed in the reference region");
    return static_cast<double>(in_ab) / static_cast<double>(in_b);
}

Packing build_packing(const Box& host, const StripSpec& strip, double r,
                      const PackOptions& opt) {
    if (!(r > 0)) throw DomainError("build_packing: box side must be positive");
    double c = opt.coarse_c > 0 ? opt.coarse_c : 64.0 * std::max(1.0, 1.0 / r);
    if (host.side < c * r)
        throw TooCoarseError("build_packing: host side below c(r)*r");
    double eps = opt.margin >= 0 ? opt.margin : r / 16.0;
    double p = r + eps;

    double R = host.half() * (std::abs(std::cos(host.angle)) +
                              std::abs(std::sin(host.angle)));
    double ax = opt.grid_anchor.real(), ay = opt.grid_anchor.imag();
    long long ix0 = static_cast<long long>(std::floor((host.center.real() - R - ax) / p)) - 1;
    long long ix1 = static_cast<long long>(std::ceil((host.center.real() + R - ax) / p)) + 1;
    long long iy0 = static_cast<long long>(std::floor((host.center.imag() - R - ay) / p)) - 1;
    long long iy1 = static_cast<long long>(std::ceil((host.center.imag() + R - ay) / p)) + 1;

    bool axis_host = host.angle == 0.0;
    double hx0 = host.center.real() - host.half(), hx1 = host.center.real() + host.half();
    double hy0 = host.center.imag() - host.half(), hy1 = host.center.imag() + host.half();

    Packing pk;
    pk.host = host;
    pk.strip = strip;
    pk.r = r;
    pk.margin = eps;

    for (long long iy = iy0; iy <= iy1; ++iy) {
        double yc = ay + (static_cast<double>(iy) + 0.5) * p;
        long long band = 0;
        if (!opt.skip_strip) {
            auto b0 = strip_band_index(strip, yc - p / 2);
            auto b1 = strip_band_index(strip, yc + p / 2);
            if (!b0 || !b1 || *b0 != *b1) continue;
            band = *b0;
        }
        for (long long ix = ix0; ix <= ix1; ++ix) {
            double xc = ax + (static_cast<double>(ix) + 0.5) * p;
            bool inside;
            if (axis_host) {
                inside = xc - p / 2 >= hx0 && xc + p / 2 <= hx1 && yc - p / 2 >= hy0 &&
                         yc + p / 2 <= hy1;
            } else {
                inside = host.contains({xc - p / 2, yc - p / 2}) &&
                         host.contains({xc + p / 2, yc - p / 2}) &&
                         host.contains({xc + p / 2, yc + p / 2}) &&
                         host.contains({xc - p / 2, yc + p / 2});
            }
            if (!inside) continue;
            pk.boxes.push_back({ix, iy, band, {xc, yc}, r});
        }
    }

    double covered = static_cast<double>(pk.boxes.size()) * r * r;
    pk.density_host = covered / host.area();
    if (opt.skip_strip) {
        pk.density = pk.density_host;
    } else {
        Region hostr = Region::box(host);
        Region stripr = Region::strip(strip);
        double frac = density(stripr, hostr, opt.denom_samples, opt.seed);
        double denom = frac * host.area();
        pk.density = denom > 0 ? covered / denom : 0.0;
    }
    return pk;
}

double packing_density_bound(double delta, double delta_slack) {
    if (!(delta > 0) || !(delta < kPi / 2))
        throw DomainError("packing_density_bound: delta must lie in (0, pi/2)");
    if (!(delta_slack >= 0))
        throw DomainError("packing_density_bound: slack must be >= 0");
    return 0.5 - delta / kPi - delta_slack;
}

DerivativeBounds koebe_derivative_bounds(double r, double d, double deriv_mod) {
    if (!(r > 0) || !(d >= 0) || !(d < r))
        throw DomainError("koebe_derivative_bounds: need 0 <= d < r");
    if (!(deriv_mod > 0))
        throw DomainError("koebe_derivative_bounds: derivative modulus must be positive");
    double lo = deriv_mod * r * r * (r - d) / std::pow(r + d, 3);
    double hi = deriv_mod * r * r * (r + d) / std::pow(r - d, 3);
    return {lo, hi};
}

DerivativeBounds koebe_displacement_bounds(double r, double d, double deriv_mod) {
    if (!(r > 0) || !(d >= 0) || !(d < r))
        throw DomainError("koebe_displacement_bounds: need 0 <= d < r");
    if (!(deriv_mod > 0))
        throw DomainError("koebe_displacement_bounds: derivative modulus must be positive");
    double lo = deriv_mod * r * r * d / ((r + d) * (r + d));
    double hi = deriv_mod * r * r * d / ((r - d) * (r - d));
    return {lo, hi};
}

double distortion_bound_single(double K) {
    if (!(K > 3)) throw DomainError("distortion_bound_single: need K > 3");
    return std::pow((K + 1) / (K - 3), 6);
}

double distortion_bound_composite(double K) {
    double s = distortion_bound_single(K);
    return s * s;
}

DistortionEstimate empirical_distortion(const std::vector<std::pair<cplx, cplx>>& samples,
                                        std::size_t max_pairs, std::uint64_t seed) {
    std::size_t n = samples.size();
    if (n < 2) throw DegenerateInputError("empirical_distortion: need two or more samples");
    DistortionEstimate est;
    est.c_f = std::numeric_limits<double>::infinity();
    est.C_f = 0;

    auto feed = [&](std::size_t i, std::size_t j) {
        double dz = std::abs(samples[i].first - samples[j].first);
        if (dz == 0) return;
        double q = std::abs(samples[i].second - samples[j].second) / dz;
        est.c_f = std::min(est.c_f, q);
        est.C_f = std::max(est.C_f, q);
        ++est.pairs_used;
    };

    std::size_t total = n * (n - 1) / 2;
    if (total <= max_pairs) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) feed(i, j);
    } else {
        std::mt19937_64 rng(seed);
        for (std::size_t k = 0; k < max_pairs; ++k) {
            std::size_t i = rng() % n;
            std::size_t j = rng() % (n - 1);
            if (j >= i) ++j;
            feed(i, j);
        }
    }
    if (est.pairs_used == 0)
        throw DegenerateInputError("empirical_distortion: all sample points coincide");
    est.ratio = est.C_f / est.c_f;
    return est;
}

SquareSandwich image_square_sandwich(cplx f_center, double deriv_mod, double deriv_arg,
                                     double r, double d, double eps, double theta) {
    if (!(deriv_mod > 0))
        throw DomainError("image_square_sandwich: derivative modulus must be positive");
    if (!(r > 0)) throw DomainError("image_square_sandwich: r must be positive");
    if (!(d >= 1)) throw DomainError("image_square_sandwich: distortion d must be >= 1");
    double s2 = std::sqrt(2.0);
    if (!(eps >= 0) || !(eps < 1 / s2))
        throw DomainError("image_square_sandwich: eps must lie in [0, 1/sqrt(2))");
    double ang = theta + deriv_arg;
    SquareSandwich sw;
    sw.inner = Box{f_center, deriv_mod * r * (1 - s2 * eps) / d, ang};
    sw.outer = Box{f_center, deriv_mod * r * d * (1 + s2 * eps), ang};
    return sw;
}

double density_transport_factor(double distortion) {
    if (!(distortion >= 1))
        throw DomainError("density_transport_factor: distortion must be >= 1");
    return distortion * distortion;
}

}  // namespace gaugedyn
