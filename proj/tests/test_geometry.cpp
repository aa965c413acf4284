#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "gaugedyn/geometry.hpp"

using namespace gaugedyn;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("box membership, axis-aligned and rotated") {
    Box b = make_box({1.0, 2.0}, 2.0, 0.0);
    CHECK(b.contains({1.0, 2.0}));
    CHECK(b.contains({2.0, 3.0}));  // corner, closed
    CHECK(!b.contains({2.0 + 1e-12, 3.0}));
    CHECK(b.contains({2.0 + 0.05, 3.0}, 0.1));  // padding widens

    Box rot = make_box({0.0, 0.0}, 2.0, kPi / 4);
    CHECK(rot.contains({1.41, 0.0}));
    CHECK(!rot.contains({1.42, 0.0}));
    CHECK(!rot.contains({1.01, 1.01}));

    auto cs = rot.corners();
    for (const cplx& c : cs) CHECK(std::abs(c) == doctest::Approx(std::sqrt(2.0)));

    CHECK_THROWS_AS(make_box({0.0, 0.0}, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_box({0.0, 0.0}, -1.0, 0.0), DomainError);
}

TEST_CASE("region exact areas") {
    Region q2 = Region::box(make_box({0.0, 0.0}, 2.0, 0.0));
    CHECK(q2.exact_area() == 4.0);

    // overlapping union counted once
    Region uni = Region::box_union({make_box({0.0, 0.0}, 2.0, 0.0),
                                    make_box({1.0, 0.0}, 2.0, 0.0)});
    CHECK(uni.exact_area() == doctest::Approx(6.0).epsilon(1e-14));

    Region rot = Region::box(make_box({0.0, 0.0}, 2.0, 0.3));
    CHECK(rot.exact_area() == 4.0);
    CHECK(Region::strip(make_strip(0.3)).exact_area() < 0);
}

TEST_CASE("density: exact paths") {
    Region b = Region::box(make_box({0.0, 0.0}, 2.0, 0.0));
    CHECK(density(b, b) == 1.0);

    // left half of B as a union of two unit squares
    Region half = Region::box_union({make_box({-0.5, -0.5}, 1.0, 0.0),
                                     make_box({-0.5, 0.5}, 1.0, 0.0)});
    CHECK(density(half, b) == doctest::Approx(0.5).epsilon(1e-15));

    Region quarter = Region::box(make_box({0.0, 0.0}, 1.0, 0.0));
    CHECK(density(quarter, b) == doctest::Approx(0.25).epsilon(1e-15));

    // strip family against a band-tall box: interval-length ratio
    Region tall = Region::box(make_box({0.0, 0.0}, 2 * kPi, 0.0));
    Region js = Region::strip(make_strip(0.3));
    CHECK(density(js, tall) ==
          doctest::Approx((kPi - 0.6) / (2 * kPi)).epsilon(1e-12));
}

TEST_CASE("density: sampled path agrees with the exact one") {
    // an angle of pi/2 forces sampling but the geometry is unchanged
    Region axis = Region::box(make_box({0.0, 0.0}, 2 * kPi, 0.0));
    Region turned = Region::box(make_box({0.0, 0.0}, 2 * kPi, kPi / 2));
    Region js = Region::strip(make_strip(0.3));
    double exact = density(js, axis);
    double sampled = density(js, turned, 1 << 17, 0);
    CHECK(std::abs(sampled - exact) < 0.01);
    // deterministic for a fixed seed
    CHECK(density(js, turned, 1 << 17, 0) == sampled);

    CHECK_THROWS_AS(density(axis, js), DomainError);  // unbounded reference
}

TEST_CASE("grid packing fills a compliant host") {
    Box host = make_box({0.0, 0.0}, 65.0, 0.0);
    StripSpec js = make_strip(0.3);
    Packing pk = build_packing(host, js, 0.05);
    REQUIRE(!pk.boxes.empty());
    CHECK(pk.margin == 0.05 / 16);

    CHECK(pk.density > packing_density_bound(0.3, 0.05));
    CHECK(packing_density_bound(0.3, 0.05) ==
          doctest::Approx(0.5 - 0.3 / kPi - 0.05).epsilon(1e-15));

    // boxes sorted by (band, iy, ix); each strictly inside host and one band
    for (std::size_t i = 1; i < pk.boxes.size(); ++i) {
        const PackedBox &a = pk.boxes[i - 1], &b = pk.boxes[i];
        bool ordered = a.band < b.band ||
                       (a.band == b.band &&
                        (a.iy < b.iy || (a.iy == b.iy && a.ix < b.ix)));
        CHECK(ordered);
    }
    for (std::size_t i = 0; i < pk.boxes.size(); i += 97) {
        const PackedBox& b = pk.boxes[i];
        CHECK(host.contains(b.center + cplx{b.side / 2, b.side / 2}));
        CHECK(host.contains(b.center - cplx{b.side / 2, b.side / 2}));
        auto lo = strip_band_index(js, b.center.imag() - b.side / 2);
        auto hi = strip_band_index(js, b.center.imag() + b.side / 2);
        REQUIRE(lo.has_value());
        REQUIRE(hi.has_value());
        CHECK(*lo == b.band);
        CHECK(*hi == b.band);
    }
}

TEST_CASE("packing density deep inside one band") {
    // host fully inside one strip band, r much smaller than the side
    Box host = make_box({0.0, 0.0}, 2.0, 0.0);
    StripSpec js = make_strip(0.3);
    PackOptions po;
    po.coarse_c = 8.0;
    Packing pk = build_packing(host, js, 0.05, po);
    CHECK(pk.density >= 0.9);
    CHECK(pk.density == doctest::Approx(0.9025).epsilon(1e-12));  // recorded baseline
    CHECK(pk.density == pk.density_host);
}

TEST_CASE("packing is empty on a strip gap") {
    // host inside the gap between Julia bands
    Box host = make_box({0.0, kPi}, 3.0, 0.0);
    StripSpec js = make_strip(0.3);
    PackOptions po;
    po.coarse_c = 1.0;
    Packing pk = build_packing(host, js, 0.5, po);
    CHECK(pk.boxes.empty());
    CHECK(pk.density == 0.0);
    CHECK(pk.density_host == 0.0);
}

TEST_CASE("packing coarseness guard") {
    StripSpec js = make_strip(0.3);
    CHECK_THROWS_AS(build_packing(make_box({0.0, 0.0}, 64.0, 0.0), js, 0.05),
                    TooCoarseError);
    CHECK_NOTHROW(build_packing(make_box({0.0, 0.0}, 65.0, 0.0), js, 0.05));
}

TEST_CASE("packing respects skip_strip") {
    Box host = make_box({0.0, 0.0}, 65.0, 0.0);
    PackOptions po;
    po.skip_strip = true;
    Packing pk = build_packing(host, make_strip(0.3), 0.05, po);
    CHECK(pk.density_host > 0.8);
    CHECK(pk.density == pk.density_host);
    for (std::size_t i = 0; i < pk.boxes.size(); i += 997)
        CHECK(pk.boxes[i].band == 0);
}

TEST_CASE("packing determinism for rotated hosts") {
    Box host = make_box({3.0, -2.0}, 65.0, 0.37);
    StripSpec js = make_strip(0.3);
    PackOptions po;
    po.seed = 5;
    Packing a = build_packing(host, js, 0.05, po);
    Packing b = build_packing(host, js, 0.05, po);
    REQUIRE(a.boxes.size() == b.boxes.size());
    CHECK(a.density == b.density);
    for (std::size_t i = 0; i < a.boxes.size(); i += 503) {
        CHECK(a.boxes[i].center == b.boxes[i].center);
        CHECK(a.boxes[i].band == b.boxes[i].band);
    }
}

TEST_CASE("distortion bounds on the disc") {
    SUBCASE("zero offset collapses to the center derivative") {
        DerivativeBounds d = koebe_derivative_bounds(1.0, 0.0, 3.0);
        CHECK(d.lo == 3.0);
        CHECK(d.hi == 3.0);
        DerivativeBounds s = koebe_displacement_bounds(1.0, 0.0, 3.0);
        CHECK(s.lo == 0.0);
        CHECK(s.hi == 0.0);
    }
    SUBCASE("arithmetic anchors at r=1, d=0.5") {
        DerivativeBounds d = koebe_derivative_bounds(1.0, 0.5, 1.0);
        CHECK(d.lo == doctest::Approx(0.5 / 3.375).epsilon(1e-15));
        CHECK(d.hi == doctest::Approx(12.0).epsilon(1e-15));
        DerivativeBounds s = koebe_displacement_bounds(1.0, 0.5, 1.0);
        CHECK(s.lo == doctest::Approx(0.5 / 2.25).epsilon(1e-15));
        CHECK(s.hi == doctest::Approx(2.0).epsilon(1e-15));
    }
    SUBCASE("the exponential on D(0,1) sits inside the bounds") {
        // exp is univalent on D(0,1); f'(0) = 1
        double z = 0.5;
        DerivativeBounds d = koebe_derivative_bounds(1.0, z, 1.0);
        double fp = std::exp(z);
        CHECK(fp >= d.lo);
        CHECK(fp <= d.hi);
        DerivativeBounds s = koebe_displacement_bounds(1.0, z, 1.0);
        double disp = std::abs(std::exp(cplx{z, 0.0}) - 1.0);
        CHECK(disp >= s.lo);
        CHECK(disp <= s.hi);
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(koebe_derivative_bounds(1.0, 1.0), DomainError);
        CHECK_THROWS_AS(koebe_derivative_bounds(1.0, -0.1), DomainError);
        CHECK_THROWS_AS(koebe_displacement_bounds(0.0, 0.0), DomainError);
    }
}

TEST_CASE("distortion constants") {
    CHECK(distortion_bound_single(7.0) == doctest::Approx(64.0).epsilon(1e-14));
    double k10 = std::pow(11.0 / 7.0, 6.0);  // arithmetic oracle
    CHECK(distortion_bound_single(10.0) == doctest::Approx(k10).epsilon(1e-14));
    CHECK(distortion_bound_composite(10.0) ==
          doctest::Approx(k10 * k10).epsilon(1e-14));
    CHECK(std::abs(distortion_bound_single(1e6) - 1.0) <= 1e-4);
    CHECK_THROWS_AS(distortion_bound_single(3.0), DomainError);
    CHECK_THROWS_AS(distortion_bound_composite(2.9), DomainError);
}

TEST_CASE("empirical distortion") {
    SUBCASE("affine samples have ratio 1") {
        std::vector<std::pair<cplx, cplx>> pts;
        for (int i = 0; i < 12; ++i) {
            cplx z{0.1 * i, 0.05 * i * i};
            pts.emplace_back(z, cplx{3.0, 1.0} * z + cplx{7.0, -2.0});
        }
        DistortionEstimate d = empirical_distortion(pts);
        CHECK(d.ratio == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(d.pairs_used == 12 * 11 / 2);
    }
    SUBCASE("exp on D(0, 0.3) respects the K=10 bound") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-0.3, 0.3);
        std::vector<std::pair<cplx, cplx>> pts;
        while (pts.size() < 1000) {
            cplx z{u(rng), u(rng)};
            if (std::abs(z) > 0.3) continue;
            pts.emplace_back(z, std::exp(z));
        }
        DistortionEstimate d = empirical_distortion(pts);
        CHECK(d.pairs_used == 100000);  // budget-capped subsample
        CHECK(d.ratio <= distortion_bound_single(10.0));
        CHECK(d.ratio >= 1.0);
        // scaling the map leaves the ratio unchanged
        for (auto& p : pts) p.second *= cplx{0.0, 2.5};
        DistortionEstimate d2 = empirical_distortion(pts);
        CHECK(d2.ratio == doctest::Approx(d.ratio).epsilon(1e-12));
    }
    SUBCASE("degenerate inputs") {
        std::vector<std::pair<cplx, cplx>> one{{cplx{0, 0}, cplx{1, 0}}};
        CHECK_THROWS_AS(empirical_distortion(one), DegenerateInputError);
        std::vector<std::pair<cplx, cplx>> dup{{cplx{1, 1}, cplx{2, 2}},
                                               {cplx{1, 1}, cplx{2, 2}}};
        CHECK_THROWS_AS(empirical_distortion(dup), DegenerateInputError);
    }
}

TEST_CASE("image square sandwich") {
    SUBCASE("no distortion reproduces the scaled rotated square") {
        SquareSandwich s =
            image_square_sandwich({5.0, 1.0}, 2.0, 0.25, 0.6, 1.0, 0.0, 0.1);
        CHECK(s.inner.side == doctest::Approx(1.2).epsilon(1e-15));
        CHECK(s.outer.side == doctest::Approx(1.2).epsilon(1e-15));
        CHECK(s.inner.angle == doctest::Approx(0.35).epsilon(1e-15));
        CHECK(s.inner.center == cplx{5.0, 1.0});
    }
    SUBCASE("exp image of a small square fits the sandwich") {
        // f = exp on Q(2, 0.05): d = e^side, eps from the cubic remainder
        double side = 0.05, rho = side / std::sqrt(2.0);
        double d = std::exp(side);
        double eps = std::expm1(rho) - rho;
        cplx c{2.0, 0.0};
        SquareSandwich s =
            image_square_sandwich(std::exp(c), std::exp(2.0), 0.0, side, d, eps);
        Box q = make_box(c, side, 0.0);
        // boundary images lie outside the inner box and inside the outer box
        for (int i = 0; i < 1000; ++i) {
            double t = -0.5 + static_cast<double>(i) / 999.0;
            for (cplx z : {c + cplx{t * side, -side / 2},
                           c + cplx{t * side, side / 2},
                           c + cplx{-side / 2, t * side},
                           c + cplx{side / 2, t * side}}) {
                CHECK(s.outer.contains(std::exp(z), 1e-12));
            }
        }
        // and the inner box maps from inside the square: spot-check centers
        CHECK(s.outer.contains(std::exp(c)));
        CHECK(s.inner.side < s.outer.side);
        CHECK(q.contains(c));
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(
            image_square_sandwich({0, 0}, 1.0, 0.0, 1.0, 0.9, 0.0), DomainError);
        CHECK_THROWS_AS(
            image_square_sandwich({0, 0}, 1.0, 0.0, 1.0, 1.0, 0.8), DomainError);
    }
}

TEST_CASE("density transport factor") {
    CHECK(density_transport_factor(3.0) == 9.0);
    CHECK_THROWS_AS(density_transport_factor(0.5), DomainError);
}
