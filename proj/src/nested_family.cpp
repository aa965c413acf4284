#include "gaugedyn/nested_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "gaugedyn/numeric.hpp"

namespace gaugedyn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrt2 = 1.4142135623730951;

struct Candidate {
    PackedBox box;
    cplx pullback;  // chart-k point inside the parent box
};

// Pullback of w = anchor + off when the anchor's log-magnitude and argument
// are known exactly from the parent's coordinates; branch toward im_target.
cplx pullback_local(double anchor_log_mag, double anchor_arg, const cplx& anchor,
                    const cplx& off, double log_lam, double arg_lam, double im_target) {
    cplx q = off / anchor;
    double lnmag = anchor_log_mag - log_lam +
                   0.5 * std::log1p(2 * q.real() + std::norm(q));
    double a = anchor_arg - arg_lam + std::atan2(q.imag(), 1.0 + q.real());
    double k = std::round((im_target - a) / (2 * kPi));
    return {lnmag, a + 2 * kPi * k};
}

bool inside_axis_box(const cplx& z, const cplx& center, double half, double pad) {
    return std::abs(z.real() - center.real()) <= half + pad &&
           std::abs(z.imag() - center.imag()) <= half + pad;
}

}  // namespace

NestedFamily construct_nested_family(const ExpMap& map, const StripSpec& strip,
                                     const Box& seed, double r, int depth,
                                     const NestedConfig& config) {
    if (seed.angle != 0.0)
        throw DomainError("construct_nested_family: seed box must be axis-aligned");
    if (!(r > 0)) throw DomainError("construct_nested_family: r must be positive");
    if (depth < 0) throw DomainError("construct_nested_family: depth must be >= 0");
    if (depth > config.depth_max)
        throw DomainError("construct_nested_family: depth exceeds depth_max");
    if (config.level_budget == 0)
        throw DomainError("construct_nested_family: level budget must be positive");

    double margin = config.margin >= 0 ? config.margin : r / 64.0;
    double cc = config.coarse_c > 0 ? config.coarse_c : 64.0 * std::max(1.0, 1.0 / r);
    double span_cap = config.pack_span > 0 ? config.pack_span
                                           : std::max(66.0, cc * r * 1.03);
    double log_lam = std::log(std::abs(map.lambda()));
    double arg_lam = std::arg(map.lambda());

    NestedFamily fam;
    fam.map = map;
    fam.strip = strip;
    fam.seed = seed;
    fam.r = r;
    fam.depth = depth;
    fam.config = config;
    fam.config.margin = margin;
    fam.config.coarse_c = cc;
    fam.config.pack_span = span_cap;

    Cell root;
    root.offset = seed.center;
    root.side = seed.side;
    root.point = seed.center;
    fam.levels.push_back({root});
    fam.info.push_back({1, 1, false, false});

    for (int k = 0; k < depth; ++k) {
        const auto& parents = fam.levels[static_cast<std::size_t>(k)];
        bool cap_mode = parents.size() >= config.level_budget;

        for (const Cell& P : parents) {
            if (P.anchor != cplx{0.0, 0.0})
                throw DepthOverflowError(
                    "construct_nested_family: parent chart beyond double range");
            double lm = log_lam + P.offset.real();
            if (lm > 709.0 || lm < -745.0)
                throw DepthOverflowError(
                    "construct_nested_family: image scale not representable");
        }

        std::vector<std::vector<Candidate>> cands(parents.size());
        bool any_local = false;

        for (std::size_t p = 0; p < parents.size(); ++p) {
            const Cell& P = parents[p];
            cplx c = P.offset;
            double lm = log_lam + c.real();
            cplx w0 = map.apply(c);
            double deriv = std::exp(lm);
            double outer_side = deriv * r * kSqrt2 * std::exp(r / kSqrt2);
            double span = std::min(outer_side, span_cap);
            bool local = deriv > kLocalAnchorScale;
            any_local = any_local || local;

            PackOptions po;
            po.margin = margin;
            po.coarse_c = cc;
            po.skip_strip = local;
            Box host = local ? Box{{0.0, 0.0}, span, 0.0} : Box{w0, span, 0.0};
            Packing pk = build_packing(host, strip, r, po);

            double a_arg = std::remainder(c.imag() + arg_lam, 2 * kPi);
            double h = r / 2.0;
            const cplx deltas[5] = {{0, 0}, {-h, -h}, {h, -h}, {h, h}, {-h, h}};
            for (const PackedBox& b : pk.boxes) {
                bool keep = true;
                cplx pb_center{};
                for (int j = 0; j < 5 && keep; ++j) {
                    cplx pb;
                    if (local) {
                        pb = pullback_local(lm, a_arg, w0, b.center + deltas[j],
                                            log_lam, arg_lam, c.imag());
                    } else {
                        pb = map.inverse_branch_toward(b.center + deltas[j], c.imag());
                    }
                    if (j == 0) pb_center = pb;
                    keep = inside_axis_box(pb, c, P.side / 2.0, 0.0);
                }
                if (!keep) continue;
                cands[p].push_back({b, pb_center});
                if (cap_mode) break;
            }
            if (cands[p].empty())
                throw EmptyPackingError(
                    "construct_nested_family: a parent kept no child boxes");
        }

        std::size_t total = 0;
        for (const auto& v : cands) total += v.size();

        std::vector<char> keep_flag;
        bool stride = total > config.level_budget;
        if (stride) {
            keep_flag.assign(total, 0);
            for (std::size_t i = 0; i < config.level_budget; ++i)
                keep_flag[i * total / config.level_budget] = 1;
        }

        std::vector<Cell> next;
        next.reserve(std::min(total, config.level_budget));
        std::size_t gidx = 0;
        for (std::size_t p = 0; p < parents.size(); ++p) {
            const Cell& P = parents[p];
            cplx c = P.offset;
            double lm = log_lam + c.real();
            cplx w0 = map.apply(c);
            bool local = std::exp(lm) > kLocalAnchorScale;
            double a_arg = std::remainder(c.imag() + arg_lam, 2 * kPi);
            std::uint32_t ordinal = 0;
            for (const Candidate& cd : cands[p]) {
                bool chosen = !stride || keep_flag[gidx];
                ++gidx;
                if (!chosen) continue;
                Cell ch;
                ch.address = P.address;
                ch.address.push_back(ordinal++);
                ch.parent = static_cast<long long>(p);
                ch.side = r;
                ch.ix = cd.box.ix;
                ch.iy = cd.box.iy;
                ch.band = cd.box.band;
                if (local) {
                    ch.anchor = w0;
                    ch.anchor_log_mag = lm;
                    ch.anchor_arg = a_arg;
                    ch.offset = cd.box.center;
                } else {
                    ch.offset = cd.box.center;
                }
                cplx z = cd.pullback;
                double sum = log_lam + z.real();
                long long ai = P.parent;
                for (int lvl = k; lvl >= 1; --lvl) {
                    const Cell& A =
                        fam.levels[static_cast<std::size_t>(lvl - 1)]
                                  [static_cast<std::size_t>(ai)];
                    z = map.inverse_branch_toward(z, A.offset.imag());
                    sum += log_lam + z.real();
                    ai = A.parent;
                }
                ch.point = z;
                ch.log_deriv_chain = sum;
                next.push_back(std::move(ch));
            }
        }
        if (next.empty())
            throw EmptyPackingError("construct_nested_family: level came out empty");

        LevelInfo li;
        li.count = next.size();
        li.candidates = total;
        li.truncated = cap_mode;
        li.local_chart = any_local;
        fam.levels.push_back(std::move(next));
        fam.info.push_back(li);
    }
    return fam;
}

NestingReport verify_nesting(const NestedFamily& fam, std::size_t samples_per_cell,
                             double tol, std::uint64_t seed) {
    NestingReport rep;
    rep.depth = fam.depth;
    rep.min_postcritical_distance = std::numeric_limits<double>::infinity();

    const ExpMap& map = fam.map;
    double log_lam = std::log(std::abs(map.lambda()));
    double arg_lam = std::arg(map.lambda());
    double pitch = fam.r + fam.config.margin;

    // Certified separation ladder d_k = 1 / E^k(2*beta) in log space.
    if (map.has_real_parameter()) {
        double t = 2.0 * map.beta();
        for (int k = 1; k <= fam.depth; ++k) {
            double l = log_lam + t;
            rep.log_dk.push_back(-l);
            t = l > 709.0 ? std::numeric_limits<double>::infinity() : std::exp(l);
        }
    }

    for (int k = 1; k <= fam.depth; ++k) {
        const auto& cells = fam.levels[static_cast<std::size_t>(k)];
        const auto& parents = fam.levels[static_cast<std::size_t>(k - 1)];
        double diam_max = -std::numeric_limits<double>::infinity();

        for (const Cell& ch : cells) {
            const Cell& P = parents[static_cast<std::size_t>(ch.parent)];
            cplx c = P.offset;
            double h = ch.side / 2.0;
            const cplx deltas[5] = {{0, 0}, {-h, -h}, {h, -h}, {h, h}, {-h, h}};
            for (const cplx& d : deltas) {
                cplx pb;
                if (ch.anchor != cplx{0.0, 0.0}) {
                    pb = pullback_local(ch.anchor_log_mag, ch.anchor_arg, ch.anchor,
                                        ch.offset + d, log_lam, arg_lam, c.imag());
                } else {
                    pb = map.inverse_branch_toward(ch.offset + d, c.imag());
                }
                if (!inside_axis_box(pb, c, P.side / 2.0, tol * P.side))
                    ++rep.containment_violations;
            }
            double ld = std::log(ch.side * kSqrt2) - ch.log_deriv_chain;
            diam_max = std::max(diam_max, ld);
            if (!rep.log_dk.empty()) {
                double bound = rep.log_dk[static_cast<std::size_t>(k - 1)];
                if (std::isfinite(bound) && ld > bound + tol) ++rep.diameter_violations;
            }
            rep.min_postcritical_distance = std::min(
                rep.min_postcritical_distance,
                map.has_real_parameter() ? map.postcritical_distance(ch.point)
                                         : std::numeric_limits<double>::infinity());
        }
        rep.log_diam_max.push_back(diam_max);

        // Forward-sampled refinement density, per parent, honest about scale.
        double delta_min = std::numeric_limits<double>::infinity();
        bool measured = false;
        std::size_t m = static_cast<std::size_t>(std::ceil(std::sqrt(
            static_cast<double>(std::max<std::size_t>(samples_per_cell, 16)))));
        for (std::size_t p = 0; p < parents.size(); ++p) {
            const Cell& P = parents[p];
            if (P.anchor != cplx{0.0, 0.0}) continue;

            std::set<std::pair<long long, long long>> grid;
            bool child_local = false;
            for (const Cell& ch : cells)
                if (ch.parent == static_cast<long long>(p)) {
                    grid.insert({ch.ix, ch.iy});
                    child_local = child_local || ch.anchor != cplx{0.0, 0.0};
                }
            if (grid.empty()) continue;

            cplx c = P.offset;
            std::size_t hits = 0, shots = 0;
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t i = 0; i < m; ++i) {
                    std::uint64_t key =
                        ((static_cast<std::uint64_t>(k) * parents.size() + p) * m + j) * m + i;
                    double u = (static_cast<double>(i) + uniform01(seed, 2 * key)) /
                               static_cast<double>(m);
                    double v = (static_cast<double>(j) + uniform01(seed, 2 * key + 1)) /
                               static_cast<double>(m);
                    cplx w = c + cplx{(u - 0.5) * P.side, (v - 0.5) * P.side};
                    ++shots;
                    cplx img;
                    if (child_local) {
                        // Children live anchor-locally at E(c): compare via
                        // the exactly representable relative displacement.
                        cplx rel = std::exp(w - c);  // e^{w-c}, moderate
                        cplx anchor = map.apply(c);
                        img = anchor * (rel - cplx{1.0, 0.0});
                        if (std::abs(img) > fam.config.pack_span) continue;
                    } else {
                        img = map.apply(w);
                        if (is_overflow(img)) continue;
                    }
                    long long jx = static_cast<long long>(std::floor(img.real() / pitch));
                    long long jy = static_cast<long long>(std::floor(img.imag() / pitch));
                    if (!grid.count({jx, jy})) continue;
                    cplx bc{(static_cast<double>(jx) + 0.5) * pitch,
                            (static_cast<double>(jy) + 0.5) * pitch};
                    if (inside_axis_box(img, bc, fam.r / 2.0, 0.0)) ++hits;
                }
            if (shots > 0) {
                measured = true;
                delta_min = std::min(delta_min,
                                     static_cast<double>(hits) / static_cast<double>(shots));
            }
        }
        rep.delta_per_level.push_back(measured ? delta_min : 0.0);
    }

    rep.ok = rep.containment_violations == 0 && rep.diameter_violations == 0;
    return rep;
}

FrostmanMass frostman_mass(const NestedFamily& fam) {
    FrostmanMass fm;
    fm.mass.push_back({1.0});
    for (int k = 1; k <= fam.depth; ++k) {
        const auto& cells = fam.levels[static_cast<std::size_t>(k)];
        const auto& pm = fm.mass[static_cast<std::size_t>(k - 1)];
        std::vector<double> mass(cells.size(), 0.0);

        std::size_t i = 0;
        while (i < cells.size()) {
            std::size_t j = i;
            while (j < cells.size() && cells[j].parent == cells[i].parent) ++j;
            double lmax = -std::numeric_limits<double>::infinity();
            for (std::size_t t = i; t < j; ++t)
                lmax = std::max(lmax, -2.0 * cells[t].log_deriv_chain);
            double S = 0;
            for (std::size_t t = i; t < j; ++t)
                S += std::exp(-2.0 * cells[t].log_deriv_chain - lmax);
            double parent_mass = pm[static_cast<std::size_t>(cells[i].parent)];
            for (std::size_t t = i; t < j; ++t)
                mass[t] = parent_mass *
                          std::exp(-2.0 * cells[t].log_deriv_chain - lmax) / S;
            i = j;
        }
        fm.mass.push_back(std::move(mass));
    }
    return fm;
}

MassRatioScan mass_ratio_scan(const NestedFamily& fam, const FrostmanMass& fm,
                              const GaugeFunction& h, const std::vector<double>& radii,
                              std::size_t max_points) {
    if (fam.levels.empty()) throw DomainError("mass_ratio_scan: empty family");
    const auto& deep = fam.levels.back();
    const auto& mass = fm.mass.back();
    if (deep.size() != mass.size())
        throw DomainError("mass_ratio_scan: mass distribution does not match family");

    MassRatioScan scan;
    std::size_t npts = std::min(max_points, deep.size());
    for (std::size_t q = 0; q < npts; ++q) {
        cplx z = deep[q].point;
        for (double rad : radii) {
            double mu = 0;
            for (std::size_t t = 0; t < deep.size(); ++t)
                if (std::abs(deep[t].point - z) <= rad) mu += mass[t];
            double g = h(rad);
            MassRatioRow row{z, rad, mu, g, mu / g};
            scan.max_ratio = std::max(scan.max_ratio, row.ratio);
            scan.rows.push_back(row);
        }
    }
    return scan;
}

std::string export_family_csv(const NestedFamily& fam) {
    std::string out;
    auto kv = [&](const std::string& key, const std::string& val) {
        out += "# " + key + "=" + val + "\n";
    };
    kv("op", "nested");
    kv("lambda_re", format_double(fam.map.lambda().real()));
    kv("lambda_im", format_double(fam.map.lambda().imag()));
    kv("kind", fam.strip.kind == StripKind::Julia ? "julia" : "fatou");
    kv("delta", format_double(fam.strip.delta));
    kv("seed_re", format_double(fam.seed.center.real()));
    kv("seed_im", format_double(fam.seed.center.imag()));
    kv("seed_side", format_double(fam.seed.side));
    kv("r", format_double(fam.r));
    kv("depth", std::to_string(fam.depth));
    kv("budget", std::to_string(fam.config.level_budget));
    kv("margin", format_double(fam.config.margin));
    kv("pack_span", format_double(fam.config.pack_span));
    kv("coarse_c", format_double(fam.config.coarse_c));
    kv("eps", format_double(fam.config.eps));
    out += "level,address,center_re,center_im,side\n";
    for (std::size_t k = 0; k < fam.levels.size(); ++k) {
        for (const Cell& c : fam.levels[k]) {
            out += std::to_string(k) + ",";
            for (std::size_t a = 0; a < c.address.size(); ++a) {
                if (a) out += ".";
                out += std::to_string(c.address[a]);
            }
            cplx ctr = c.box_center();
            out += "," + format_double(ctr.real()) + "," + format_double(ctr.imag()) +
                   "," + format_double(c.side) + "\n";
        }
    }
    return out;
}

}  // namespace gaugedyn
