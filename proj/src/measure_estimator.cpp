#include "gaugedyn/measure_estimator.hpp"

#include <algorithm>
#include <cmath>

#include "gaugedyn/numeric.hpp"

namespace gaugedyn {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr std::size_t kCellBudget = 100000000;

CellLabel join_verdicts(const OrbitVerdict* v, std::size_t n) {
    bool all_attracted = true;
    bool any_escape = false;
    for (std::size_t i = 0; i < n; ++i) {
        all_attracted = all_attracted && v[i] == OrbitVerdict::Attracted;
        any_escape = any_escape || v[i] == OrbitVerdict::EscapingCandidate;
    }
    if (all_attracted) return CellLabel::Fatou;
    if (any_escape) return CellLabel::JuliaCandidate;
    return CellLabel::Undecided;
}

CellLabel classify_cell(const ExpMap& map, const cplx& center, double half,
                        const ClassifyParams& p) {
    OrbitVerdict v[5];
    std::size_t n = 0;
    v[n++] = map.classify_orbit(center, p.max_steps, p.escape_re, 2).verdict;
    if (p.mode == SampleMode::FivePoint) {
        const cplx deltas[4] = {{-half, -half}, {half, -half}, {half, half}, {-half, half}};
        for (const cplx& d : deltas)
            v[n++] = map.classify_orbit(center + d, p.max_steps, p.escape_re, 2).verdict;
    }
    return join_verdicts(v, n);
}

}  // namespace

const char* trend_name(Trend t) {
    switch (t) {
        case Trend::Increasing: return "increasing";
        case Trend::Decreasing: return "decreasing";
        case Trend::Flat: return "flat";
        case Trend::Mixed: return "mixed";
    }
    return "flat";
}

std::size_t GridClassification::non_fatou_count() const {
    std::size_t n = 0;
    for (CellLabel l : labels)
        if (l != CellLabel::Fatou) ++n;
    return n;
}

cplx GridClassification::cell_center(std::size_t ix, std::size_t iy) const {
    double x0 = region.center.real() - region.half();
    double y0 = region.center.imag() - region.half();
    return {x0 + (static_cast<double>(ix) + 0.5) * resolution,
            y0 + (static_cast<double>(iy) + 0.5) * resolution};
}

GridClassification classify_grid(const ExpMap& map, const Box& region,
                                 double resolution, const ClassifyParams& p) {
    if (region.angle != 0.0)
        throw DomainError("classify_grid: region must be axis-aligned");
    if (!(resolution > 0) || !(resolution <= region.side))
        throw DomainError("classify_grid: resolution must lie in (0, side]");
    if (!map.has_real_parameter())
        throw DomainError("classify_grid: map parameter must lie in (0, 1/e)");
    // Cells of side exactly `resolution`, anchored at the lower-left corner;
    // the last row/column may overhang. The 1e-12 shave keeps fl division
    // noise from minting a spurious extra cell.
    std::size_t n = static_cast<std::size_t>(
        std::ceil(region.side / resolution * (1.0 - 1e-12)));
    if (n == 0) n = 1;
    if (n * n > kCellBudget) throw BudgetError("classify_grid: more than 1e8 cells");

    GridClassification cls;
    cls.region = region;
    cls.nx = cls.ny = n;
    cls.resolution = resolution;
    cls.params = p;
    cls.labels.assign(n * n, CellLabel::Undecided);

    double half = cls.resolution / 2.0;
    int threads = resolve_threads(p.threads);
    parallel_for(n, threads, [&](std::size_t y0, std::size_t y1) {
        for (std::size_t iy = y0; iy < y1; ++iy)
            for (std::size_t ix = 0; ix < n; ++ix)
                cls.labels[iy * n + ix] =
                    classify_cell(map, cls.cell_center(ix, iy), half, p);
    });
    return cls;
}

GridClassification refine(const ExpMap& map, const GridClassification& cls,
                          int factor, int max_steps) {
    if (factor < 2) throw DomainError("refine: factor must be >= 2");
    std::size_t f = static_cast<std::size_t>(factor);
    double res = cls.resolution / static_cast<double>(factor);
    std::size_t n = static_cast<std::size_t>(
        std::ceil(cls.region.side / res * (1.0 - 1e-12)));
    if (n * n > kCellBudget) throw BudgetError("refine: more than 1e8 cells");

    GridClassification out;
    out.region = cls.region;
    out.nx = out.ny = n;
    out.resolution = res;
    out.params = cls.params;
    if (max_steps > 0) out.params.max_steps = max_steps;
    out.labels.assign(n * n, CellLabel::Undecided);

    double half = out.resolution / 2.0;
    int threads = resolve_threads(out.params.threads);
    parallel_for(n, threads, [&](std::size_t y0, std::size_t y1) {
        for (std::size_t iy = y0; iy < y1; ++iy)
            for (std::size_t ix = 0; ix < n; ++ix) {
                CellLabel parent = cls.labels[(iy / f) * cls.nx + (ix / f)];
                out.labels[iy * n + ix] =
                    parent == CellLabel::Fatou
                        ? CellLabel::Fatou
                        : classify_cell(map, out.cell_center(ix, iy), half,
                                        out.params);
            }
    });
    return out;
}

double gauged_sum(const GridClassification& cls, const GaugeFunction& h) {
    double t = kSqrt2 * cls.resolution;
    if (!(t <= h.t_max()))
        throw DomainError("gauged_sum: cell diameter exceeds the gauge domain");
    return static_cast<double>(cls.non_fatou_count()) * h(t);
}

std::vector<DichotomyReport> dichotomy_probe(const ExpMap& map, double mu_gauge,
                                             const std::vector<double>& gammas,
                                             const Box& region,
                                             const ProbeConfig& cfg) {
    if (cfg.levels < 1 || cfg.levels > 8)
        throw DomainError("dichotomy_probe: levels must lie in [1, 8]");
    if (gammas.empty()) throw DomainError("dichotomy_probe: no gamma values");

    std::vector<GridClassification> grids;
    grids.push_back(classify_grid(map, region, cfg.res0, cfg.classify));
    for (int l = 1; l < cfg.levels; ++l)
        grids.push_back(refine(map, grids.back(), cfg.factor));

    std::vector<DichotomyReport> reports;
    for (double g : gammas) {
        GaugeFunction h(mu_gauge, g);
        DichotomyReport rep;
        rep.gamma = g;
        std::vector<double> logs;
        for (const auto& grid : grids) {
            ProbeLevel row;
            row.resolution = grid.resolution;
            row.non_fatou = grid.non_fatou_count();
            row.gauged_sum = gauged_sum(grid, h);
            rep.rows.push_back(row);
            logs.push_back(std::log(row.gauged_sum));
        }
        std::size_t tail = std::max<std::size_t>(
            3, static_cast<std::size_t>(cfg.levels) - 2);
        tail = std::min(tail, logs.size());
        std::vector<double> xs, ys;
        for (std::size_t i = logs.size() - tail; i < logs.size(); ++i) {
            xs.push_back(static_cast<double>(i));
            ys.push_back(logs[i]);
        }
        rep.slope = xs.size() >= 2 ? ls_slope(xs, ys) : 0.0;
        if (rep.slope > 0.05) {
            rep.trend = Trend::Increasing;
        } else if (rep.slope < -0.05) {
            rep.trend = Trend::Decreasing;
        } else {
            bool up = false, down = false;
            for (std::size_t i = 1; i < ys.size(); ++i) {
                up = up || ys[i] > ys[i - 1];
                down = down || ys[i] < ys[i - 1];
            }
            rep.trend = up && down ? Trend::Mixed : Trend::Flat;
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

std::string probe_csv(const ExpMap& map, double mu_gauge, const Box& region,
                      const ProbeConfig& cfg, const DichotomyReport& rep) {
    std::string out;
    auto kv = [&](const std::string& key, const std::string& val) {
        out += "# " + key + "=" + val + "\n";
    };
    kv("op", "probe");
    kv("lambda_re", format_double(map.lambda().real()));
    kv("lambda_im", format_double(map.lambda().imag()));
    kv("mu_gauge", format_double(mu_gauge));
    kv("gamma", format_double(rep.gamma));
    kv("center_re", format_double(region.center.real()));
    kv("center_im", format_double(region.center.imag()));
    kv("side", format_double(region.side));
    kv("res0", format_double(cfg.res0));
    kv("levels", std::to_string(cfg.levels));
    kv("factor", std::to_string(cfg.factor));
    kv("max_steps", std::to_string(cfg.classify.max_steps));
    kv("escape_re", format_double(cfg.classify.escape_re > 0
                                      ? cfg.classify.escape_re
                                      : map.default_escape_re()));
    kv("mode", cfg.classify.mode == SampleMode::FivePoint ? "five_point" : "center");
    kv("trend", trend_name(rep.trend));
    kv("slope", format_double(rep.slope));
    out += "level,resolution,non_fatou_count,gauged_sum,trend\n";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const ProbeLevel& r = rep.rows[i];
        out += std::to_string(i) + "," + format_double(r.resolution) + "," +
               std::to_string(r.non_fatou) + "," + format_double(r.gauged_sum) +
               "," + trend_name(rep.trend) + "\n";
    }
    return out;
}

PreimageEscapeReport preimage_union_check(const ExpMap& map, double R,
                                          const std::vector<cplx>& points,
                                          int max_steps) {
    if (max_steps < 1) throw DomainError("preimage_union_check: max_steps must be >= 1");
    PreimageEscapeReport rep;
    rep.threshold = R;
    rep.all_settled = true;
    for (const cplx& z : points) {
        cplx cur = z;
        int settle = cur.real() >= R ? 0 : -1;
        for (int n = 1; n <= max_steps; ++n) {
            cur = map.apply(cur);
            bool high = cur.real() >= R || is_overflow(cur);
            if (high) {
                if (settle < 0) settle = n;
            } else {
                settle = -1;
            }
            if (is_overflow(cur)) break;
        }
        rep.rows.push_back({z, settle});
        if (settle < 0) rep.all_settled = false;
        rep.max_settle_step = std::max(rep.max_settle_step, settle);
    }
    return rep;
}

}  // namespace gaugedyn
