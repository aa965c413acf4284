#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaugedyn/geometry.hpp"
#include "gaugedyn/koenigs.hpp"

namespace gaugedyn {

enum class CellLabel : std::uint8_t { Fatou = 0, JuliaCandidate = 1, Undecided = 2 };
enum class SampleMode { Center, FivePoint };
enum class Trend { Increasing, Decreasing, Flat, Mixed };

const char* trend_name(Trend t);

struct ClassifyParams {
    int max_steps = 256;
    double escape_re = -1.0;  // <= 0: map default max(50, 2*beta)
    SampleMode mode = SampleMode::FivePoint;
    int threads = 0;  // <= 0: GAUGEDYN_THREADS, then hardware
};

struct GridClassification {
    Box region;  // axis-aligned
    std::size_t nx = 0, ny = 0;
    double resolution = 0;  // cell side = region.side / nx
    std::vector<CellLabel> labels;  // row-major, iy*nx + ix
    ClassifyParams params;

    std::size_t non_fatou_count() const;
    cplx cell_center(std::size_t ix, std::size_t iy) const;
};

// Labels an nx-by-ny grid of square cells over the region. A cell is Fatou
// only if every sampled point (center, or center plus corners) is attracted;
// JuliaCandidate if any sample reaches the escape threshold; else Undecided.
// BudgetError past 1e8 cells.
GridClassification classify_grid(const ExpMap& map, const Box& region,
                                 double resolution, const ClassifyParams& p = {});

// Splits every cell into factor^2 children (dropping children fully outside
// the region): Fatou cells pass the label down without re-evaluation, all
// other cells are classified afresh, with max_steps > 0 overriding the budget.
GridClassification refine(const ExpMap& map, const GridClassification& cls,
                          int factor = 2, int max_steps = -1);

// (JuliaCandidate + Undecided count) * h(sqrt(2) * resolution).
double gauged_sum(const GridClassification& cls, const GaugeFunction& h);

struct ProbeLevel {
    double resolution = 0;
    std::size_t non_fatou = 0;
    double gauged_sum = 0;
};

struct DichotomyReport {
    double gamma = 0;
    std::vector<ProbeLevel> rows;
    double slope = 0;  // LS slope of ln(gauged sum) over the tail levels
    Trend trend = Trend::Flat;
};

struct ProbeConfig {
    double res0 = 0.2;
    int levels = 6;
    int factor = 2;
    ClassifyParams classify;
};

// Classifies once, refines levels-1 times, then reports per-gamma gauged
// sums and the trend of their tail (last max(3, levels-2) levels):
// Increasing above +0.05, Decreasing below -0.05, otherwise Flat, or Mixed
// when the tail increments change sign.
std::vector<DichotomyReport> dichotomy_probe(const ExpMap& map, double mu_gauge,
                                             const std::vector<double>& gammas,
                                             const Box& region,
                                             const ProbeConfig& cfg);

// CSV rows "level,resolution,non_fatou_count,gauged_sum,trend" after a '#'
// config echo; numbers print in shortest round-trip form.
std::string probe_csv(const ExpMap& map, double mu_gauge, const Box& region,
                      const ProbeConfig& cfg, const DichotomyReport& rep);

struct PreimageEscapeRow {
    cplx point;
    int settle_step = -1;  // least n with Re >= R from n on (within budget)
};

struct PreimageEscapeReport {
    double threshold = 0;
    std::vector<PreimageEscapeRow> rows;
    int max_settle_step = -1;
    bool all_settled = false;
};

// For each point, the least n such that every later iterate (within the step
// budget) keeps Re >= R; -1 when the orbit never settles in budget.
PreimageEscapeReport preimage_union_check(const ExpMap& map, double R,
                                          const std::vector<cplx>& points,
                                          int max_steps = 64);

}  // namespace gaugedyn
