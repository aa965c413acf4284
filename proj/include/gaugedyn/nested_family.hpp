#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaugedyn/geometry.hpp"
#include "gaugedyn/koenigs.hpp"

namespace gaugedyn {

// Image-box charts: a level-k cell's box lives in the plane reached by k
// applications of the map. Boxes at scales past kLocalAnchorScale are stored
// as (anchor, offset) with the anchor's log-magnitude and argument kept
// exactly from the parent's coordinates.
inline constexpr double kLocalAnchorScale = 1e12;

struct Cell {
    std::vector<std::uint32_t> address;  // child ordinal per level, root = empty
    long long parent = -1;
    cplx anchor{0.0, 0.0};   // chart origin; 0 at directly representable scales
    double anchor_log_mag = 0;
    double anchor_arg = 0;
    cplx offset{0.0, 0.0};   // box center = anchor + offset
    double side = 0;
    long long ix = 0, iy = 0, band = 0;
    cplx point{0.0, 0.0};    // materialized preimage of the box center
    double log_deriv_chain = 0;  // sum of ln|E'| along the chase to the point

    cplx box_center() const { return anchor + offset; }
};

struct LevelInfo {
    std::size_t count = 0;       // cells kept
    std::size_t candidates = 0;  // valid boxes seen before the budget
    bool truncated = false;      // scan stopped early (budget >= parents mode)
    bool local_chart = false;    // boxes stored anchor-locally, strip skipped
};

struct NestedConfig {
    double margin = -1.0;     // packing grid slack; default r/64
    double pack_span = -1.0;  // packing window side; default max(66, c(r)*r*1.03)
    double coarse_c = -1.0;   // forwarded to build_packing
    double eps = 0.05;        // sandwich slack echoed into reports
    std::size_t level_budget = 600;
    int depth_max = 3;
    int threads = 0;
};

struct NestedFamily {
    ExpMap map;
    StripSpec strip;
    Box seed;
    double r = 0;
    int depth = 0;
    NestedConfig config;
    std::vector<std::vector<Cell>> levels;  // levels[0] = {root}
    std::vector<LevelInfo> info;            // info[k] describes levels[k]
};

// Builds depth generations of side-r boxes: each parent's image window is
// grid-packed and a candidate survives iff its center and corners pull back
// (same inverse branch, chosen toward the parent center) inside the parent
// box. Per-level budgets select a deterministic stride of survivors.
// Throws DepthOverflowError past representable chart scales,
// EmptyPackingError when a parent keeps no child.
NestedFamily construct_nested_family(const ExpMap& map, const StripSpec& strip,
                                     const Box& seed, double r, int depth,
                                     const NestedConfig& config = {});

struct NestingReport {
    int depth = 0;
    std::size_t containment_violations = 0;
    std::size_t diameter_violations = 0;
    // min over parents of the forward-sampled fraction landing in children
    std::vector<double> delta_per_level;  // index k-1 for level k
    std::vector<double> log_diam_max;     // max transported log-diameter per level
    std::vector<double> log_dk;           // certified ladder -ln E^k(2*beta)
    double min_postcritical_distance = 0;
    bool ok = false;
};

NestingReport verify_nesting(const NestedFamily& fam, std::size_t samples_per_cell = 256,
                             double tol = 1e-9, std::uint64_t seed = 0);

// Mass distribution splitting each parent's mass across children
// proportionally to |(E^k)'|^{-2} at the materialized centers; exact
// conservation per family by construction.
struct FrostmanMass {
    std::vector<std::vector<double>> mass;  // parallel to family levels
};

FrostmanMass frostman_mass(const NestedFamily& fam);

struct MassRatioRow {
    cplx point;
    double radius = 0;
    double mass = 0;
    double gauge = 0;
    double ratio = 0;
};

struct MassRatioScan {
    std::vector<MassRatioRow> rows;
    double max_ratio = 0;
};

// mu(D(z, r)) / h(r) over deepest-level atoms at the given radii.
MassRatioScan mass_ratio_scan(const NestedFamily& fam, const FrostmanMass& fm,
                              const GaugeFunction& h, const std::vector<double>& radii,
                              std::size_t max_points = 64);

// Rows "level,address,center_re,center_im,side" after a '#' config echo;
// addresses are dot-joined child ordinals, rows in construction order.
std::string export_family_csv(const NestedFamily& fam);

}  // namespace gaugedyn
