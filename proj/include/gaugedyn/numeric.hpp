#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gaugedyn {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based uniform in [0,1): value depends only on (seed, n), so any
// evaluation order or thread count reproduces the same stream.
inline double uniform01(std::uint64_t seed, std::uint64_t n) {
    return static_cast<double>(splitmix64(seed ^ splitmix64(n)) >> 11) * 0x1.0p-53;
}

// Thread count resolution: requested > 0 wins, then GAUGEDYN_THREADS, then
// hardware concurrency (min 1).
int resolve_threads(int requested);

// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per worker.
// Results must be written to per-index slots; reductions happen afterwards in
// index order so output is independent of the thread count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

// n points log-spaced from hi down to lo (descending), hi > lo > 0.
std::vector<double> log_spaced_desc(double hi, double lo, std::size_t n);

}  // namespace gaugedyn
