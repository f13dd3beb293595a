#pragma once

#include <cstdint>
#include <vector>

#include "scv/formats.hpp"
#include "scv/memmodel.hpp"
#include "scv/simulator.hpp"

namespace scv {

/// One processor's contiguous slice of the column-vector traversal sequence.
struct Partition {
    Index proc = 0;
    std::size_t vec_begin = 0;  // index into the vector sequence (blk_ptr)
    std::size_t vec_end = 0;    // exclusive
    std::uint64_t nnz = 0;
};

/// Cuts the vector sequence into n_proc contiguous slices with near-equal
/// nonzero counts. Cuts land on vector boundaries, aimed at k*nnz/n_proc and
/// then locally adjusted to shrink the spread between the largest and
/// smallest slice. Slices may be empty when n_proc exceeds the number of
/// populated vectors.
std::vector<Partition> partition(const ScvMatrix& m, Index n_proc);

/// Cycles a shared memory line transfer occupies on the fixed-bandwidth DRAM
/// link; the per-processor caches scale with the processor count, the link
/// does not.
constexpr std::uint32_t kDramLineServiceCycles = 4;

struct MultiStats {
    Index n_proc = 1;
    std::vector<Partition> parts;
    std::vector<SimStats> per_proc;
    std::vector<CacheStats> per_cache;
    std::uint64_t buffered_rows = 0;      // output rows redirected to buffer copies
    std::uint64_t merge_vector_ops = 0;   // vector adds folding buffers back in
    std::uint64_t merge_cycles = 0;
    std::uint64_t merge_traffic_bytes = 0;
    std::uint64_t dram_bytes = 0;         // summed line traffic of the private caches
    std::uint64_t dram_floor_cycles = 0;  // shared-link service time for all traffic
    std::uint64_t max_proc_cycles = 0;
    std::uint64_t total_cycles = 0;       // max(slowest processor, link floor) + merge
    DenseMatrix output;                   // merged result, equal to the P=1 output
};

/// Runs each partition on its own processor with a private cache, detects
/// output tiles written by several processors in overlapping cycle windows,
/// redirects the later writers to buffer copies, and folds the buffers back
/// in a final merge pass of vector adds.
MultiStats simulate_multi(const ScvMatrix& m, const DenseMatrix& z, const ProcessorConfig& cfg,
                          const CacheConfig& mem, Index n_proc);

struct SpeedupPoint {
    Index n_proc = 1;
    double speedup = 1.0;  // single-processor cycles / this run's cycles
    double ideal = 1.0;    // same, with conflict buffering and merging costless
};

/// Speedup table over the given processor counts, normalized to the first
/// entry's single-processor run.
std::vector<SpeedupPoint> speedup_curve(const ScvMatrix& m, const DenseMatrix& z,
                                        const ProcessorConfig& cfg, const CacheConfig& mem,
                                        const std::vector<Index>& proc_counts);

}  // namespace scv
