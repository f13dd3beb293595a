#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <vector>

#include "scv/types.hpp"

namespace scv {

/// One access crossing from the processor's scratchpads toward lower memory.
struct MemAccess {
    std::uint64_t cycle = 0;
    std::uint64_t addr = 0;
    bool write = false;
    std::uint32_t size = 0;
};

/// Ordered access log; cycles are non-decreasing.
struct MemTrace {
    std::vector<MemAccess> accesses;

    void record(std::uint64_t cycle, std::uint64_t addr, bool write, std::uint32_t size) {
        accesses.push_back(MemAccess{cycle, addr, write, size});
    }
    std::size_t size() const { return accesses.size(); }
};

/// CSV lines `cycle,addr_hex,R|W,size` (addr in lowercase hex, no prefix).
void dump_trace_csv(const MemTrace& trace, std::ostream& out);

struct CacheConfig {
    std::uint64_t capacity_bytes = 2 * 1024 * 1024;
    std::uint32_t line_bytes = 64;
    std::uint32_t associativity = 8;  // 0 selects fully associative
    std::uint32_t hit_latency = 2;
    std::uint32_t dram_latency = 100;
};

struct CacheStats {
    std::uint64_t accesses = 0;
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;  // an access missing in any spanned line counts once
    std::uint64_t line_fills = 0;
    std::uint64_t writebacks = 0;

    /// (hits*hit + misses*dram) / accesses; hit_latency for an empty trace.
    double mean_access_time(const CacheConfig& cfg) const;
    /// Bytes moved between cache and DRAM: (fills + writebacks) * line size.
    std::uint64_t dram_bytes(const CacheConfig& cfg) const {
        return (line_fills + writebacks) * cfg.line_bytes;
    }
};

/// Set-associative LRU write-allocate write-back model.
class CacheModel {
public:
    explicit CacheModel(const CacheConfig& cfg);

    /// Touches every line the access spans. Returns true when all were present.
    bool access(std::uint64_t addr, std::uint32_t size, bool write);
    /// Writes back all dirty lines (counted in stats) and empties the cache.
    void flush();

    const CacheStats& stats() const { return stats_; }

private:
    struct Line {
        std::uint64_t tag = 0;
        bool valid = false;
        bool dirty = false;
        std::uint64_t stamp = 0;
    };

    CacheConfig cfg_;
    std::uint32_t ways_;
    std::uint64_t n_sets_;
    std::vector<Line> lines_;  // n_sets * ways
    std::uint64_t tick_ = 0;
    CacheStats stats_;
};

/// Replays a whole trace through a fresh model, final flush included.
CacheStats replay(const MemTrace& trace, const CacheConfig& cfg);

/// Disjoint byte regions per matrix role, row-major inside each region.
struct AddressMap {
    static constexpr std::uint64_t adj_base = 0x0;
    static constexpr std::uint64_t z_base = 0x40000000;
    static constexpr std::uint64_t ps_base = 0x80000000;
    static constexpr std::uint64_t buf_base = 0xC0000000;

    Index feature_dim = 0;
    Index n_pe = 64;
    Index value_bytes = 8;

    std::uint64_t adj_addr(std::uint64_t byte_offset) const { return adj_base + byte_offset; }
    std::uint64_t z_row_addr(Index row) const {
        return z_base + static_cast<std::uint64_t>(row) * feature_dim * value_bytes;
    }
    std::uint64_t ps_seg_addr(Index row, Index seg) const {
        return ps_base + (static_cast<std::uint64_t>(row) * feature_dim +
                          static_cast<std::uint64_t>(seg) * n_pe) *
                             value_bytes;
    }
    std::uint64_t buf_seg_addr(Index row, Index seg) const {
        return buf_base + (ps_seg_addr(row, seg) - ps_base);
    }
    /// Features and bytes covered by one segment (the last one may be short).
    Index seg_features(Index seg) const {
        const std::uint64_t start = static_cast<std::uint64_t>(seg) * n_pe;
        return static_cast<Index>(std::min<std::uint64_t>(n_pe, feature_dim - start));
    }
    std::uint32_t seg_bytes(Index seg) const { return seg_features(seg) * value_bytes; }
    std::uint32_t row_bytes() const { return feature_dim * value_bytes; }
    Index n_segs() const { return static_cast<Index>(ceil_div_u64(feature_dim, n_pe)); }
};

}  // namespace scv
