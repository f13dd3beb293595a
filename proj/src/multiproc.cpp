#include "scv/multiproc.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "scv/schedule.hpp"

namespace scv {

namespace {

std::uint64_t spread(const std::vector<std::uint64_t>& cuts,
                     const std::vector<std::uint64_t>& prefix) {
    std::uint64_t lo = ~std::uint64_t{0}, hi = 0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const std::uint64_t part = prefix[cuts[k + 1]] - prefix[cuts[k]];
        lo = std::min(lo, part);
        hi = std::max(hi, part);
    }
    return hi - lo;
}

}  // namespace

std::vector<Partition> partition(const ScvMatrix& m, Index n_proc) {
    if (n_proc == 0) throw std::invalid_argument("partition: zero processors");
    const std::vector<std::uint64_t>& prefix = m.blk_ptr;  // cumulative nnz per vector
    const std::size_t n_vecs = prefix.size() - 1;
    const std::uint64_t total = prefix.back();

    // Nearest boundary to each target k*total/n_proc, kept non-decreasing.
    std::vector<std::uint64_t> cuts(n_proc + 1, 0);
    cuts[n_proc] = n_vecs;
    for (Index k = 1; k < n_proc; ++k) {
        const double target = static_cast<double>(total) * k / n_proc;
        std::size_t best = cuts[k - 1];
        double best_d = -1.0;
        for (std::size_t b = cuts[k - 1]; b <= n_vecs; ++b) {
            const double d = std::abs(static_cast<double>(prefix[b]) - target);
            if (best_d < 0.0 || d < best_d) {
                best_d = d;
                best = b;
            }
            if (prefix[b] >= target && d <= best_d) break;  // past target: done
        }
        cuts[k] = best;
    }

    // Local improvement: shift single cuts one vector at a time while the
    // spread between the largest and smallest slice shrinks.
    bool moved = true;
    for (int rounds = 0; moved && rounds < 1000; ++rounds) {
        moved = false;
        for (Index k = 1; k < n_proc; ++k) {
            for (int dir : {-1, +1}) {
                std::vector<std::uint64_t> trial = cuts;
                if (dir < 0 && trial[k] > cuts[k - 1])
                    trial[k]--;
                else if (dir > 0 && trial[k] < cuts[k + 1])
                    trial[k]++;
                else
                    continue;
                if (spread(trial, prefix) < spread(cuts, prefix)) {
                    cuts = trial;
                    moved = true;
                }
            }
        }
    }

    std::vector<Partition> parts(n_proc);
    for (Index p = 0; p < n_proc; ++p) {
        parts[p].proc = p;
        parts[p].vec_begin = cuts[p];
        parts[p].vec_end = cuts[p + 1];
        parts[p].nnz = prefix[cuts[p + 1]] - prefix[cuts[p]];
    }
    return parts;
}

namespace {

/// Slice of the full column-vector schedule covering items [lo, hi).
Schedule slice_schedule(const Schedule& full, std::uint64_t lo, std::uint64_t hi) {
    Schedule s;
    s.kind = full.kind;
    s.order = full.order;
    s.n_rows = full.n_rows;
    s.n_cols = full.n_cols;
    s.block_size = full.block_size;
    s.tile_width = full.tile_width;
    s.items.assign(full.items.begin() + lo, full.items.begin() + hi);
    s.group_ptr.push_back(0);
    for (std::size_t g = 0; g < full.n_groups(); ++g) {
        const std::uint64_t g_lo = std::max<std::uint64_t>(full.group_ptr[g], lo);
        const std::uint64_t g_hi = std::min<std::uint64_t>(full.group_ptr[g + 1], hi);
        if (g_lo >= g_hi) continue;
        s.groups.push_back(full.groups[g]);  // whole-tile footprint even when split
        s.group_ptr.push_back(g_hi - lo);
    }
    s.n_passes = 1;
    s.scanned_items = s.items.size();
    return s;
}

struct TileWindow {
    std::uint64_t first = 0;
    std::uint64_t last = 0;
    std::vector<Index> rows;  // distinct output rows written, sorted
};

}  // namespace

MultiStats simulate_multi(const ScvMatrix& m, const DenseMatrix& z, const ProcessorConfig& cfg,
                          const CacheConfig& mem, Index n_proc) {
    MultiStats out;
    out.n_proc = n_proc;
    out.parts = partition(m, n_proc);
    const Schedule full = scv_schedule(m);

    AddressMap amap;
    amap.feature_dim = z.n_cols;
    amap.n_pe = cfg.n_pe;
    amap.value_bytes = cfg.value_bytes;

    out.output = DenseMatrix(m.n_rows, z.n_cols);
    std::uint64_t dram_bytes = 0;
    // tile id -> per-processor write window, insertion-ordered by processor.
    std::map<Index, std::vector<std::pair<Index, TileWindow>>> tiles;

    for (const Partition& p : out.parts) {
        const std::uint64_t lo = m.blk_ptr[p.vec_begin];
        const std::uint64_t hi = m.blk_ptr[p.vec_end];
        const Schedule sub = slice_schedule(full, lo, hi);
        AggregateResult r = run_aggregation(sub, z, cfg, mem, true);
        for (Index row = 0; row < m.n_rows; ++row)
            for (Index f = 0; f < z.n_cols; ++f) out.output.at(row, f) += r.output.at(row, f);
        dram_bytes += r.cache.dram_bytes(mem);
        out.max_proc_cycles = std::max(out.max_proc_cycles, r.stats.cycles);

        std::map<Index, TileWindow> mine;
        for (const OpEvent& e : r.events) {
            const Index row = static_cast<Index>(e.c_addr >> 32);
            const Index tile = row / m.vec_height;
            TileWindow& w = mine.try_emplace(tile, TileWindow{e.cycle, e.cycle, {}}).first->second;
            w.first = std::min(w.first, e.cycle);
            w.last = std::max(w.last, e.cycle);
            if (!std::binary_search(w.rows.begin(), w.rows.end(), row))
                w.rows.insert(std::lower_bound(w.rows.begin(), w.rows.end(), row), row);
        }
        for (auto& [tile, w] : mine) tiles[tile].emplace_back(p.proc, std::move(w));

        out.per_proc.push_back(r.stats);
        out.per_cache.push_back(r.cache);
    }

    // A processor whose write window on a tile overlaps an earlier writer's
    // window keeps a private buffer copy of the rows it wrote there; the
    // merge pass folds each buffered row back with one vector add per
    // feature segment, all through shared memory.
    const Index n_segs = z.n_cols == 0 ? 0 : amap.n_segs();
    for (auto& [tile, owners] : tiles) {
        std::stable_sort(owners.begin(), owners.end(),
                         [](const auto& a, const auto& b) { return a.second.first < b.second.first; });
        for (std::size_t k = 1; k < owners.size(); ++k) {
            bool overlaps = false;
            for (std::size_t j = 0; j < k && !overlaps; ++j)
                overlaps = owners[j].second.first <= owners[k].second.last &&
                           owners[k].second.first <= owners[j].second.last;
            if (overlaps) out.buffered_rows += owners[k].second.rows.size();
        }
    }
    out.merge_vector_ops = out.buffered_rows * n_segs;
    out.merge_cycles = ceil_div_u64(out.merge_vector_ops, cfg.n_vpe);
    out.merge_traffic_bytes = 3 * out.buffered_rows * amap.row_bytes();

    out.dram_bytes = dram_bytes;
    const std::uint64_t lines =
        ceil_div_u64(dram_bytes + out.merge_traffic_bytes, mem.line_bytes);
    out.dram_floor_cycles = lines * kDramLineServiceCycles;
    out.total_cycles = std::max(out.max_proc_cycles, out.dram_floor_cycles) + out.merge_cycles;
    return out;
}

std::vector<SpeedupPoint> speedup_curve(const ScvMatrix& m, const DenseMatrix& z,
                                        const ProcessorConfig& cfg, const CacheConfig& mem,
                                        const std::vector<Index>& proc_counts) {
    std::vector<SpeedupPoint> curve;
    if (proc_counts.empty()) return curve;
    const MultiStats base = simulate_multi(m, z, cfg, mem, 1);
    const double base_cycles = static_cast<double>(std::max<std::uint64_t>(base.total_cycles, 1));
    for (Index p : proc_counts) {
        const MultiStats r = simulate_multi(m, z, cfg, mem, p);
        SpeedupPoint pt;
        pt.n_proc = p;
        pt.speedup = base_cycles / static_cast<double>(std::max<std::uint64_t>(r.total_cycles, 1));
        const std::uint64_t no_merge_floor =
            ceil_div_u64(r.dram_bytes, mem.line_bytes) * kDramLineServiceCycles;
        const std::uint64_t ideal_cycles = std::max(r.max_proc_cycles, no_merge_floor);
        pt.ideal = base_cycles / static_cast<double>(std::max<std::uint64_t>(ideal_cycles, 1));
        curve.push_back(pt);
    }
    return curve;
}

}  // namespace scv
