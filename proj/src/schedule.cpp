#include "scv/schedule.hpp"

#include <algorithm>
#include <list>
#include <stdexcept>
#include <unordered_map>

namespace scv {

std::size_t Schedule::real_items() const {
    std::size_t n = 0;
    for (const WorkItem& it : items)
        if (!it.padding) ++n;
    return n;
}

Schedule csr_schedule(const CsrMatrix& m) {
    Schedule s;
    s.kind = FormatKind::Csr;
    s.n_rows = m.n_rows;
    s.n_cols = m.n_cols;
    s.items.reserve(m.nnz());
    s.group_ptr.push_back(0);
    for (Index r = 0; r < m.n_rows; ++r) {
        if (m.row_ptr[r] == m.row_ptr[r + 1]) continue;
        for (std::uint64_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k)
            s.items.push_back(WorkItem{m.values[k], r, m.col_id[k], false});
        s.groups.push_back(GroupInfo{r, 0, 0});
        s.group_ptr.push_back(s.items.size());
    }
    return s;
}

Schedule csc_schedule(const CscMatrix& m) {
    Schedule s;
    s.kind = FormatKind::Csc;
    s.n_rows = m.n_rows;
    s.n_cols = m.n_cols;
    s.items.reserve(m.nnz());
    s.group_ptr.push_back(0);
    for (Index c = 0; c < m.n_cols; ++c) {
        if (m.col_ptr[c] == m.col_ptr[c + 1]) continue;
        for (std::uint64_t k = m.col_ptr[c]; k < m.col_ptr[c + 1]; ++k)
            s.items.push_back(WorkItem{m.values[k], m.row_id[k], c, false});
        s.groups.push_back(GroupInfo{c, c, 1});
        s.group_ptr.push_back(s.items.size());
    }
    return s;
}

Schedule bcsr_schedule(const BcsrMatrix& m) {
    Schedule s;
    s.kind = FormatKind::Bcsr;
    s.n_rows = m.n_rows;
    s.n_cols = m.n_cols;
    s.block_size = m.block_size;
    const Index bs = m.block_size;
    const Index n_block_rows = static_cast<Index>(ceil_div_u64(m.n_rows, bs));
    s.items.reserve(m.stored_values());
    s.group_ptr.push_back(0);
    for (Index br = 0; br < n_block_rows; ++br) {
        for (std::uint64_t b = m.block_row_ptr[br]; b < m.block_row_ptr[br + 1]; ++b) {
            const double* block = m.values.data() + b * bs * bs;
            const Index bc = m.block_col[b];
            for (Index i = 0; i < bs; ++i)
                for (Index j = 0; j < bs; ++j) {
                    const double v = block[i * bs + j];
                    s.items.push_back(WorkItem{v, br * bs + i, bc * bs + j, v == 0.0});
                }
            s.groups.push_back(GroupInfo{br, bc * bs, bs});
            s.group_ptr.push_back(s.items.size());
        }
    }
    return s;
}

Schedule scv_schedule(const ScvMatrix& m) {
    Schedule s;
    s.kind = FormatKind::Scv;
    s.order = m.order;
    s.n_rows = m.n_rows;
    s.n_cols = m.n_cols;
    s.block_size = m.vec_height;
    s.tile_width = m.tile_width;
    const Index B = m.vec_height, W = m.tile_width;
    s.items.reserve(m.nnz());
    s.group_ptr.push_back(0);
    std::size_t pos = 0;
    for (const TilePos& tp : m.block_order) {
        const std::size_t tile_begin = s.items.size();
        for (Index j = 0; j < W; ++j, ++pos) {
            const std::uint64_t col = static_cast<std::uint64_t>(tp.tile_col) * W + j;
            for (std::uint64_t k = m.blk_ptr[pos]; k < m.blk_ptr[pos + 1]; ++k)
                s.items.push_back(WorkItem{m.values[k], tp.block_row * B + m.blk_id[k],
                                           static_cast<Index>(col), false});
        }
        if (s.items.size() == tile_begin) continue;  // empty tile: no group, no Z charge
        const Index z_first = tp.tile_col * W;
        const Index z_count = static_cast<Index>(
            std::min<std::uint64_t>(W, m.n_cols - static_cast<std::uint64_t>(z_first)));
        s.groups.push_back(GroupInfo{tp.block_row, z_first, z_count});
        s.group_ptr.push_back(s.items.size());
    }
    return s;
}

namespace {

/// LRU set of row ids with future-reference-aware eviction.
class RowSet {
public:
    explicit RowSet(Index capacity) : capacity_(capacity) {}

    bool resident(Index row) const { return pos_.count(row) != 0; }

    void touch(Index row) {
        auto it = pos_.find(row);
        lru_.splice(lru_.end(), lru_, it->second);
    }

    struct LoadResult {
        bool loaded = false;
        bool evicted = false;
        Index victim = 0;
    };

    /// Admits row, evicting the least-recently-used row with no remaining
    /// references this pass if full. loaded is false when nothing is evictable.
    LoadResult load(Index row, const std::vector<std::uint32_t>& future_refs) {
        if (pos_.size() < capacity_) {
            lru_.push_back(row);
            pos_[row] = std::prev(lru_.end());
            return LoadResult{true, false, 0};
        }
        for (auto it = lru_.begin(); it != lru_.end(); ++it) {
            if (future_refs[*it] == 0) {
                const Index victim = *it;
                pos_.erase(victim);
                lru_.erase(it);
                lru_.push_back(row);
                pos_[row] = std::prev(lru_.end());
                return LoadResult{true, true, victim};
            }
        }
        return LoadResult{false, false, 0};
    }

    /// Resident rows, least recently used first.
    const std::list<Index>& rows() const { return lru_; }

private:
    Index capacity_;
    std::list<Index> lru_;
    std::unordered_map<Index, std::list<Index>::iterator> pos_;
};

}  // namespace

Schedule mp_schedule(const CooMatrix& m, const ResidencyPolicy& residency) {
    if (residency.z_capacity_rows < 1 || residency.ps_capacity_rows < 1)
        throw std::invalid_argument("mp_schedule: capacities below one row cannot terminate");

    std::vector<Triplet> remaining = sorted_triplets(m);
    Schedule s;
    s.kind = FormatKind::Coo;
    s.n_rows = m.n_rows;
    s.n_cols = m.n_cols;
    s.items.reserve(remaining.size());
    s.stream_pos.reserve(remaining.size());
    s.group_ptr.push_back(0);

    RowSet z_set(residency.z_capacity_rows);
    RowSet ps_set(residency.ps_capacity_rows);
    std::vector<std::uint32_t> z_refs(m.n_cols, 0), ps_refs(m.n_rows, 0);
    std::vector<bool> ps_touched(m.n_rows, false);
    std::uint64_t scan_counter = 0;

    while (!remaining.empty()) {
        for (const Triplet& t : remaining) {
            z_refs[t.col]++;
            ps_refs[t.row]++;
        }
        std::vector<Triplet> deferred;
        std::size_t emitted = 0;
        for (const Triplet& t : remaining) {
            // The current visit no longer counts as a future reference.
            z_refs[t.col]--;
            ps_refs[t.row]--;
            const std::uint64_t visit = scan_counter++;
            bool ok = true;
            if (z_set.resident(t.col)) {
                z_set.touch(t.col);
            } else {
                const RowSet::LoadResult lr = z_set.load(t.col, z_refs);
                ok = lr.loaded;
                if (lr.loaded)
                    s.mp_events.push_back(MpMemEvent{visit, MpEventKind::ZLoad, t.col});
            }
            if (ok) {
                if (ps_set.resident(t.row)) {
                    ps_set.touch(t.row);
                } else {
                    const RowSet::LoadResult lr = ps_set.load(t.row, ps_refs);
                    ok = lr.loaded;
                    if (lr.loaded) {
                        if (lr.evicted)
                            s.mp_events.push_back(
                                MpMemEvent{visit, MpEventKind::PsWriteback, lr.victim});
                        if (ps_touched[t.row])
                            s.mp_events.push_back(MpMemEvent{visit, MpEventKind::PsLoad, t.row});
                        ps_touched[t.row] = true;
                    }
                }
            }
            if (ok) {
                s.items.push_back(WorkItem{t.value, t.row, t.col, false});
                s.stream_pos.push_back(visit);
                ++emitted;
            } else {
                deferred.push_back(t);
            }
        }
        if (emitted == 0) throw std::logic_error("mp_schedule: pass made no progress");
        s.groups.push_back(GroupInfo{s.n_passes, 0, 0});
        s.group_ptr.push_back(s.items.size());
        s.n_passes++;
        remaining.swap(deferred);
    }
    s.scanned_items = scan_counter;
    for (Index row : ps_set.rows())
        s.mp_events.push_back(MpMemEvent{scan_counter, MpEventKind::PsWriteback, row});
    return s;
}

}  // namespace scv
