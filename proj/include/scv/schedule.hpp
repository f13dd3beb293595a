#pragma once

#include <cstdint>
#include <vector>

#include "scv/formats.hpp"

namespace scv {

/// One scalar-times-Z-row update: PS[a_row, :] += a_value * Z[a_col, :].
/// a_row and a_col are the adjacency row and column of the nonzero.
struct WorkItem {
    double a_value = 0.0;
    Index a_row = 0;
    Index a_col = 0;
    bool padding = false;  // BCSR-stored zero; no arithmetic effect
};

/// Per-group metadata. A group is the format's natural processing unit:
/// a CSR row, a CSC column, a BCSR block, an SCV tile, or a multipass pass.
struct GroupInfo {
    Index block_row = 0;  // output block-row (SCV/BCSR), row (CSR), col (CSC), pass id (MP)
    Index z_first = 0;    // first Z row the group touches as a unit
    Index z_count = 0;    // 0: Z rows charged per item; >0: whole tile footprint
};

/// Row transfer implied by a multipass residency decision.
enum class MpEventKind {
    ZLoad,        // a Z row admitted to its working set
    PsLoad,       // a previously evicted PS row read back
    PsWriteback,  // an evicted (or finally flushed) PS row written out
};

struct MpMemEvent {
    std::uint64_t visit_pos = 0;  // scan visit that triggered the transfer;
                                  // scanned_items marks the final flush
    MpEventKind kind = MpEventKind::ZLoad;
    Index row = 0;
};

/// Ordered work-item stream plus grouping. items[group_ptr[g] .. group_ptr[g+1])
/// belong to group g. The item multiset equals the adjacency nonzero multiset
/// exactly once (plus flagged padding for BCSR).
struct Schedule {
    FormatKind kind = FormatKind::Csr;
    OrderKind order = OrderKind::RowMajor;
    Index n_rows = 0;
    Index n_cols = 0;
    Index block_size = 0;  // SCV vec_height or BCSR block_size; 0 otherwise
    Index tile_width = 1;
    std::vector<WorkItem> items;
    std::vector<std::uint64_t> group_ptr;  // size n_groups + 1
    std::vector<GroupInfo> groups;
    /// Multipass only: adjacency stream position of each item, cumulative over
    /// all scan visits including skipped ones. Empty for other formats.
    std::vector<std::uint64_t> stream_pos;
    /// Multipass only: row transfers in decision order. A PS row's first-ever
    /// admission starts from fresh zeros and records no load.
    std::vector<MpMemEvent> mp_events;
    Index n_passes = 0;                   // multipass only
    std::uint64_t scanned_items = 0;      // multipass: total visits over all passes

    std::size_t n_groups() const { return groups.size(); }
    std::size_t real_items() const;
};

/// Row-major item order, one group per nonempty row.
Schedule csr_schedule(const CsrMatrix& m);

/// Column-major item order, one group per nonempty column.
Schedule csc_schedule(const CscMatrix& m);

/// Blocks in block-row-major order; every stored position becomes an item,
/// padding zeros flagged.
Schedule bcsr_schedule(const BcsrMatrix& m);

/// Tiles in block_order; within a tile, columns left-to-right; within a
/// vector, items by ascending intra-vector offset.
Schedule scv_schedule(const ScvMatrix& m);

/// Row capacities a multipass emission may keep resident at once.
struct ResidencyPolicy {
    Index z_capacity_rows = 0;
    Index ps_capacity_rows = 0;
};

/// Repeated row-major passes over the remaining nonzeros. An item is emitted
/// once its Z row and PS row are resident or loadable; a resident row may be
/// evicted only when no later visit of the current pass references it
/// (least-recently-used among such rows). Residency carries across passes.
/// Rejects capacities below one row per side; termination is then guaranteed.
Schedule mp_schedule(const CooMatrix& m, const ResidencyPolicy& residency);

}  // namespace scv
