#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "scv/kernels.hpp"
#include "scv/schedule.hpp"
#include "scv/zorder.hpp"

namespace scv::test {

struct PropResult {
    std::uint64_t cases = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
    void fail(std::uint64_t case_id, const std::string& what) {
        if (failures.size() < 10) {
            std::ostringstream os;
            os << "case " << case_id << ": " << what;
            failures.push_back(os.str());
        }
    }
};

/// Conversion round trips plus structural invariants of the vector format.
inline PropResult prop_format_roundtrips(std::uint64_t seed, std::uint64_t cases) {
    PropResult res;
    std::mt19937_64 rng(seed);
    static const Index heights[] = {1, 2, 4, 8, 16};
    for (std::uint64_t i = 0; i < cases; ++i, ++res.cases) {
        // Every fourth case draws from the larger, density-banded population.
        const CooMatrix m = i % 4 == 3 ? random_sparse_coo(rng, 256) : random_coo(rng);
        if (!same_triplets(csr_to_coo(coo_to_csr(m)), m)) res.fail(i, "csr round trip");
        if (!same_triplets(csc_to_coo(coo_to_csc(m)), m)) res.fail(i, "csc round trip");
        const Index bs = static_cast<Index>(rng() % 5 + 1);
        const BcsrMatrix b = coo_to_bcsr(m, bs);
        if (!same_triplets(bcsr_to_coo(b), m)) res.fail(i, "bcsr round trip");
        if (b.stored_values() != b.n_blocks() * static_cast<std::size_t>(bs) * bs)
            res.fail(i, "bcsr block storage size");
        if (b.stored_values() < m.nnz()) res.fail(i, "bcsr stored below nnz");
        // Generator values are nonzero, so stored zeros are exactly the padding.
        const bool blocks_full =
            std::none_of(b.values.begin(), b.values.end(), [](double x) { return x == 0.0; });
        if ((b.stored_values() == m.nnz()) != blocks_full)
            res.fail(i, "bcsr padding-free iff all blocks full");
        const Index B = heights[rng() % 5];
        const Index W = static_cast<Index>(rng() % 5 + 1);
        const OrderKind ord = rng() % 2 ? OrderKind::ZMorton : OrderKind::RowMajor;
        const ScvMatrix v = coo_to_scv(m, B, W, ord);
        if (!same_triplets(scv_to_coo(v), m)) res.fail(i, "scv round trip");
        if (v.blk_ptr.size() != v.n_vectors() + 1) res.fail(i, "blk_ptr length");
        for (std::size_t k = 0; k + 1 < v.blk_ptr.size(); ++k)
            if (v.blk_ptr[k] > v.blk_ptr[k + 1]) res.fail(i, "blk_ptr monotone");
        if (!v.blk_ptr.empty() && v.blk_ptr.back() != v.nnz()) res.fail(i, "blk_ptr end");
        for (std::uint16_t id : v.blk_id)
            if (id >= B) res.fail(i, "blk_id bound");
        std::set<std::pair<Index, Index>> grid;
        for (const TilePos& tp : v.block_order) grid.insert({tp.block_row, tp.tile_col});
        if (grid.size() != v.block_order.size() ||
            grid.size() != static_cast<std::size_t>(v.n_block_rows()) * v.n_tile_cols())
            res.fail(i, "block_order bijection");
        // Full-height single-column vectors in row-major order degenerate to
        // column storage: same value order, same per-column counts.
        CooMatrix sq = m;
        sq.n_rows = std::bit_ceil(m.n_rows);
        const ScvMatrix dv = coo_to_scv(sq, sq.n_rows, 1, OrderKind::RowMajor);
        const CscMatrix dc = coo_to_csc(sq);
        if (dv.values != dc.values) res.fail(i, "degenerate scv value order vs csc");
        bool counts_ok = dv.blk_ptr.size() == dc.col_ptr.size();
        for (std::size_t k = 0; counts_ok && k + 1 < dv.blk_ptr.size(); ++k)
            counts_ok = dv.blk_ptr[k + 1] - dv.blk_ptr[k] == dc.col_ptr[k + 1] - dc.col_ptr[k];
        if (!counts_ok) res.fail(i, "degenerate scv per-column counts vs csc");
    }
    return res;
}

/// The z-morton walk covers every tile exactly once for arbitrary grids.
inline PropResult prop_zorder_bijection(std::uint64_t seed, std::uint64_t cases) {
    PropResult res;
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < cases; ++i, ++res.cases) {
        const Index rows = static_cast<Index>(rng() % 40 + 1);
        const Index cols = static_cast<Index>(rng() % 40 + 1);
        const Index group = static_cast<Index>(rng() % 8 + 1);
        const auto order = zmorton_tile_order(rows, cols, group);
        std::set<std::pair<Index, Index>> grid;
        for (const TilePos& tp : order) {
            if (tp.block_row >= rows || tp.tile_col >= cols) res.fail(i, "tile out of grid");
            grid.insert({tp.block_row, tp.tile_col});
        }
        if (grid.size() != order.size()) res.fail(i, "tile repeated");
        if (grid.size() != static_cast<std::size_t>(rows) * cols) res.fail(i, "tile missing");
        const Index zr = static_cast<Index>(rng() % 1000000);
        const Index zc = static_cast<Index>(rng() % 1000000);
        if (z_decode(z_encode(zr, zc)) != std::make_pair(zr, zc))
            res.fail(i, "z decode inverse");
        // Monotone nesting: an axis-aligned power-of-two quadrant owns one
        // contiguous range of codes, starting at its top-left corner.
        const Index side = Index{1} << (rng() % 5);
        const Index qr = static_cast<Index>(rng() % 64) * side;
        const Index qc = static_cast<Index>(rng() % 64) * side;
        std::set<std::uint64_t> codes;
        for (Index r = 0; r < side; ++r)
            for (Index c = 0; c < side; ++c) codes.insert(z_encode(qr + r, qc + c));
        const auto area = static_cast<std::uint64_t>(side) * side;
        if (codes.size() != area || *codes.begin() != z_encode(qr, qc) ||
            *codes.rbegin() - *codes.begin() + 1 != area)
            res.fail(i, "quadrant z range not contiguous");
    }
    return res;
}

/// Every schedule reproduces the triplet multiset and the reference product.
inline PropResult prop_schedule_agreement(std::uint64_t seed, std::uint64_t cases) {
    PropResult res;
    std::mt19937_64 rng(seed);
    static const Index heights[] = {1, 2, 4, 8};
    for (std::uint64_t i = 0; i < cases; ++i, ++res.cases) {
        // Every eighth case draws from the larger, density-banded population
        // with the full feature-width range.
        const bool big = i % 8 == 7;
        const CooMatrix m = big ? random_sparse_coo(rng, 512) : random_coo(rng, 24);
        const Index f = static_cast<Index>(big ? rng() % 64 + 1 : rng() % 8 + 1);
        const DenseMatrix z = random_dense(rng, m.n_cols, f);
        const DenseMatrix want = dense_spmm(m, z);
        const auto check = [&](const Schedule& s, const char* label) {
            CooMatrix back;
            back.n_rows = s.n_rows;
            back.n_cols = s.n_cols;
            for (const WorkItem& it : s.items)
                if (!it.padding) back.triplets.push_back(Triplet{it.a_row, it.a_col, it.a_value});
            if (!same_triplets(back, m)) res.fail(i, std::string(label) + " item multiset");
            if (!(execute_schedule(s, z) == want)) res.fail(i, std::string(label) + " product");
            if (s.group_ptr.size() != s.n_groups() + 1 || s.group_ptr.back() != s.items.size())
                res.fail(i, std::string(label) + " group_ptr");
        };
        check(csr_schedule(coo_to_csr(m)), "csr");
        check(csc_schedule(coo_to_csc(m)), "csc");
        const BcsrMatrix bm = coo_to_bcsr(m, static_cast<Index>(rng() % 4 + 1));
        const Schedule bsch = bcsr_schedule(bm);
        check(bsch, "bcsr");
        std::uint64_t pad = 0;
        for (const WorkItem& it : bsch.items) pad += it.padding ? 1 : 0;
        if (pad != bm.stored_values() - m.nnz()) res.fail(i, "bcsr padding count");
        const Index B = heights[rng() % 4];
        const Index W = static_cast<Index>(rng() % 4 + 1);
        const ScvMatrix sm =
            coo_to_scv(m, B, W, rng() % 2 ? OrderKind::ZMorton : OrderKind::RowMajor);
        const Schedule ss = scv_schedule(sm);
        check(ss, "scv");
        for (std::size_t g = 0; g < ss.n_groups(); ++g) {
            // A tile stays inside one block row (output span <= B rows) and one
            // aligned column window; each column is one contiguous run of items,
            // so a vector streams exactly one input row sequence.
            const Index br = ss.groups[g].block_row;
            Index window = 0;
            std::vector<Index> run_cols;
            for (std::uint64_t k = ss.group_ptr[g]; k < ss.group_ptr[g + 1]; ++k) {
                const WorkItem& it = ss.items[k];
                if (it.a_row / B != br) res.fail(i, "scv item outside its block row");
                if (k == ss.group_ptr[g]) window = it.a_col / W;
                else if (it.a_col / W != window) res.fail(i, "scv item outside its tile");
                if (run_cols.empty() || run_cols.back() != it.a_col)
                    run_cols.push_back(it.a_col);
            }
            if (run_cols.size() > W) res.fail(i, "more column runs than tile width");
            const std::set<Index> uniq(run_cols.begin(), run_cols.end());
            if (uniq.size() != run_cols.size()) res.fail(i, "column revisited within tile");
        }
        const ResidencyPolicy pol{static_cast<Index>(rng() % 6 + big * 16 + 1),
                                  static_cast<Index>(rng() % 6 + big * 16 + 1)};
        const Schedule mp = mp_schedule(m, pol);
        check(mp, "multipass");
        if (mp.stream_pos.size() != mp.items.size()) res.fail(i, "stream_pos size");
        for (std::size_t k = 0; k + 1 < mp.stream_pos.size(); ++k)
            if (mp.stream_pos[k] >= mp.stream_pos[k + 1]) res.fail(i, "stream_pos order");
        if (!mp.items.empty() && mp.scanned_items < mp.items.size())
            res.fail(i, "scan count below item count");
        if (m.nnz() > 0 && mp.n_passes < 1) res.fail(i, "pass count");
        // Symmetric inputs keep a symmetric normalization.
        CooMatrix sym;
        sym.n_rows = sym.n_cols = std::max(m.n_rows, m.n_cols);
        std::set<std::pair<Index, Index>> seen;
        for (const Triplet& t : m.triplets) {
            if (t.row != t.col && seen.insert({t.row, t.col}).second) {
                seen.insert({t.col, t.row});
                sym.triplets.push_back(Triplet{t.row, t.col, 1.0});
                sym.triplets.push_back(Triplet{t.col, t.row, 1.0});
            }
        }
        const DenseMatrix nd = to_dense(gcn_normalize(sym));
        for (Index r = 0; r < nd.n_rows && res.failures.size() < 10; ++r)
            for (Index c = 0; c < nd.n_cols; ++c)
                if (nd.at(r, c) != nd.at(c, r)) {
                    res.fail(i, "normalization symmetry");
                    break;
                }
    }
    return res;
}

}  // namespace scv::test
