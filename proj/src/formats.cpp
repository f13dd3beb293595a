#include "scv/formats.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "scv/zorder.hpp"

namespace scv {
namespace {

std::string coord_str(Index r, Index c) {
    return "(" + std::to_string(r) + ", " + std::to_string(c) + ")";
}

/// Range-checks every triplet and rejects duplicates. Returns triplets sorted
/// by key(t); key must be injective over in-range coordinates.
template <typename KeyFn>
std::vector<Triplet> checked_sorted(const CooMatrix& m, KeyFn key) {
    std::vector<Triplet> ts = m.triplets;
    for (const Triplet& t : ts) {
        if (t.row >= m.n_rows || t.col >= m.n_cols)
            throw std::invalid_argument("coordinate out of range: " + coord_str(t.row, t.col));
    }
    std::sort(ts.begin(), ts.end(),
              [&](const Triplet& a, const Triplet& b) { return key(a) < key(b); });
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (ts[i - 1].row == ts[i].row && ts[i - 1].col == ts[i].col)
            throw std::invalid_argument("duplicate coordinate: " + coord_str(ts[i].row, ts[i].col));
    }
    return ts;
}

std::uint64_t row_major_key(const CooMatrix& m, const Triplet& t) {
    return static_cast<std::uint64_t>(t.row) * m.n_cols + t.col;
}

}  // namespace

void validate(const CooMatrix& m) {
    checked_sorted(m, [&](const Triplet& t) { return row_major_key(m, t); });
}

std::vector<Triplet> sorted_triplets(const CooMatrix& m) {
    return checked_sorted(m, [&](const Triplet& t) { return row_major_key(m, t); });
}

CsrMatrix coo_to_csr(const CooMatrix& m) {
    const std::vector<Triplet> ts = checked_sorted(m, [&](const Triplet& t) {
        return static_cast<std::uint64_t>(t.row) * m.n_cols + t.col;
    });
    CsrMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.values.reserve(ts.size());
    out.col_id.reserve(ts.size());
    out.row_ptr.assign(static_cast<std::size_t>(m.n_rows) + 1, 0);
    for (const Triplet& t : ts) out.row_ptr[t.row + 1]++;
    for (Index r = 0; r < m.n_rows; ++r) out.row_ptr[r + 1] += out.row_ptr[r];
    for (const Triplet& t : ts) {
        out.values.push_back(t.value);
        out.col_id.push_back(t.col);
    }
    return out;
}

CscMatrix coo_to_csc(const CooMatrix& m) {
    const std::vector<Triplet> ts = checked_sorted(m, [&](const Triplet& t) {
        return static_cast<std::uint64_t>(t.col) * m.n_rows + t.row;
    });
    CscMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.values.reserve(ts.size());
    out.row_id.reserve(ts.size());
    out.col_ptr.assign(static_cast<std::size_t>(m.n_cols) + 1, 0);
    for (const Triplet& t : ts) out.col_ptr[t.col + 1]++;
    for (Index c = 0; c < m.n_cols; ++c) out.col_ptr[c + 1] += out.col_ptr[c];
    for (const Triplet& t : ts) {
        out.values.push_back(t.value);
        out.row_id.push_back(t.row);
    }
    return out;
}

BcsrMatrix coo_to_bcsr(const CooMatrix& m, Index block_size) {
    if (block_size == 0) throw std::invalid_argument("coo_to_bcsr: block_size must be >= 1");
    const Index bs = block_size;
    const Index n_block_rows = static_cast<Index>(ceil_div_u64(m.n_rows, bs));
    const Index n_block_cols = static_cast<Index>(ceil_div_u64(m.n_cols, bs));
    // Sort by (block_row, block_col, local row, local col).
    const std::vector<Triplet> ts = checked_sorted(m, [&](const Triplet& t) {
        const std::uint64_t br = t.row / bs, bc = t.col / bs;
        return ((br * n_block_cols + bc) * bs + (t.row % bs)) * bs + (t.col % bs);
    });
    BcsrMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.block_size = bs;
    out.block_row_ptr.assign(static_cast<std::size_t>(n_block_rows) + 1, 0);
    std::size_t i = 0;
    for (Index br = 0; br < n_block_rows; ++br) {
        while (i < ts.size() && ts[i].row / bs == br) {
            const Index bc = ts[i].col / bs;
            out.block_col.push_back(bc);
            out.values.resize(out.values.size() + static_cast<std::size_t>(bs) * bs, 0.0);
            double* block = out.values.data() + out.values.size() - static_cast<std::size_t>(bs) * bs;
            while (i < ts.size() && ts[i].row / bs == br && ts[i].col / bs == bc) {
                block[(ts[i].row % bs) * bs + (ts[i].col % bs)] = ts[i].value;
                ++i;
            }
        }
        out.block_row_ptr[br + 1] = out.block_col.size();
    }
    return out;
}

std::size_t BcsrMatrix::nnz() const {
    std::size_t n = 0;
    for (double v : values)
        if (v != 0.0) ++n;
    return n;
}

ScvMatrix coo_to_scv(const CooMatrix& m, Index vec_height, Index tile_width, OrderKind order) {
    if (!is_pow2(vec_height))
        throw std::invalid_argument("coo_to_scv: vec_height must be a power of 2");
    if (tile_width == 0) throw std::invalid_argument("coo_to_scv: tile_width must be >= 1");
    const Index B = vec_height, W = tile_width;

    ScvMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.vec_height = B;
    out.tile_width = W;
    out.order = order;
    const Index n_block_rows = out.n_block_rows();
    const Index n_tile_cols = out.n_tile_cols();

    if (order == OrderKind::RowMajor) {
        out.block_order = row_major_tile_order(n_block_rows, n_tile_cols);
    } else {
        // Super-blocks span vec_height matrix columns regardless of tile_width.
        out.block_order = zmorton_tile_order(n_block_rows, n_tile_cols, std::max<Index>(1, B / W));
    }

    // Sort by (block_row, column, intra-vector offset); vectors are then
    // contiguous runs emitted in block_order.
    const std::vector<Triplet> ts = checked_sorted(m, [&](const Triplet& t) {
        return (static_cast<std::uint64_t>(t.row / B) * m.n_cols + t.col) * B + (t.row % B);
    });
    // Start offset of each vector column within ts, per (block_row, col).
    std::vector<std::uint64_t> vec_start(static_cast<std::size_t>(n_block_rows) * m.n_cols + 1, 0);
    for (const Triplet& t : ts)
        vec_start[static_cast<std::size_t>(t.row / B) * m.n_cols + t.col + 1]++;
    for (std::size_t v = 1; v < vec_start.size(); ++v) vec_start[v] += vec_start[v - 1];

    out.blk_ptr.reserve(out.n_vectors() + 1);
    out.blk_ptr.push_back(0);
    out.blk_id.reserve(ts.size());
    out.values.reserve(ts.size());
    for (const TilePos& tp : out.block_order) {
        for (Index j = 0; j < W; ++j) {
            const std::uint64_t col = static_cast<std::uint64_t>(tp.tile_col) * W + j;
            if (col < m.n_cols) {
                const std::size_t v = static_cast<std::size_t>(tp.block_row) * m.n_cols + col;
                for (std::uint64_t k = vec_start[v]; k < vec_start[v + 1]; ++k) {
                    out.blk_id.push_back(static_cast<std::uint16_t>(ts[k].row % B));
                    out.values.push_back(ts[k].value);
                }
            }
            out.blk_ptr.push_back(out.values.size());
        }
    }
    return out;
}

CooMatrix csr_to_coo(const CsrMatrix& m) {
    CooMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.triplets.reserve(m.nnz());
    for (Index r = 0; r < m.n_rows; ++r)
        for (std::uint64_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k)
            out.triplets.push_back(Triplet{r, m.col_id[k], m.values[k]});
    return out;
}

CooMatrix csc_to_coo(const CscMatrix& m) {
    CooMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.triplets.reserve(m.nnz());
    for (Index c = 0; c < m.n_cols; ++c)
        for (std::uint64_t k = m.col_ptr[c]; k < m.col_ptr[c + 1]; ++k)
            out.triplets.push_back(Triplet{m.row_id[k], c, m.values[k]});
    return out;
}

CooMatrix bcsr_to_coo(const BcsrMatrix& m) {
    CooMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    const Index bs = m.block_size;
    const Index n_block_rows = static_cast<Index>(ceil_div_u64(m.n_rows, bs));
    for (Index br = 0; br < n_block_rows; ++br) {
        for (std::uint64_t b = m.block_row_ptr[br]; b < m.block_row_ptr[br + 1]; ++b) {
            const double* block = m.values.data() + b * bs * bs;
            for (Index i = 0; i < bs; ++i)
                for (Index j = 0; j < bs; ++j)
                    if (block[i * bs + j] != 0.0)
                        out.triplets.push_back(Triplet{br * bs + i,
                                                       m.block_col[b] * bs + j,
                                                       block[i * bs + j]});
        }
    }
    return out;
}

CooMatrix scv_to_coo(const ScvMatrix& m) {
    CooMatrix out;
    out.n_rows = m.n_rows;
    out.n_cols = m.n_cols;
    out.triplets.reserve(m.nnz());
    std::size_t pos = 0;
    for (const TilePos& tp : m.block_order) {
        for (Index j = 0; j < m.tile_width; ++j, ++pos) {
            const std::uint64_t col = static_cast<std::uint64_t>(tp.tile_col) * m.tile_width + j;
            for (std::uint64_t k = m.blk_ptr[pos]; k < m.blk_ptr[pos + 1]; ++k)
                out.triplets.push_back(Triplet{tp.block_row * m.vec_height + m.blk_id[k],
                                               static_cast<Index>(col), m.values[k]});
        }
    }
    return out;
}

DenseMatrix to_dense(const CooMatrix& m) {
    DenseMatrix out(m.n_rows, m.n_cols);
    for (const Triplet& t : m.triplets) out.at(t.row, t.col) += t.value;
    return out;
}

DenseMatrix to_dense(const CsrMatrix& m) { return to_dense(csr_to_coo(m)); }
DenseMatrix to_dense(const CscMatrix& m) { return to_dense(csc_to_coo(m)); }
DenseMatrix to_dense(const BcsrMatrix& m) { return to_dense(bcsr_to_coo(m)); }
DenseMatrix to_dense(const ScvMatrix& m) { return to_dense(scv_to_coo(m)); }

}  // namespace scv
