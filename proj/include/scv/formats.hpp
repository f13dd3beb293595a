#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scv/types.hpp"

namespace scv {

/// Unordered triplet list. May hold the same coordinate at most once.
struct CooMatrix {
    Index n_rows = 0;
    Index n_cols = 0;
    std::vector<Triplet> triplets;

    std::size_t nnz() const { return triplets.size(); }
};

struct CsrMatrix {
    Index n_rows = 0;
    Index n_cols = 0;
    std::vector<double> values;
    std::vector<Index> col_id;
    std::vector<std::uint64_t> row_ptr;  // size n_rows + 1

    std::size_t nnz() const { return values.size(); }
};

struct CscMatrix {
    Index n_rows = 0;
    Index n_cols = 0;
    std::vector<double> values;
    std::vector<Index> row_id;
    std::vector<std::uint64_t> col_ptr;  // size n_cols + 1

    std::size_t nnz() const { return values.size(); }
};

/// Dense block-size x block-size blocks, stored row-major within each block,
/// blocks in block-row-major order. Absent positions hold exact zero.
struct BcsrMatrix {
    Index n_rows = 0;
    Index n_cols = 0;
    Index block_size = 0;
    std::vector<double> values;  // n_blocks * block_size * block_size
    std::vector<Index> block_col;
    std::vector<std::uint64_t> block_row_ptr;  // size n_block_rows + 1

    std::size_t n_blocks() const { return block_col.size(); }
    std::size_t stored_values() const { return values.size(); }
    std::size_t nnz() const;  // count of nonzero stored values
};

/// Sparse compressed vectors: fixed-height column vectors grouped into tiles of
/// tile_width columns. block_order is a bijection over the full tile grid; every
/// vector position (tile position * tile_width + column offset) owns one blk_ptr
/// entry, empty vectors included, with one trailing end offset.
struct ScvMatrix {
    Index n_rows = 0;
    Index n_cols = 0;
    Index vec_height = 0;  // power of 2
    Index tile_width = 1;
    OrderKind order = OrderKind::RowMajor;
    std::vector<TilePos> block_order;
    std::vector<std::uint64_t> blk_ptr;
    std::vector<std::uint16_t> blk_id;  // intra-vector row offsets, < vec_height
    std::vector<double> values;

    std::size_t nnz() const { return values.size(); }
    Index n_block_rows() const { return static_cast<Index>(ceil_div_u64(n_rows, vec_height)); }
    Index n_tile_cols() const { return static_cast<Index>(ceil_div_u64(n_cols, tile_width)); }
    std::size_t n_vectors() const {
        return static_cast<std::size_t>(n_block_rows()) * n_tile_cols() * tile_width;
    }
};

/// Throws std::invalid_argument on out-of-range coordinates or duplicates.
void validate(const CooMatrix& m);

CsrMatrix coo_to_csr(const CooMatrix& m);
CscMatrix coo_to_csc(const CooMatrix& m);
BcsrMatrix coo_to_bcsr(const CooMatrix& m, Index block_size);
ScvMatrix coo_to_scv(const CooMatrix& m, Index vec_height, Index tile_width = 1,
                     OrderKind order = OrderKind::RowMajor);

CooMatrix csr_to_coo(const CsrMatrix& m);
CooMatrix csc_to_coo(const CscMatrix& m);
CooMatrix bcsr_to_coo(const BcsrMatrix& m);  // drops padding zeros
CooMatrix scv_to_coo(const ScvMatrix& m);

DenseMatrix to_dense(const CooMatrix& m);
DenseMatrix to_dense(const CsrMatrix& m);
DenseMatrix to_dense(const CscMatrix& m);
DenseMatrix to_dense(const BcsrMatrix& m);
DenseMatrix to_dense(const ScvMatrix& m);

/// Triplets sorted by (row, col). Canonical order for comparisons.
std::vector<Triplet> sorted_triplets(const CooMatrix& m);

}  // namespace scv
