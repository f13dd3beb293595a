#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace scv {

using Index = std::uint32_t;

/// One adjacency nonzero. Coordinates are 0-based.
struct Triplet {
    Index row = 0;
    Index col = 0;
    double value = 0.0;
};

enum class FormatKind : std::uint8_t {
    Coo = 0,
    Csr = 1,
    Csc = 2,
    Bcsr = 3,
    Scv = 4,
};

/// Visit order for SCV tile positions.
enum class OrderKind : std::uint8_t {
    RowMajor = 0,
    ZMorton = 1,
};

/// Tile position inside the (block_row, tile_col) grid.
struct TilePos {
    Index block_row = 0;
    Index tile_col = 0;

    bool operator==(const TilePos& o) const {
        return block_row == o.block_row && tile_col == o.tile_col;
    }
};

/// Row-major dense matrix of doubles.
struct DenseMatrix {
    Index n_rows = 0;
    Index n_cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(Index rows, Index cols)
        : n_rows(rows), n_cols(cols), data(static_cast<std::size_t>(rows) * cols, 0.0) {}

    double& at(Index r, Index c) { return data[static_cast<std::size_t>(r) * n_cols + c]; }
    double at(Index r, Index c) const { return data[static_cast<std::size_t>(r) * n_cols + c]; }

    double* row(Index r) { return data.data() + static_cast<std::size_t>(r) * n_cols; }
    const double* row(Index r) const { return data.data() + static_cast<std::size_t>(r) * n_cols; }

    bool operator==(const DenseMatrix& o) const {
        return n_rows == o.n_rows && n_cols == o.n_cols && data == o.data;
    }
};

inline std::uint64_t ceil_div_u64(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

inline bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace scv
