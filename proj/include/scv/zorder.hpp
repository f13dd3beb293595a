#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "scv/types.hpp"

namespace scv {

/// Interleaves row and column bits with the column bit in the least-significant
/// position of each pair: (0,0)->0, (0,1)->1, (1,0)->2, (1,1)->3.
std::uint64_t z_encode(std::uint32_t row, std::uint32_t col);

/// Inverse of z_encode.
std::pair<std::uint32_t, std::uint32_t> z_decode(std::uint64_t code);

/// Tile positions of an n_block_rows x n_tile_cols grid with consecutive tiles
/// grouped 'group' at a time into square super-blocks, super-blocks visited in
/// z_encode order (top-left, top-right, bottom-left, bottom-right), tiles
/// left-to-right inside each super-block. Non-power-of-2 grids are handled by
/// enumerating the enclosing power-of-2 grid and skipping out-of-range codes.
std::vector<TilePos> zmorton_tile_order(Index n_block_rows, Index n_tile_cols, Index group);

/// Vector-column visit order for plain SCV (tile_width 1): super-blocks are
/// vec_height consecutive column vectors, i.e. square vec_height x vec_height.
std::vector<TilePos> scv_block_order(Index n_block_rows, Index n_vec_cols, Index vec_height);

std::vector<TilePos> row_major_tile_order(Index n_block_rows, Index n_tile_cols);

}  // namespace scv
