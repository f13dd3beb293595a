#include "scv/zorder.hpp"

#include <algorithm>
#include <stdexcept>

namespace scv {

std::uint64_t z_encode(std::uint32_t row, std::uint32_t col) {
    std::uint64_t code = 0;
    for (unsigned bit = 0; bit < 32; ++bit) {
        code |= static_cast<std::uint64_t>((col >> bit) & 1u) << (2 * bit);
        code |= static_cast<std::uint64_t>((row >> bit) & 1u) << (2 * bit + 1);
    }
    return code;
}

std::pair<std::uint32_t, std::uint32_t> z_decode(std::uint64_t code) {
    std::uint32_t row = 0, col = 0;
    for (unsigned bit = 0; bit < 32; ++bit) {
        col |= static_cast<std::uint32_t>((code >> (2 * bit)) & 1u) << bit;
        row |= static_cast<std::uint32_t>((code >> (2 * bit + 1)) & 1u) << bit;
    }
    return {row, col};
}

std::vector<TilePos> zmorton_tile_order(Index n_block_rows, Index n_tile_cols, Index group) {
    if (group == 0) throw std::invalid_argument("zmorton_tile_order: group must be >= 1");
    std::vector<TilePos> out;
    out.reserve(static_cast<std::size_t>(n_block_rows) * n_tile_cols);
    if (n_block_rows == 0 || n_tile_cols == 0) return out;

    const Index n_super_cols = static_cast<Index>(ceil_div_u64(n_tile_cols, group));
    std::uint64_t side = 1;
    while (side < n_block_rows || side < n_super_cols) side <<= 1;

    for (std::uint64_t code = 0; code < side * side; ++code) {
        auto [sr, sc] = z_decode(code);
        if (sr >= n_block_rows || sc >= n_super_cols) continue;
        for (Index j = 0; j < group; ++j) {
            const std::uint64_t tc = static_cast<std::uint64_t>(sc) * group + j;
            if (tc >= n_tile_cols) break;
            out.push_back(TilePos{sr, static_cast<Index>(tc)});
        }
    }
    return out;
}

std::vector<TilePos> scv_block_order(Index n_block_rows, Index n_vec_cols, Index vec_height) {
    return zmorton_tile_order(n_block_rows, n_vec_cols, vec_height);
}

std::vector<TilePos> row_major_tile_order(Index n_block_rows, Index n_tile_cols) {
    std::vector<TilePos> out;
    out.reserve(static_cast<std::size_t>(n_block_rows) * n_tile_cols);
    for (Index br = 0; br < n_block_rows; ++br)
        for (Index tc = 0; tc < n_tile_cols; ++tc) out.push_back(TilePos{br, tc});
    return out;
}

}  // namespace scv
