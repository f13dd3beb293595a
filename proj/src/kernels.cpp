#include "scv/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scv {

DenseMatrix dense_spmm(const CooMatrix& a, const DenseMatrix& z) {
    if (a.n_cols != z.n_rows) throw std::invalid_argument("dense_spmm: dimension mismatch");
    validate(a);
    DenseMatrix ps(a.n_rows, z.n_cols);
    for (const Triplet& t : a.triplets) {
        double* out = ps.row(t.row);
        const double* in = z.row(t.col);
        for (Index f = 0; f < z.n_cols; ++f) out[f] += t.value * in[f];
    }
    return ps;
}

void execute_schedule(const Schedule& s, const DenseMatrix& z, DenseMatrix& ps) {
    if (s.n_cols != z.n_rows) throw std::invalid_argument("execute_schedule: Z row mismatch");
    if (ps.n_rows != s.n_rows || ps.n_cols != z.n_cols)
        throw std::invalid_argument("execute_schedule: PS shape mismatch");
    for (const WorkItem& it : s.items) {
        if (it.padding) continue;
        double* out = ps.row(it.a_row);
        const double* in = z.row(it.a_col);
        for (Index f = 0; f < z.n_cols; ++f) out[f] += it.a_value * in[f];
    }
}

DenseMatrix execute_schedule(const Schedule& s, const DenseMatrix& z) {
    DenseMatrix ps(s.n_rows, z.n_cols);
    execute_schedule(s, z, ps);
    return ps;
}

DenseMatrix combination(const ScvMatrix& h, const DenseMatrix& w) {
    if (h.n_cols != w.n_rows) throw std::invalid_argument("combination: dimension mismatch");
    DenseMatrix out(h.n_rows, w.n_cols);
    const Index B = h.vec_height, W = h.tile_width;
    std::size_t pos = 0;
    for (const TilePos& tp : h.block_order) {
        for (Index j = 0; j < W; ++j, ++pos) {
            const std::uint64_t col = static_cast<std::uint64_t>(tp.tile_col) * W + j;
            for (std::uint64_t k = h.blk_ptr[pos]; k < h.blk_ptr[pos + 1]; ++k) {
                double* o = out.row(tp.block_row * B + h.blk_id[k]);
                const double* in = w.row(static_cast<Index>(col));
                const double v = h.values[k];
                for (Index f = 0; f < w.n_cols; ++f) o[f] += v * in[f];
            }
        }
    }
    return out;
}

CooMatrix gcn_normalize(const CooMatrix& a) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("gcn_normalize: matrix must be square");
    validate(a);
    CooMatrix out;
    out.n_rows = a.n_rows;
    out.n_cols = a.n_cols;
    out.triplets = a.triplets;
    std::vector<char> has_diag(a.n_rows, 0);
    for (Triplet& t : out.triplets)
        if (t.row == t.col) {
            t.value += 1.0;
            has_diag[t.row] = 1;
        }
    for (Index i = 0; i < a.n_rows; ++i)
        if (!has_diag[i]) out.triplets.push_back(Triplet{i, i, 1.0});
    std::vector<std::uint64_t> deg(a.n_rows, 0);
    for (const Triplet& t : out.triplets) deg[t.row]++;
    for (Triplet& t : out.triplets)
        t.value /= std::sqrt(static_cast<double>(deg[t.row]) * static_cast<double>(deg[t.col]));
    std::sort(out.triplets.begin(), out.triplets.end(), [](const Triplet& x, const Triplet& y) {
        return x.row != y.row ? x.row < y.row : x.col < y.col;
    });
    return out;
}

void relu(DenseMatrix& m) {
    for (double& v : m.data)
        if (v < 0.0) v = 0.0;
}

}  // namespace scv
