#pragma once

#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "scv/formats.hpp"

namespace scv::test {

/// 4x4 fixture used throughout the oracle tests:
///   1 0 2 0
///   0 3 0 0
///   0 4 5 0
///   6 0 0 7
inline CooMatrix a4() {
    CooMatrix m;
    m.n_rows = 4;
    m.n_cols = 4;
    m.triplets = {{0, 0, 1.0}, {0, 2, 2.0}, {1, 1, 3.0}, {2, 1, 4.0},
                  {2, 2, 5.0}, {3, 0, 6.0}, {3, 3, 7.0}};
    return m;
}

/// Random sparse matrix with integer values in [1, 9], unique coordinates.
inline CooMatrix random_coo(std::mt19937_64& rng, Index max_dim = 32) {
    CooMatrix m;
    m.n_rows = static_cast<Index>(rng() % max_dim + 1);
    m.n_cols = static_cast<Index>(rng() % max_dim + 1);
    const std::uint64_t cells = static_cast<std::uint64_t>(m.n_rows) * m.n_cols;
    const std::uint64_t want = rng() % (cells + 1);
    std::set<std::pair<Index, Index>> seen;
    while (seen.size() < want) {
        const Index r = static_cast<Index>(rng() % m.n_rows);
        const Index c = static_cast<Index>(rng() % m.n_cols);
        if (seen.insert({r, c}).second)
            m.triplets.push_back(Triplet{r, c, static_cast<double>(rng() % 9 + 1)});
    }
    return m;
}

/// Random dense matrix with small integer values (exact arithmetic).
inline DenseMatrix random_dense(std::mt19937_64& rng, Index n_rows, Index n_cols) {
    DenseMatrix d(n_rows, n_cols);
    for (double& v : d.data) v = static_cast<double>(rng() % 17) - 8.0;
    return d;
}

/// Random matrix with dimensions up to max_dim and a log-uniform density in
/// [1e-4, 1e-1], the band the benchmark's graph classes live in.
inline CooMatrix random_sparse_coo(std::mt19937_64& rng, Index max_dim) {
    CooMatrix m;
    m.n_rows = static_cast<Index>(rng() % max_dim + 1);
    m.n_cols = static_cast<Index>(rng() % max_dim + 1);
    const double u = static_cast<double>(rng() % 1000) / 999.0;
    const double density = std::pow(10.0, -1.0 - 3.0 * u);
    const std::uint64_t cells = static_cast<std::uint64_t>(m.n_rows) * m.n_cols;
    const auto want = static_cast<std::uint64_t>(density * static_cast<double>(cells));
    std::set<std::pair<Index, Index>> seen;
    while (seen.size() < want) {
        const Index r = static_cast<Index>(rng() % m.n_rows);
        const Index c = static_cast<Index>(rng() % m.n_cols);
        if (seen.insert({r, c}).second)
            m.triplets.push_back(Triplet{r, c, static_cast<double>(rng() % 9 + 1)});
    }
    return m;
}

inline bool same_triplets(const CooMatrix& a, const CooMatrix& b) {
    if (a.n_rows != b.n_rows || a.n_cols != b.n_cols) return false;
    auto sa = sorted_triplets(a), sb = sorted_triplets(b);
    if (sa.size() != sb.size()) return false;
    for (std::size_t i = 0; i < sa.size(); ++i)
        if (sa[i].row != sb[i].row || sa[i].col != sb[i].col || sa[i].value != sb[i].value)
            return false;
    return true;
}

}  // namespace scv::test
