#pragma once

#include <cstdint>
#include <string>

#include "scv/formats.hpp"
#include "scv/types.hpp"

namespace scv {

enum class SparsityClass { UltraSparse, HighlySparse };

/// Graphs below this edge density are ultra-sparse; at or above, highly
/// sparse. The boundary sits in the gap between the two dataset families the
/// benchmark models.
constexpr double kUltraSparseThreshold = 1e-4;

struct GraphSpec {
    std::string name;
    CooMatrix adjacency;
    Index feature_dim = 0;
    double density = 0.0;
    SparsityClass cls = SparsityClass::HighlySparse;
    std::uint64_t seed = 0;
};

double graph_density(const CooMatrix& m);
SparsityClass classify_density(double density);

/// Builds a GraphSpec around an adjacency matrix, computing its density and
/// sparsity class.
GraphSpec make_graph(std::string name, CooMatrix adjacency, Index feature_dim,
                     std::uint64_t seed = 0);

/// Reads a coordinate-format Matrix Market file: 1-based indices become
/// 0-based, a symmetric header expands off-diagonal entries, pattern files
/// get value 1.0. Malformed content raises std::runtime_error naming the line.
CooMatrix load_matrix_market(const std::string& path);

/// Reads whitespace-separated `src dst [weight]` lines ('#' starts a
/// comment). Repeated coordinates keep the first value; with directed=false
/// each edge is mirrored. Node count is one past the largest id.
CooMatrix load_edge_list(const std::string& path, bool directed);

constexpr double kRmatA = 0.57;
constexpr double kRmatB = 0.19;
constexpr double kRmatC = 0.19;
constexpr double kRmatD = 0.05;

/// Recursive-quadrant random graph: each edge descends log2(n) levels,
/// picking a quadrant per level with probabilities (a, b, c, d); duplicate
/// coordinates are redrawn whole. Deterministic per seed. All values are 1.0.
CooMatrix gen_rmat(Index n, std::uint64_t nnz_target, double a = kRmatA, double b = kRmatB,
                   double c = kRmatC, double d = kRmatD, std::uint64_t seed = 1);

/// Deterministic small-integer feature matrix with values in [-8, 8], for
/// exact cross-format equality checks.
DenseMatrix gen_features(Index n, Index feature_dim, std::uint64_t seed);

/// Feature matrix filled with one constant value.
DenseMatrix const_features(Index n, Index feature_dim, double value = 1.0);

}  // namespace scv
