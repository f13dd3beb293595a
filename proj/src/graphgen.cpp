#include "scv/graphgen.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace scv {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

double graph_density(const CooMatrix& m) {
    const double cells = static_cast<double>(m.n_rows) * static_cast<double>(m.n_cols);
    return cells == 0.0 ? 0.0 : static_cast<double>(m.nnz()) / cells;
}

SparsityClass classify_density(double density) {
    return density < kUltraSparseThreshold ? SparsityClass::UltraSparse
                                           : SparsityClass::HighlySparse;
}

GraphSpec make_graph(std::string name, CooMatrix adjacency, Index feature_dim,
                     std::uint64_t seed) {
    GraphSpec g;
    g.name = std::move(name);
    g.density = graph_density(adjacency);
    g.cls = classify_density(g.density);
    g.adjacency = std::move(adjacency);
    g.feature_dim = feature_dim;
    g.seed = seed;
    return g;
}

CooMatrix load_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::string text;
    std::size_t lineno = 0;

    if (!std::getline(in, text)) fail(path, 1, "empty file");
    lineno = 1;
    std::istringstream banner(lower(text));
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (tag != "%%matrixmarket" || object != "matrix")
        fail(path, 1, "not a Matrix Market matrix banner");
    if (format != "coordinate") fail(path, 1, "only coordinate format is supported");
    const bool pattern = field == "pattern";
    if (!pattern && field != "real" && field != "integer")
        fail(path, 1, "unsupported field type '" + field + "'");
    const bool symmetric = symmetry == "symmetric";
    if (!symmetric && symmetry != "general")
        fail(path, 1, "unsupported symmetry '" + symmetry + "'");

    CooMatrix m;
    std::uint64_t declared = 0, seen = 0;
    bool have_size = false;
    while (std::getline(in, text)) {
        lineno++;
        if (!text.empty() && text[0] == '%') continue;
        std::istringstream ls(text);
        if (!have_size) {
            std::int64_t rows, cols;
            if (!(ls >> rows >> cols >> declared) || rows < 0 || cols < 0)
                fail(path, lineno, "malformed size line");
            m.n_rows = static_cast<Index>(rows);
            m.n_cols = static_cast<Index>(cols);
            have_size = true;
            continue;
        }
        std::string rest;
        if (!(ls >> rest)) continue;  // blank line
        std::int64_t r, c;
        double v = 1.0;
        std::istringstream entry(text);
        if (!(entry >> r >> c)) fail(path, lineno, "malformed entry");
        if (!pattern && !(entry >> v)) fail(path, lineno, "entry missing its value");
        if (r < 1 || c < 1 || r > m.n_rows || c > m.n_cols)
            fail(path, lineno, "index out of range");
        seen++;
        const Index r0 = static_cast<Index>(r - 1), c0 = static_cast<Index>(c - 1);
        m.triplets.push_back({r0, c0, v});
        if (symmetric && r0 != c0) m.triplets.push_back({c0, r0, v});
    }
    if (!have_size) fail(path, lineno + 1, "missing size line");
    if (seen != declared)
        fail(path, lineno + 1,
             "entry count " + std::to_string(seen) + " does not match declared " +
                 std::to_string(declared));
    return m;
}

CooMatrix load_edge_list(const std::string& path, bool directed) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    CooMatrix m;
    std::set<std::pair<Index, Index>> seen;
    std::string text;
    std::size_t lineno = 0;
    Index max_id = 0;
    bool any = false;
    auto add = [&](Index s, Index d, double w) {
        if (seen.insert({s, d}).second) m.triplets.push_back({s, d, w});
    };
    while (std::getline(in, text)) {
        lineno++;
        const std::size_t hash = text.find('#');
        if (hash != std::string::npos) text.resize(hash);
        std::istringstream ls(text);
        std::int64_t s, d;
        if (!(ls >> s)) continue;  // blank or comment-only line
        if (!(ls >> d)) fail(path, lineno, "edge missing destination");
        if (s < 0 || d < 0) fail(path, lineno, "negative node id");
        double w = 1.0;
        std::string tail;
        if (ls >> w) {
            if (ls >> tail) fail(path, lineno, "trailing tokens after weight");
        } else {
            ls.clear();
            if (ls >> tail) fail(path, lineno, "malformed weight");
            w = 1.0;
        }
        const Index si = static_cast<Index>(s), di = static_cast<Index>(d);
        add(si, di, w);
        if (!directed && si != di) add(di, si, w);
        max_id = std::max({max_id, si, di});
        any = true;
    }
    m.n_rows = m.n_cols = any ? max_id + 1 : 0;
    return m;
}

CooMatrix gen_rmat(Index n, std::uint64_t nnz_target, double a, double b, double c, double d,
                   std::uint64_t seed) {
    if (n == 0 || !is_pow2(n)) throw std::invalid_argument("gen_rmat: n must be a power of two");
    const double sum = a + b + c + d;
    if (a < 0 || b < 0 || c < 0 || d < 0 || sum < 1.0 - 1e-9 || sum > 1.0 + 1e-9)
        throw std::invalid_argument("gen_rmat: quadrant probabilities must sum to one");
    if (nnz_target > static_cast<std::uint64_t>(n) * n)
        throw std::invalid_argument("gen_rmat: more nonzeros than cells");

    std::mt19937_64 rng(seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::uint32_t levels = 0;
    for (Index width = n; width > 1; width >>= 1) levels++;

    CooMatrix m;
    m.n_rows = m.n_cols = n;
    std::set<std::pair<Index, Index>> seen;
    std::uint64_t attempts = 0;
    const std::uint64_t attempt_cap = nnz_target * 1000 + 10000;
    while (seen.size() < nnz_target) {
        if (++attempts > attempt_cap)
            throw std::logic_error("gen_rmat: could not place distinct edges");
        Index row = 0, col = 0;
        for (std::uint32_t level = 0; level < levels; ++level) {
            const double u = uniform();
            row <<= 1;
            col <<= 1;
            if (u < a) {
            } else if (u < a + b) {
                col |= 1;
            } else if (u < a + b + c) {
                row |= 1;
            } else {
                row |= 1;
                col |= 1;
            }
        }
        if (seen.insert({row, col}).second) m.triplets.push_back({row, col, 1.0});
    }
    return m;
}

DenseMatrix gen_features(Index n, Index feature_dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    DenseMatrix z(n, feature_dim);
    for (double& v : z.data) v = static_cast<double>(rng() % 17) - 8.0;
    return z;
}

DenseMatrix const_features(Index n, Index feature_dim, double value) {
    DenseMatrix z(n, feature_dim);
    for (double& v : z.data) v = value;
    return z;
}

}  // namespace scv
