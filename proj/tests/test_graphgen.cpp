#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "scv/graphgen.hpp"

using namespace scv;

namespace {

/// Writes content to a throwaway file in the working directory and removes it
/// on destruction.
struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path = "graphgen_tmp_" + std::to_string(counter++) + ".txt";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

bool has_triplet(const CooMatrix& m, Index r, Index c, double v) {
    for (const Triplet& t : m.triplets)
        if (t.row == r && t.col == c && t.value == v) return true;
    return false;
}

}  // namespace

TEST_CASE("matrix market: single general entry converts to 0-based") {
    TempFile f("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 5.0\n");
    CooMatrix m = load_matrix_market(f.path);
    CHECK(m.n_rows == 1);
    CHECK(m.n_cols == 1);
    REQUIRE(m.nnz() == 1);
    CHECK(has_triplet(m, 0, 0, 5.0));
}

TEST_CASE("matrix market: symmetric off-diagonal expands to two triplets") {
    TempFile f("%%MatrixMarket matrix coordinate real symmetric\n% comment\n2 2 1\n2 1 3.5\n");
    CooMatrix m = load_matrix_market(f.path);
    REQUIRE(m.nnz() == 2);
    CHECK(has_triplet(m, 1, 0, 3.5));
    CHECK(has_triplet(m, 0, 1, 3.5));
}

TEST_CASE("matrix market: symmetric diagonal entry is not duplicated") {
    TempFile f("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1.0\n2 1 2.0\n");
    CooMatrix m = load_matrix_market(f.path);
    CHECK(m.nnz() == 3);
}

TEST_CASE("matrix market: pattern entries default to value one") {
    TempFile f("%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n3 3\n");
    CooMatrix m = load_matrix_market(f.path);
    REQUIRE(m.nnz() == 2);
    CHECK(has_triplet(m, 0, 1, 1.0));
    CHECK(has_triplet(m, 2, 2, 1.0));
}

TEST_CASE("matrix market: errors carry the offending line number") {
    TempFile bad_banner("%%NotMatrixMarket whatever\n1 1 1\n1 1 1.0\n");
    CHECK_THROWS_WITH_AS(load_matrix_market(bad_banner.path),
                         doctest::Contains(":1:"), std::runtime_error);

    TempFile bad_entry("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 oops 1.0\n");
    CHECK_THROWS_WITH_AS(load_matrix_market(bad_entry.path),
                         doctest::Contains(":3:"), std::runtime_error);

    TempFile out_of_range("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n");
    CHECK_THROWS_WITH_AS(load_matrix_market(out_of_range.path),
                         doctest::Contains("out of range"), std::runtime_error);

    TempFile missing_value("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1\n");
    CHECK_THROWS_AS(load_matrix_market(missing_value.path), std::runtime_error);

    TempFile wrong_count("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n");
    CHECK_THROWS_WITH_AS(load_matrix_market(wrong_count.path),
                         doctest::Contains("does not match declared"), std::runtime_error);

    CHECK_THROWS_AS(load_matrix_market("does_not_exist.mtx"), std::runtime_error);
}

TEST_CASE("edge list: undirected single edge symmetrizes") {
    TempFile f("0 1\n");
    CooMatrix m = load_edge_list(f.path, false);
    CHECK(m.n_rows == 2);
    REQUIRE(m.nnz() == 2);
    CHECK(has_triplet(m, 0, 1, 1.0));
    CHECK(has_triplet(m, 1, 0, 1.0));
}

TEST_CASE("edge list: duplicates collapse keeping the first value") {
    TempFile f("0 1 2.5\n0 1 9.0\n0 1\n");
    CooMatrix m = load_edge_list(f.path, true);
    REQUIRE(m.nnz() == 1);
    CHECK(has_triplet(m, 0, 1, 2.5));
}

TEST_CASE("edge list: directed weighted edge and comments") {
    TempFile f("# header comment\n2 3 0.5\n\n4 4\n");
    CooMatrix m = load_edge_list(f.path, true);
    CHECK(m.n_rows == 5);
    REQUIRE(m.nnz() == 2);
    CHECK(has_triplet(m, 2, 3, 0.5));
    CHECK(has_triplet(m, 4, 4, 1.0));
}

TEST_CASE("edge list: malformed lines are rejected") {
    TempFile missing("5\n");
    CHECK_THROWS_AS(load_edge_list(missing.path, true), std::runtime_error);
    TempFile negative("-1 2\n");
    CHECK_THROWS_AS(load_edge_list(negative.path, true), std::runtime_error);
    TempFile badw("1 2 x\n");
    CHECK_THROWS_AS(load_edge_list(badw.path, true), std::runtime_error);
}

TEST_CASE("sparsity class threshold splits the dataset families") {
    CHECK(classify_density(4.07e-5) == SparsityClass::UltraSparse);
    CHECK(classify_density(2.28e-4) == SparsityClass::HighlySparse);
    CHECK(classify_density(kUltraSparseThreshold) == SparsityClass::HighlySparse);
    CHECK(classify_density(kUltraSparseThreshold * 0.999) == SparsityClass::UltraSparse);

    CooMatrix m;
    m.n_rows = m.n_cols = 100;
    m.triplets.push_back({0, 0, 1.0});
    GraphSpec g = make_graph("tiny", m, 16, 3);
    CHECK(g.density == doctest::Approx(1e-4));
    CHECK(g.cls == SparsityClass::HighlySparse);
    CHECK(g.name == "tiny");
    CHECK(g.feature_dim == 16);
}

TEST_CASE("random graph generator: validation and degenerate cases") {
    CHECK(gen_rmat(16, 0).nnz() == 0);
    CHECK_THROWS_AS(gen_rmat(12, 5), std::invalid_argument);  // not a power of two
    CHECK_THROWS_AS(gen_rmat(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_rmat(4, 17), std::invalid_argument);  // more than n*n
    CHECK_THROWS_AS(gen_rmat(16, 4, 0.5, 0.5, 0.5, 0.5), std::invalid_argument);
    CooMatrix full = gen_rmat(2, 4, 0.25, 0.25, 0.25, 0.25, 9);
    CHECK(full.nnz() == 4);
}

TEST_CASE("random graph generator is deterministic and respects the target") {
    CooMatrix a = gen_rmat(256, 1000, kRmatA, kRmatB, kRmatC, kRmatD, 42);
    CooMatrix b = gen_rmat(256, 1000, kRmatA, kRmatB, kRmatC, kRmatD, 42);
    REQUIRE(a.nnz() == 1000);
    CHECK(scv::test::same_triplets(a, b));
    for (const Triplet& t : a.triplets) {
        CHECK(t.row < 256);
        CHECK(t.col < 256);
    }
    CooMatrix c = gen_rmat(256, 1000, kRmatA, kRmatB, kRmatC, kRmatD, 43);
    CHECK_FALSE(scv::test::same_triplets(a, c));
}

TEST_CASE("equal quadrant probabilities spread edges evenly") {
    const Index n = 64;
    CooMatrix m = gen_rmat(n, 2048, 0.25, 0.25, 0.25, 0.25, 7);
    std::uint64_t q[4] = {0, 0, 0, 0};
    for (const Triplet& t : m.triplets)
        q[(t.row >= n / 2 ? 2 : 0) + (t.col >= n / 2 ? 1 : 0)]++;
    // Binomial(2048, 1/4): mean 512, sigma ~19.6; allow 3.3 sigma.
    for (int k = 0; k < 4; ++k) {
        CAPTURE(k);
        CHECK(q[k] > 512 - 66);
        CHECK(q[k] < 512 + 66);
    }
}

TEST_CASE("default skew concentrates degree on a few rows") {
    const Index n = 16384;
    const std::uint64_t nnz = 2684;  // density 1e-5
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        CooMatrix m = gen_rmat(n, nnz, kRmatA, kRmatB, kRmatC, kRmatD, seed);
        std::map<Index, std::uint64_t> degree;
        for (const Triplet& t : m.triplets) degree[t.row]++;
        std::vector<std::uint64_t> degs;
        for (const auto& [row, d] : degree) degs.push_back(d);
        std::sort(degs.begin(), degs.end());
        const std::uint64_t top = degs.back();
        const std::uint64_t median = degs[degs.size() / 2];
        CAPTURE(seed);
        CHECK(top > 10 * median);
    }
}

TEST_CASE("feature generator is deterministic with bounded integer values") {
    DenseMatrix a = gen_features(10, 32, 5);
    DenseMatrix b = gen_features(10, 32, 5);
    CHECK(a == b);
    for (double v : a.data) {
        CHECK(v >= -8.0);
        CHECK(v <= 8.0);
        CHECK(v == static_cast<double>(static_cast<int>(v)));
    }
    CHECK_FALSE(gen_features(10, 32, 6) == a);

    DenseMatrix ones = const_features(4, 1);
    CHECK(ones.n_cols == 1);
    for (double v : ones.data) CHECK(v == 1.0);
}
