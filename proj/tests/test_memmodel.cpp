#include <random>
#include <sstream>

#include "doctest.h"
#include "scv/memmodel.hpp"

using namespace scv;

namespace {

CacheConfig tiny(std::uint64_t capacity, std::uint32_t assoc) {
    CacheConfig cfg;
    cfg.capacity_bytes = capacity;
    cfg.line_bytes = 64;
    cfg.associativity = assoc;
    return cfg;
}

}  // namespace

TEST_CASE("repeated access to one address misses once then hits") {
    CacheModel model(CacheConfig{});
    for (int i = 0; i < 100; ++i) model.access(0x1234, 8, false);
    const CacheStats& s = model.stats();
    CHECK(s.accesses == 100);
    CHECK(s.misses == 1);
    CHECK(s.hits == 99);
    CHECK(s.line_fills == 1);
    CHECK(s.writebacks == 0);
    CHECK(s.mean_access_time(CacheConfig{}) == doctest::Approx((99.0 * 2 + 100.0) / 100.0));
}

TEST_CASE("stream twice the capacity thrashes on the second pass too") {
    // 16 lines fully associative; the stream touches 32 distinct lines, so LRU
    // evicts every line before its reuse and both passes miss throughout.
    CacheConfig cfg = tiny(1024, 0);
    CacheModel model(cfg);
    for (int pass = 0; pass < 2; ++pass)
        for (std::uint64_t line = 0; line < 32; ++line) model.access(line * 64, 8, false);
    CHECK(model.stats().accesses == 64);
    CHECK(model.stats().misses == 64);
    CHECK(model.stats().hits == 0);
}

TEST_CASE("empty trace replays to hit-latency mean access time") {
    CacheStats s = replay(MemTrace{}, CacheConfig{});
    CHECK(s.accesses == 0);
    CHECK(s.mean_access_time(CacheConfig{}) == doctest::Approx(2.0));
    CHECK(s.dram_bytes(CacheConfig{}) == 0);
}

TEST_CASE("an access spanning two lines counts one miss but two fills") {
    CacheModel model(CacheConfig{});
    CHECK(!model.access(60, 8, false));
    CHECK(model.stats().misses == 1);
    CHECK(model.stats().line_fills == 2);
    CHECK(model.access(60, 8, false));
    CHECK(model.stats().hits == 1);
}

TEST_CASE("evicting a dirty line writes it back") {
    // Direct-mapped with 2 sets: lines 0 and 2 collide in set 0.
    CacheConfig cfg = tiny(128, 1);
    CacheModel model(cfg);
    model.access(0, 8, true);
    model.access(128, 8, false);
    CHECK(model.stats().writebacks == 1);
    CHECK(model.stats().line_fills == 2);
}

TEST_CASE("flush writes dirty lines back and empties the model") {
    CacheModel model(CacheConfig{});
    model.access(0, 8, true);
    model.access(64, 8, false);
    model.flush();
    CHECK(model.stats().writebacks == 1);
    CHECK(!model.access(0, 8, false));
}

TEST_CASE("least recently used way is the one evicted") {
    // 2-way, 2 sets. Lines 0, 2, 4 all fall in set 0.
    CacheConfig cfg = tiny(256, 2);
    CacheModel model(cfg);
    model.access(0, 8, false);
    model.access(2 * 64, 8, false);
    model.access(0, 8, false);       // refresh line 0
    model.access(4 * 64, 8, false);  // evicts line 2
    CHECK(model.access(0, 8, false));
    CHECK(!model.access(2 * 64, 8, false));
}

TEST_CASE("hits plus misses equals accesses on a random trace") {
    std::mt19937_64 rng(7);
    CacheConfig cfg = tiny(4096, 4);
    CacheModel model(cfg);
    for (int i = 0; i < 5000; ++i) model.access(rng() % 65536, 1 + rng() % 64, rng() % 2 == 0);
    const CacheStats& s = model.stats();
    CHECK(s.accesses == 5000);
    CHECK(s.hits + s.misses == s.accesses);
    CHECK(s.line_fills >= s.misses);
}

TEST_CASE("replay runs a fresh model and flushes at the end") {
    MemTrace trace;
    trace.record(0, 0, true, 8);
    CacheConfig cfg;
    CacheStats s = replay(trace, cfg);
    CHECK(s.accesses == 1);
    CHECK(s.misses == 1);
    CHECK(s.line_fills == 1);
    CHECK(s.writebacks == 1);
    CHECK(s.dram_bytes(cfg) == 128);
}

TEST_CASE("larger fully associative caches never miss more") {
    std::mt19937_64 rng(11);
    MemTrace trace;
    std::uint64_t cycle = 0;
    for (int i = 0; i < 4000; ++i)
        trace.record(cycle++, (rng() % 512) * 37, 1 + rng() % 16, rng() % 4 == 0);
    std::uint64_t prev = ~0ull;
    for (std::uint64_t cap = 1024; cap <= 16384; cap *= 2) {
        CacheStats s = replay(trace, tiny(cap, 0));
        CHECK(s.misses <= prev);
        prev = s.misses;
    }
}

TEST_CASE("invalid cache geometry is rejected") {
    CHECK_THROWS_AS(CacheModel(tiny(0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(CacheModel(tiny(100, 8)), std::invalid_argument);
    CacheConfig cfg;
    cfg.line_bytes = 0;
    CHECK_THROWS_AS(CacheModel{cfg}, std::invalid_argument);
}

TEST_CASE("trace CSV dump is exact") {
    MemTrace trace;
    trace.record(0, 0x40000000, false, 512);
    trace.record(3, 255, true, 4);
    std::ostringstream out;
    dump_trace_csv(trace, out);
    CHECK(out.str() == "cycle,addr_hex,rw,size\n0,40000000,R,512\n3,ff,W,4\n");
}

TEST_CASE("address map regions and closed forms") {
    AddressMap map;
    map.feature_dim = 128;
    CHECK(map.n_segs() == 2);
    CHECK(map.row_bytes() == 1024);
    CHECK(map.adj_addr(40) == 40);
    CHECK(map.z_row_addr(0) == AddressMap::z_base);
    CHECK(map.z_row_addr(1) == AddressMap::z_base + 1024);
    CHECK(map.ps_seg_addr(0, 0) == AddressMap::ps_base);
    CHECK(map.ps_seg_addr(0, 1) == AddressMap::ps_base + 512);
    CHECK(map.ps_seg_addr(2, 1) == AddressMap::ps_base + (2 * 128 + 64) * 8);
    CHECK(map.buf_seg_addr(2, 1) == AddressMap::buf_base + (2 * 128 + 64) * 8);
    CHECK(map.seg_features(0) == 64);
    CHECK(map.seg_bytes(1) == 512);
}

TEST_CASE("a short final segment covers only the remaining features") {
    AddressMap map;
    map.feature_dim = 100;
    CHECK(map.n_segs() == 2);
    CHECK(map.seg_features(0) == 64);
    CHECK(map.seg_features(1) == 36);
    CHECK(map.seg_bytes(1) == 288);
    CHECK(map.row_bytes() == 800);
}
