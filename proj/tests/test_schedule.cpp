#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "scv/kernels.hpp"
#include "scv/schedule.hpp"

using namespace scv;
using test::a4;

namespace {

std::vector<double> real_values(const Schedule& s) {
    std::vector<double> out;
    for (const WorkItem& it : s.items)
        if (!it.padding) out.push_back(it.a_value);
    return out;
}

CooMatrix schedule_coo(const Schedule& s) {
    CooMatrix m;
    m.n_rows = s.n_rows;
    m.n_cols = s.n_cols;
    for (const WorkItem& it : s.items)
        if (!it.padding) m.triplets.push_back(Triplet{it.a_row, it.a_col, it.a_value});
    return m;
}

}  // namespace

TEST_CASE("csr schedule streams row-major") {
    const Schedule s = csr_schedule(coo_to_csr(a4()));
    CHECK(real_values(s) == std::vector<double>{1, 2, 3, 4, 5, 6, 7});
    CHECK(s.n_groups() == 4);
    CHECK(s.real_items() == 7);
    CHECK(test::same_triplets(schedule_coo(s), a4()));
}

TEST_CASE("csc schedule streams column-major") {
    const Schedule s = csc_schedule(coo_to_csc(a4()));
    CHECK(real_values(s) == std::vector<double>{1, 6, 3, 4, 2, 5, 7});
    CHECK(s.n_groups() == 4);
    CHECK(s.groups[2].z_first == 2);
    CHECK(s.groups[2].z_count == 1);
}

TEST_CASE("bcsr schedule covers whole blocks with flagged padding") {
    const Schedule s = bcsr_schedule(coo_to_bcsr(a4(), 2));
    CHECK(s.items.size() == 16);
    CHECK(s.real_items() == 7);
    std::size_t padded = 0;
    for (const WorkItem& it : s.items) padded += it.padding;
    CHECK(padded == 9);
    // Block (0,1) holds a single nonzero in its top-left cell.
    REQUIRE(s.n_groups() == 4);
    CHECK(s.group_ptr[1] == 4);
    CHECK(s.items[4].a_value == 2.0);
    CHECK(s.items[4].a_row == 0);
    CHECK(s.items[4].a_col == 2);
    CHECK_FALSE(s.items[4].padding);
    CHECK(s.items[5].padding);
    CHECK(s.items[5].a_col == 3);
    CHECK(s.items[6].padding);
    CHECK(s.items[7].padding);
    CHECK(test::same_triplets(schedule_coo(s), a4()));
}

TEST_CASE("bcsr schedule of a lone nonzero pads out the block") {
    CooMatrix m;
    m.n_rows = 2;
    m.n_cols = 2;
    m.triplets = {{0, 0, 5.0}};
    const Schedule s = bcsr_schedule(coo_to_bcsr(m, 2));
    CHECK(s.items.size() == 4);
    CHECK(s.real_items() == 1);
}

TEST_CASE("scv schedule visits tiles in block order") {
    const Schedule s = scv_schedule(coo_to_scv(a4(), 2));
    CHECK(real_values(s) == std::vector<double>{1, 3, 2, 6, 4, 5, 7});
    CHECK(s.n_groups() == 7);  // the empty single-column tile yields no group
    CHECK(s.items[0].a_row == 0);
    CHECK(s.items[1].a_row == 1);  // offset 1 inside block row 0
    CHECK(test::same_triplets(schedule_coo(s), a4()));
}

TEST_CASE("scv schedule charges the whole tile footprint") {
    const Schedule s = scv_schedule(coo_to_scv(a4(), 2, 2));
    REQUIRE(s.n_groups() == 4);
    CHECK(s.groups[0].z_first == 0);
    CHECK(s.groups[0].z_count == 2);
    CHECK(s.groups[1].z_first == 2);
    CHECK(s.groups[1].z_count == 2);
}

TEST_CASE("scv schedule clips the tile footprint at the matrix edge") {
    CooMatrix m;
    m.n_rows = 2;
    m.n_cols = 3;
    m.triplets = {{0, 2, 1.0}};
    const Schedule s = scv_schedule(coo_to_scv(m, 2, 2));
    REQUIRE(s.n_groups() == 1);
    CHECK(s.groups[0].z_first == 2);
    CHECK(s.groups[0].z_count == 1);
}

TEST_CASE("multipass schedule with one-row buffers takes four passes") {
    const Schedule s = mp_schedule(a4(), ResidencyPolicy{1, 1});
    CHECK(s.n_passes == 4);
    CHECK(s.n_passes >= 2);  // tight buffers force revisits
    CHECK(s.real_items() == 7);
    CHECK(real_values(s) == std::vector<double>{1, 6, 7, 2, 5, 4, 3});
    CHECK(s.stream_pos == std::vector<std::uint64_t>{0, 5, 6, 7, 10, 12, 13});
    CHECK(s.scanned_items == 14);
    REQUIRE(s.n_groups() == 4);
    CHECK(s.groups[3].block_row == 3);
    CHECK(test::same_triplets(schedule_coo(s), a4()));

    // Transfers, hand-stepped: each Z column loads exactly once; output row 0
    // is the only one evicted before its last update, so it alone reloads.
    REQUIRE(s.mp_events.size() == 10);
    const std::vector<std::uint64_t> visits{0, 5, 6, 7, 7, 7, 10, 11, 13, 14};
    const std::vector<MpEventKind> kinds{
        MpEventKind::ZLoad,       MpEventKind::PsWriteback, MpEventKind::ZLoad,
        MpEventKind::ZLoad,       MpEventKind::PsWriteback, MpEventKind::PsLoad,
        MpEventKind::PsWriteback, MpEventKind::ZLoad,       MpEventKind::PsWriteback,
        MpEventKind::PsWriteback};
    const std::vector<Index> rows{0, 0, 3, 2, 3, 0, 0, 1, 2, 1};
    for (std::size_t i = 0; i < s.mp_events.size(); ++i) {
        CAPTURE(i);
        CHECK(s.mp_events[i].visit_pos == visits[i]);
        CHECK(s.mp_events[i].kind == kinds[i]);
        CHECK(s.mp_events[i].row == rows[i]);
    }
}

TEST_CASE("multipass schedule with ample buffers finishes in one pass") {
    const Schedule s = mp_schedule(a4(), ResidencyPolicy{4, 4});
    CHECK(s.n_passes == 1);
    CHECK(s.scanned_items == 7);
    CHECK(real_values(s) == std::vector<double>{1, 2, 3, 4, 5, 6, 7});
    CHECK(s.stream_pos == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6});

    // No evictions: one load per distinct Z column, no reloads, and every
    // output row flushes once at the end of the scan.
    REQUIRE(s.mp_events.size() == 8);
    std::size_t z_loads = 0;
    for (const MpMemEvent& e : s.mp_events) {
        if (e.kind == MpEventKind::ZLoad) ++z_loads;
        CHECK(e.kind != MpEventKind::PsLoad);
    }
    CHECK(z_loads == 4);
    for (std::size_t i = 4; i < 8; ++i) {
        CHECK(s.mp_events[i].kind == MpEventKind::PsWriteback);
        CHECK(s.mp_events[i].visit_pos == 7);
        CHECK(s.mp_events[i].row == i - 4);
    }
}

TEST_CASE("multipass schedule rejects sub-row capacities") {
    CHECK_THROWS_AS(mp_schedule(a4(), ResidencyPolicy{0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(mp_schedule(a4(), ResidencyPolicy{4, 0}), std::invalid_argument);
}

TEST_CASE("every schedule computes the same aggregation") {
    const CooMatrix m = a4();
    DenseMatrix z(4, 2);
    for (Index j = 0; j < 4; ++j)
        for (Index f = 0; f < 2; ++f) z.at(j, f) = static_cast<double>(j + 1);
    const DenseMatrix want = dense_spmm(m, z);
    CHECK(want.at(0, 0) == 7.0);
    CHECK(want.at(1, 0) == 6.0);
    CHECK(want.at(2, 0) == 23.0);
    CHECK(want.at(3, 0) == 34.0);
    CHECK(want.at(3, 1) == 34.0);
    CHECK(execute_schedule(csr_schedule(coo_to_csr(m)), z) == want);
    CHECK(execute_schedule(csc_schedule(coo_to_csc(m)), z) == want);
    CHECK(execute_schedule(bcsr_schedule(coo_to_bcsr(m, 2)), z) == want);
    CHECK(execute_schedule(scv_schedule(coo_to_scv(m, 2)), z) == want);
    CHECK(execute_schedule(scv_schedule(coo_to_scv(m, 2, 2, OrderKind::ZMorton)), z) == want);
    CHECK(execute_schedule(mp_schedule(m, ResidencyPolicy{1, 1}), z) == want);
    CHECK(execute_schedule(mp_schedule(m, ResidencyPolicy{2, 3}), z) == want);
}
