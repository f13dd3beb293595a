#include "doctest.h"
#include "properties.hpp"

using namespace scv::test;

namespace {

void report(const PropResult& res) {
    for (const std::string& f : res.failures) FAIL_CHECK(f);
    CHECK(res.ok());
    CHECK(res.cases >= 1000);
}

}  // namespace

TEST_CASE("property: format round trips") { report(prop_format_roundtrips(1, 1000)); }

TEST_CASE("property: z-order bijection") { report(prop_zorder_bijection(2, 1200)); }

TEST_CASE("property: schedule agreement") { report(prop_schedule_agreement(3, 1000)); }
