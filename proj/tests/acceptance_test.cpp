#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "stmodkit/acceptance.hpp"

using namespace stmodkit;

namespace {
void report(const CriterionResult& r) {
    std::printf("%s\n", criterion_line(r).c_str());
    std::fflush(stdout);
    CHECK(r.pass);
}
} // namespace

TEST_CASE("1 regular-module decomposition") { report(acceptance::criterion_regular_decomposition()); }
TEST_CASE("2 Sigma3 classification") { report(acceptance::criterion_sigma3_classification()); }
TEST_CASE("3 case B restriction list") {
    report(acceptance::criterion_complement_restriction_list());
}
TEST_CASE("4 Tate duality") { report(acceptance::criterion_tate_duality()); }
TEST_CASE("5 case B degree-one table") { report(acceptance::criterion_degree_one_table()); }
TEST_CASE("6 filtration solver end-to-end") { report(acceptance::criterion_solver_end_to_end()); }
TEST_CASE("7 case B structural guards") { report(acceptance::criterion_case_b_guards()); }
TEST_CASE("8 oracle equivalence") { report(acceptance::criterion_oracle_equivalence()); }
TEST_CASE("9 certificate soundness sweep") {
    report(acceptance::criterion_certificate_soundness());
}
