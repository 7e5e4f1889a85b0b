// Acceptance suite: every release criterion runs here at its stated
// tolerance and prints one PASS/FAIL line.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "aircoord/verify.hpp"

using namespace aircoord;

namespace {

const verify::VerifyReport& report() {
    static const verify::VerifyReport rep = [] {
        RunConfig rc = load_config(std::string(AIRCOORD_CONFIG_DIR) + "/base.cfg");
        return verify::run_verification(rc);
    }();
    return rep;
}

struct Slice {
    int total = 0;
    int failed = 0;
    std::string first_failure;
};

Slice slice(std::initializer_list<const char*> prefixes) {
    Slice s;
    for (const auto& c : report().checks) {
        bool match = false;
        for (const char* p : prefixes)
            if (c.name.rfind(p, 0) == 0) match = true;
        if (!match) continue;
        ++s.total;
        if (!c.pass && s.first_failure.empty()) s.first_failure = c.name + ": " + c.detail;
        s.failed += c.pass ? 0 : 1;
    }
    return s;
}

bool announce(int id, const char* label, const Slice& s) {
    const bool ok = s.total > 0 && s.failed == 0;
    std::printf("ACCEPTANCE %2d %-34s %s (%d checks%s%s)\n", id, label, ok ? "PASS" : "FAIL",
                s.total, s.first_failure.empty() ? "" : "; first failure: ",
                s.first_failure.c_str());
    std::fflush(stdout);
    return ok;
}

} // namespace

TEST_CASE("criterion 1: base-table reproduction") {
    REQUIRE(announce(1, "table 4 base columns", slice({"table4.base."})));
}

TEST_CASE("criterion 2: scenario columns") {
    REQUIRE(announce(2, "table 4 scenario columns", slice({"table4.s1.", "table4.s2."})));
}

TEST_CASE("criterion 3: efficiency metrics") {
    REQUIRE(announce(3, "SWE and GE values", slice({"efficiency."})));
}

TEST_CASE("criterion 4: closed-form/solver equivalence") {
    REQUIRE(announce(4, "oracle equivalence, 200 draws", slice({"oracle."})));
}

TEST_CASE("criterion 5: proposition suite") {
    REQUIRE(announce(5, "propositions 1-11", slice({"proposition."})));
}

TEST_CASE("criterion 6: tax game") {
    REQUIRE(announce(6, "tax monotonicity and revenue", slice({"tax."})));
}

TEST_CASE("criterion 7: duopoly") {
    REQUIRE(announce(7, "duopoly symmetry and adjudication", slice({"duopoly."})));
}

TEST_CASE("criterion 8: profit thresholds") {
    REQUIRE(announce(8, "CSR-weight profit thresholds", slice({"thresholds."})));
}

TEST_CASE("criterion 9: crossing detection") {
    REQUIRE(announce(9, "sensitivity-sweep crossings", slice({"crossings."})));
}

TEST_CASE("criterion 10: determinism") {
    RunConfig rc = load_config(std::string(AIRCOORD_CONFIG_DIR) + "/base.cfg");
    const auto again = verify::run_verification(rc);
    Slice s;
    s.total = 1;
    s.failed = (again.text() == report().text() &&
                again.to_json().dump() == report().to_json().dump())
                   ? 0
                   : 1;
    if (s.failed) s.first_failure = "reports differ between runs with the same seed";
    REQUIRE(announce(10, "verify is byte-deterministic", s));
}
