#include <catch2/catch_amalgamated.hpp>

#include "aircoord/closed_form.hpp"
#include "aircoord/solver.hpp"

using namespace aircoord;
namespace sv = aircoord::solver;
namespace cf = aircoord::closed_form;

namespace {

DuopolyParams price_base() {
    DuopolyParams d;
    d.mode = DuopolyParams::Mode::price;
    d.beta1 = d.beta2 = 0.2;
    return d;
}

double max_gap(const DuopolyDecision& a, const DuopolyDecision& b) {
    return std::max(std::max(std::abs(a.fare1 - b.fare1), std::abs(a.fare2 - b.fare2)),
                    std::max(std::abs(a.theta1 - b.theta1), std::abs(a.theta2 - b.theta2)));
}

} // namespace

TEST_CASE("symmetric airlines split the market symmetrically") {
    const DuopolyParams d = price_base();
    const auto dec = cf::duopoly_price_closed_form(d, 50.0);
    CHECK(dec.fare1 == dec.fare2);
    CHECK(dec.theta1 == dec.theta2);
    CHECK_THAT(dec.fare1, Catch::Matchers::WithinAbs(250.0, 1e-9));
    CHECK_THAT(dec.theta1, Catch::Matchers::WithinAbs(25.0, 1e-9));

    const auto fp = sv::duopoly_fixed_point(d, Structure::dcent, 50.0);
    CHECK(max_gap(dec, fp) < 1e-9);
}

TEST_CASE("asymmetric price competition: closed form, fixed point and joint solve") {
    DuopolyParams d = price_base();
    d.beta1 = 0.3;
    d.beta2 = 0.1;
    const auto dec = cf::duopoly_price_closed_form(d, 50.0);
    // frozen against the damped best-response oracle
    CHECK_THAT(dec.fare1, Catch::Matchers::WithinAbs(272.53032929, 1e-6));
    CHECK_THAT(dec.fare2, Catch::Matchers::WithinAbs(213.60485269, 1e-6));
    CHECK_THAT(dec.theta1, Catch::Matchers::WithinAbs(27.81629116, 1e-6));
    CHECK_THAT(dec.theta2, Catch::Matchers::WithinAbs(20.45060659, 1e-6));
    CHECK(dec.fare1 > dec.fare2);  // beta1 > beta2

    const auto fp = sv::duopoly_fixed_point(d, Structure::dcent, 50.0);
    const auto js = sv::duopoly_joint_solve(d, Structure::dcent, 50.0);
    CHECK(max_gap(fp, js) < 1e-9);
    CHECK(max_gap(dec, fp) < 1e-6);

    // the literal text repeats first-airline coefficients in the second
    // airline's cells and misses the oracle by a wide margin
    const auto literal = cf::duopoly_price_closed_form(d, 50.0, cf::FormVariant::as_printed);
    CHECK(std::abs(literal.fare2 - fp.fare2) > 1.0);
    CHECK(std::abs(literal.fare1 - fp.fare1) < 1e-6);
}

TEST_CASE("revenue-sharing duopoly") {
    DuopolyParams d = price_base();
    d.r1 = d.r2 = 0.8;
    const auto dec = cf::duopoly_rsc_closed_form(d, 50.0);
    CHECK_THAT(dec.fare1, Catch::Matchers::WithinAbs(225.0, 1e-9));
    CHECK_THAT(dec.theta1, Catch::Matchers::WithinAbs(16.25, 1e-9));
    const auto fp = sv::duopoly_fixed_point(d, Structure::rsc, 50.0);
    CHECK(max_gap(dec, fp) < 1e-8);

    // the retained fraction belongs inside the squared denominator term; the
    // literal reading misses the oracle
    const auto literal = cf::duopoly_rsc_closed_form(d, 50.0, cf::FormVariant::as_printed);
    CHECK(std::abs(literal.fare1 - fp.fare1) > 1.0);

    // full retention collapses to the decentralised forms
    DuopolyParams full = d;
    full.r1 = full.r2 = 1.0;
    const auto back = cf::duopoly_rsc_closed_form(full, 50.0);
    const auto plain = cf::duopoly_price_closed_form(full, 50.0);
    CHECK(max_gap(back, plain) < 1e-9);
}

TEST_CASE("unequal retained fractions") {
    DuopolyParams d = price_base();
    d.r1 = 0.7;
    d.r2 = 0.9;
    // the printed closed form assumes equality and refuses
    CHECK_THROWS_AS(cf::duopoly_rsc_closed_form(d, 50.0), ModelError);
    // the numeric paths handle the general case and agree with each other
    const auto fp = sv::duopoly_fixed_point(d, Structure::rsc, 50.0);
    const auto js = sv::duopoly_joint_solve(d, Structure::rsc, 50.0);
    CHECK(max_gap(fp, js) < 1e-9);
}

TEST_CASE("greening competition matches the symmetric-convention oracle") {
    DuopolyParams d;
    d.mode = DuopolyParams::Mode::greening;
    d.xi1 = 0.4;
    d.xi2 = 0.9;
    const auto dec = cf::duopoly_greening_closed_form(d, 50.0);
    CHECK_THAT(dec.fare1, Catch::Matchers::WithinAbs(162.01298701, 1e-6));
    CHECK_THAT(dec.fare2, Catch::Matchers::WithinAbs(149.83766234, 1e-6));
    CHECK_THAT(dec.theta1, Catch::Matchers::WithinAbs(14.00162338, 1e-6));
    CHECK_THAT(dec.theta2, Catch::Matchers::WithinAbs(12.47970779, 1e-6));
    CHECK(dec.theta1 > dec.theta2);  // xi2 > xi1 favors the first airline

    const auto fp = sv::duopoly_fixed_point(d, Structure::dcent, 50.0);
    CHECK(max_gap(dec, fp) < 1e-8);
    const auto js = sv::duopoly_joint_solve(d, Structure::dcent, 50.0);
    CHECK(max_gap(js, fp) < 1e-9);

    // equal cross sensitivities restore symmetry
    DuopolyParams sym = d;
    sym.xi1 = sym.xi2 = 0.5;
    const auto even = cf::duopoly_greening_closed_form(sym, 50.0);
    CHECK(even.fare1 == even.fare2);
    CHECK(even.theta1 == even.theta2);

    // the asymmetric demand convention is a different game; the oracle can
    // run it and its outcome departs from the printed forms
    DuopolyParams asym = d;
    asym.convention = DuopolyParams::GreeningConvention::asymmetric;
    const auto fp2 = sv::duopoly_fixed_point(asym, Structure::dcent, 50.0);
    CHECK(std::abs(fp2.theta1 - dec.theta1) > 1e-3);
    const auto js2 = sv::duopoly_joint_solve(asym, Structure::dcent, 50.0);
    CHECK(max_gap(js2, fp2) < 1e-9);
}

TEST_CASE("singular configurations are refused") {
    DuopolyParams d;
    d.mode = DuopolyParams::Mode::greening;
    d.beta = 0.5;
    d.invest_cost = 5.0;
    d.xi = 3.1;  // 4 beta I - xi^2 = 0.39
    const double target = 0.39 * 0.39 / (3.1 * 3.1);  // xi1*xi2 zeroing the denominator
    d.xi1 = d.xi2 = std::sqrt(target);
    CHECK_THROWS_AS(cf::duopoly_greening_closed_form(d, 50.0), SolverError);

    DuopolyParams soc = price_base();
    soc.invest_cost = 4.0;  // 4 beta I = 8 < xi^2 = 9
    CHECK_THROWS_AS(sv::duopoly_fixed_point(soc, Structure::dcent, 50.0), SolverError);
}

TEST_CASE("airport stage: relabeling symmetry and comparative directions") {
    DuopolyParams d = price_base();
    d.beta1 = 0.3;
    d.beta2 = 0.1;
    const auto eq = sv::duopoly_solve(d, Structure::dcent);
    DuopolyParams swapped = d;
    std::swap(swapped.beta1, swapped.beta2);
    const auto eq2 = sv::duopoly_solve(swapped, Structure::dcent);
    CHECK_THAT(eq.fee, Catch::Matchers::WithinAbs(eq2.fee, 1e-9));
    CHECK_THAT(eq.decisions.fare1, Catch::Matchers::WithinAbs(eq2.decisions.fare2, 1e-9));
    CHECK_THAT(eq.airline_profit1, Catch::Matchers::WithinAbs(eq2.airline_profit2, 1e-7));

    // a more CSR-minded airport charges less
    DuopolyParams softer = price_base();
    softer.mu = 0.30;
    const auto lo = sv::duopoly_solve(price_base(), Structure::dcent);
    const auto hi = sv::duopoly_solve(softer, Structure::dcent);
    CHECK(hi.fee < lo.fee);

    // keener greening sensitivity raises both greening levels
    DuopolyParams keener = price_base();
    keener.xi = 3.3;
    const auto greener = sv::duopoly_solve(keener, Structure::dcent);
    CHECK(greener.decisions.theta1 > lo.decisions.theta1);
    CHECK(greener.decisions.theta2 > lo.decisions.theta2);
}
