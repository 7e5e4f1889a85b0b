#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aircoord/model.hpp"

using namespace aircoord;

namespace {

ChannelParams base() { return ChannelParams{}; }

// tolerance of the published tables: half a unit or one percent
double table_tol(double v) { return std::max(0.5, 0.01 * std::abs(v)); }

} // namespace

TEST_CASE("demand follows the linear form") {
    const ChannelParams pr = base();
    CHECK_THAT(demand(pr, 185.01, 7.45), Catch::Matchers::WithinAbs(29.805, 1e-9));
    CHECK_THAT(demand(pr, 166.94, 16.48), Catch::Matchers::WithinAbs(65.93, 1e-9));
    // fare that zeroes demand at no greening
    const double p0 = (pr.alpha - pr.gamma / pr.freq) / pr.beta;
    CHECK_THAT(demand(pr, p0, 0.0), Catch::Matchers::WithinAbs(0.0, 1e-9));

    ChannelParams bad = pr;
    bad.freq = 0.0;
    CHECK_THROWS_AS(demand(bad, 100.0, 1.0), ModelError);
}

TEST_CASE("tax revenue kinks at the greening target") {
    TaxPolicy tax{6.0, 6.5};
    CHECK_THAT(gtr(tax, 5.0, 8.57), Catch::Matchers::WithinAbs(143.58, 1e-9));
    CHECK(gtr(tax, 5.0, 32.5) == 0.0);
    CHECK(gtr(tax, 5.0, 40.0) == 0.0);
    CHECK(gtr(TaxPolicy{0.0, 6.5}, 5.0, 1.0) == 0.0);

    // non-increasing in theta, non-decreasing in t
    double prev = gtr(tax, 5.0, 0.0);
    for (double th = 0.5; th < 40.0; th += 0.5) {
        const double g = gtr(tax, 5.0, th);
        CHECK(g <= prev + 1e-12);
        prev = g;
    }
    prev = 0.0;
    for (double t = 0.0; t <= 12.0; t += 0.5) {
        const double g = gtr(TaxPolicy{t, 6.5}, 5.0, 10.0);
        CHECK(g >= prev - 1e-12);
        prev = g;
    }
}

TEST_CASE("consumer surplus is quadratic in demand") {
    const ChannelParams pr = base();
    CHECK_THAT(consumer_surplus(pr, 29.8), Catch::Matchers::WithinAbs(888.04, 1e-9));
    CHECK_THAT(consumer_surplus(pr, 65.94), Catch::Matchers::WithinAbs(4348.0836, 1e-6));
    CHECK(consumer_surplus(pr, 0.0) == 0.0);
    CHECK_THROWS_AS(consumer_surplus(pr, -1.0), InfeasibleError);
}

TEST_CASE("airline profit at the published points") {
    const ChannelParams pr = base();
    CHECK_THAT(airline_profit(pr, ContractSpec::decentralised(), 105.4, 185.01, 7.45),
               Catch::Matchers::WithinAbs(960.3, table_tol(960.3)));
    CHECK_THAT(airline_profit(pr, ContractSpec::cost_sharing(1.0 / 3.0), 123.09, 208.03, 12.17),
               Catch::Matchers::WithinAbs(772.5, table_tol(772.5)));
    CHECK_THAT(airline_profit(pr, ContractSpec::two_part_tariff(2500.0), 15.05, 166.94, 16.48,
                              2786.6),
               Catch::Matchers::WithinAbs(2500.0, table_tol(2500.0)));
    // zero-margin point collapses to the fixed charges
    const double w = 40.0;
    CHECK_THAT(airline_profit(pr, ContractSpec::decentralised(), w, w + pr.cost_airline, 0.0),
               Catch::Matchers::WithinAbs(-pr.landing_fee * pr.freq, 1e-9));
}

TEST_CASE("airport profit handles the contract transfers") {
    const ChannelParams pr = base();
    // direct evaluation of the revenue-shared airport profit at the
    // published coordinating point
    const ContractSpec rsc = ContractSpec::revenue_sharing(0.68);
    const double q = demand(pr, 166.94, 16.48);
    const double by_hand = pr.landing_fee * pr.freq + (3.8 + 1.0) * q - pr.cost_airport * q +
                           (1.0 - 0.68) * 166.94 * q;
    CHECK_THAT(airport_profit(pr, rsc, 3.8, 166.94, 16.48),
               Catch::Matchers::WithinAbs(by_hand, 1e-9));
    CHECK_THAT(by_hand, Catch::Matchers::WithinAbs(1021.647, 0.001));

    // margin-cancelling fee: w = c_AP - 1 with full retention leaves c*f
    const ContractSpec keep = ContractSpec::revenue_sharing(1.0);
    CHECK_THAT(airport_profit(pr, keep, pr.cost_airport - 1.0, 150.0, 4.0),
               Catch::Matchers::WithinAbs(pr.landing_fee * pr.freq, 1e-9));
}

TEST_CASE("airport utility blends profit and surplus") {
    const ChannelParams pr = base();
    CHECK_THAT(airport_utility(pr, ContractSpec::decentralised(), 105.4, 185.01, 7.45),
               Catch::Matchers::WithinAbs(1783.7, table_tol(1783.7)));
    CHECK_THAT(airport_utility(pr, ContractSpec::two_part_tariff(2500.0), 15.05, 166.94, 16.48,
                               2786.6),
               Catch::Matchers::WithinAbs(1625.2, table_tol(1625.2)));

    // mu = 0 collapses utility to pure profit
    ChannelParams flat = pr;
    flat.mu = 0.0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double w = 200.0 * u(rng) - 50.0;
        const double p = 100.0 + 150.0 * u(rng);
        const double th = 20.0 * u(rng);
        if (demand(flat, p, th) < 0.0) continue;
        CHECK_THAT(airport_utility(flat, ContractSpec::decentralised(), w, p, th),
                   Catch::Matchers::WithinRel(
                       airport_profit(flat, ContractSpec::decentralised(), w, p, th), 1e-12));
    }
}

TEST_CASE("social welfare functional") {
    const ChannelParams pr = base();
    CHECK_THAT(social_welfare(pr, 166.94, 16.48), Catch::Matchers::WithinAbs(3675.0, 1.0));
    CHECK_THAT(social_welfare(pr, 185.0197, 7.4502),
               Catch::Matchers::WithinAbs(2570.99, 0.5));

    // theta = 0, mu = 0 collapse
    ChannelParams flat = pr;
    flat.mu = 0.0;
    for (double p : {120.0, 150.0, 180.0}) {
        const double q = demand(flat, p, 0.0);
        const double margin = p + flat.w_prime - flat.cost_airport - flat.cost_airline;
        CHECK_THAT(social_welfare(flat, p, 0.0),
                   Catch::Matchers::WithinAbs(margin * q, 1e-9));
    }
}

TEST_CASE("contract variants collapse to the decentralised objective") {
    const ChannelParams pr = base();
    const ContractSpec dc = ContractSpec::decentralised();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double w = 150.0 * u(rng) - 25.0;
        const double p = 100.0 + 150.0 * u(rng);
        const double th = 20.0 * u(rng);
        const ContractSpec rsc1 = ContractSpec::revenue_sharing(1.0);
        const ContractSpec csc0 = ContractSpec::cost_sharing(0.0);
        const ContractSpec ltt = ContractSpec::two_part_tariff(0.0);
        const double ref_al = airline_profit(pr, dc, w, p, th);
        const double ref_ap = airport_profit(pr, dc, w, p, th);
        CHECK_THAT(airline_profit(pr, rsc1, w, p, th), Catch::Matchers::WithinAbs(ref_al, 1e-9));
        CHECK_THAT(airline_profit(pr, csc0, w, p, th), Catch::Matchers::WithinAbs(ref_al, 1e-9));
        CHECK_THAT(airline_profit(pr, ltt, w, p, th, 0.0),
                   Catch::Matchers::WithinAbs(ref_al, 1e-9));
        CHECK_THAT(airport_profit(pr, rsc1, w, p, th), Catch::Matchers::WithinAbs(ref_ap, 1e-9));
        CHECK_THAT(airport_profit(pr, csc0, w, p, th), Catch::Matchers::WithinAbs(ref_ap, 1e-9));
        CHECK_THAT(airport_profit(pr, ltt, w, p, th, 0.0),
                   Catch::Matchers::WithinAbs(ref_ap, 1e-9));
    }
}

TEST_CASE("channel identity ties the profit split to the welfare functional") {
    const ChannelParams pr = base();
    const ContractSpec dc = ContractSpec::decentralised();
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double w = 150.0 * u(rng) - 25.0;
        const double p = 120.0 + 120.0 * u(rng);
        const double th = 20.0 * u(rng);
        const double q = demand(pr, p, th);
        if (q < 0.0) continue;
        const double lhs = (1.0 - pr.mu) * (airline_profit(pr, dc, w, p, th) +
                                            airport_profit(pr, dc, w, p, th)) +
                           pr.mu * consumer_surplus(pr, q);
        CHECK_THAT(lhs, Catch::Matchers::WithinAbs(social_welfare(pr, p, th), 1e-9));
    }
}

TEST_CASE("concavity report") {
    const auto r = concavity_check(base());
    CHECK(r.centralised_ok);
    CHECK_THAT(r.centralised_threshold, Catch::Matchers::WithinAbs(5.0548, 1e-3));
    CHECK(r.airline_ok);
    CHECK(r.airline_lhs == 24.0);
    CHECK(r.airline_rhs == 9.0);

    ChannelParams boundary = base();
    boundary.invest_cost = boundary.xi * boundary.xi / (4.0 * boundary.beta);
    CHECK_FALSE(concavity_check(boundary).airline_ok);  // strict inequality required

    ChannelParams high_mu = base();
    high_mu.mu = 2.0 / 3.0;
    CHECK_FALSE(concavity_check(high_mu).centralised_ok);
}

TEST_CASE("parameter validation") {
    ChannelParams pr = base();
    pr.mu = 0.7;
    CHECK_THROWS_AS(pr.validate(), InfeasibleError);
    pr = base();
    pr.xi = 5.0;  // violates 4 beta I > xi^2
    CHECK_THROWS_AS(pr.validate(), InfeasibleError);
    pr = base();
    pr.beta = -1.0;
    CHECK_THROWS_AS(pr.validate(), InfeasibleError);

    ContractSpec bad = ContractSpec::decentralised();
    bad.psi = 0.5;
    CHECK_THROWS_AS(bad.validate(), ModelError);
    CHECK_THROWS_AS(ContractSpec::revenue_sharing(1.5).validate(), InfeasibleError);
    CHECK_THROWS_AS(ContractSpec::two_part_tariff(-1.0).validate(), InfeasibleError);
}
