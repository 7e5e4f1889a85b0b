#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aircoord/closed_form.hpp"
#include "aircoord/solver.hpp"

using namespace aircoord;
namespace sv = aircoord::solver;
namespace cf = aircoord::closed_form;

namespace {

ChannelParams base() { return ChannelParams{}; }

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

TEST_CASE("airline best response solves the fare/greening conditions") {
    const ChannelParams pr = base();
    const auto br = sv::airline_best_response(pr, ContractSpec::decentralised(), 105.4);
    // margin form: m = (alpha - beta w - beta c_AL - gamma/f) / (2 beta - xi^2/(2I))
    const double m = (pr.net_potential() - pr.beta * (105.4 + pr.cost_airline)) /
                     (2.0 * pr.beta - pr.xi * pr.xi / (2.0 * pr.invest_cost));
    CHECK_THAT(m, Catch::Matchers::WithinAbs(59.62, 0.02));
    CHECK_THAT(br.fare, Catch::Matchers::WithinAbs(m + 105.4 + pr.cost_airline, 1e-12));
    CHECK_THAT(br.theta, Catch::Matchers::WithinAbs(7.45, 0.01));

    const auto csc = sv::airline_best_response(pr, ContractSpec::cost_sharing(1.0 / 3.0), 123.09);
    CHECK_THAT(csc.theta, Catch::Matchers::WithinAbs(12.18, 0.01));

    // no greening demand: the monopoly fare
    ChannelParams flat = pr;
    flat.xi = 0.0;
    const auto mono = sv::airline_best_response(flat, ContractSpec::decentralised(), 50.0);
    CHECK(mono.theta == 0.0);
    CHECK_THAT(mono.fare,
               Catch::Matchers::WithinAbs(
                   (flat.net_potential() + flat.beta * (50.0 + flat.cost_airline)) /
                       (2.0 * flat.beta),
                   1e-9));

    // indefinite Hessian is refused
    ChannelParams bad = pr;
    bad.xi = 4.9;
    bad.invest_cost = 6.0;
    CHECK_THROWS_AS(sv::airline_best_response(bad, ContractSpec::decentralised(), 50.0),
                    SolverError);
}

TEST_CASE("taxed best response handles the kink") {
    const ChannelParams pr = base();
    const ContractSpec dc = ContractSpec::decentralised();

    // zero tax collapses to the untaxed response
    const auto plain = sv::airline_best_response(pr, dc, 105.4);
    const auto zero = sv::airline_best_response_taxed(pr, dc, 105.4, TaxPolicy{0.0, 6.5});
    CHECK(plain.fare == zero.fare);
    CHECK(plain.theta == zero.theta);

    // penalty-active region: theta = (xi m + t) / (2I)
    const TaxPolicy tax{6.0, 6.5};
    const auto taxed = sv::airline_best_response_taxed(pr, dc, 105.4, tax);
    const double m = taxed.fare - 105.4 - pr.cost_airline;
    CHECK_THAT(taxed.theta,
               Catch::Matchers::WithinAbs((pr.xi * m + tax.level) / (2.0 * pr.invest_cost),
                                          1e-10));
    CHECK(taxed.theta > plain.theta);
    CHECK(taxed.theta < pr.freq * tax.target_theta);

    // dense-grid oracle over the (fare, greening) box
    const ContractSpec taxed_ct = dc.with_tax(tax);
    double best_p = 0.0, best_th = 0.0, best_v = -1e300;
    for (int i = 0; i <= 400; ++i) {
        for (int j = 0; j <= 400; ++j) {
            const double p = 120.0 + 0.35 * i;
            const double th = 0.0 + 0.05 * j;
            const double v = airline_profit(pr, taxed_ct, 105.4, p, th);
            if (v > best_v) { best_v = v; best_p = p; best_th = th; }
        }
    }
    CHECK_THAT(taxed.fare, Catch::Matchers::WithinAbs(best_p, 0.35));
    CHECK_THAT(taxed.theta, Catch::Matchers::WithinAbs(best_th, 0.05));

    // a punitive tax level pushes greening onto the target boundary
    ChannelParams small_target = pr;
    const TaxPolicy harsh{4000.0, 1.6};  // f*theta0 = 8, reachable
    const auto boundary = sv::airline_best_response_taxed(small_target, dc, 105.4, harsh);
    CHECK_THAT(boundary.theta, Catch::Matchers::WithinAbs(8.0, 1e-12));
}

TEST_CASE("numeric solves agree with the closed forms at the base calibration") {
    const ChannelParams pr = base();
    const sv::SolverConfig cfg;

    const auto pairs = {
        std::pair{ContractSpec::centralised(), cf::eq_centralised(pr)},
        std::pair{ContractSpec::decentralised(), cf::eq_dcent(pr)},
        std::pair{ContractSpec::cost_sharing(), cf::eq_csc(pr)},
        std::pair{ContractSpec::revenue_sharing(0.68), cf::eq_rsc(pr, 0.68)},
        std::pair{ContractSpec::two_part_tariff(2500.0), cf::eq_ltt(pr, 2500.0)},
    };
    for (const auto& [ct, closed] : pairs) {
        const Equilibrium num = sv::solve_contract(pr, ct, cfg);
        const double tol = ct.kind == Structure::csc ? 1e-4 : 1e-6;
        if (closed.fee) CHECK(close_rel(*num.fee, *closed.fee, tol));
        CHECK(close_rel(num.fare, closed.fare, tol));
        CHECK(close_rel(num.theta, closed.theta, tol));
        CHECK(num.diag.foc_residual < 1e-8);
        CHECK(num.diag.leader_certified);
        CHECK(std::abs(num.demand - demand(pr, num.fare, num.theta)) < 1e-9);
    }

    const Equilibrium csc = sv::solve_contract(pr, ContractSpec::cost_sharing(), cfg);
    CHECK_THAT(*csc.cost_share, Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-3));
    const Equilibrium ltt = sv::solve_contract(pr, ContractSpec::two_part_tariff(2500.0), cfg);
    CHECK_THAT(*ltt.airport_utility, Catch::Matchers::WithinAbs(1625.2, 0.5));
    CHECK(*ltt.airline_profit == 2500.0);
}

TEST_CASE("fixed cost share is honored") {
    const ChannelParams pr = base();
    const Equilibrium eq = sv::solve_contract(pr, ContractSpec::cost_sharing(0.25));
    CHECK(*eq.cost_share == 0.25);
    // the airport does strictly better at its optimal share
    const Equilibrium opt = sv::solve_contract(pr, ContractSpec::cost_sharing());
    CHECK(*opt.airport_utility > *eq.airport_utility);
}

TEST_CASE("reservation profit beyond the gross surplus is infeasible") {
    CHECK_THROWS_AS(sv::solve_contract(base(), ContractSpec::two_part_tariff(1e6)),
                    InfeasibleError);
}

TEST_CASE("zero tax level reproduces the untaxed solve exactly") {
    const ChannelParams pr = base();
    for (const ContractSpec& ct :
         {ContractSpec::decentralised(), ContractSpec::cost_sharing(),
          ContractSpec::revenue_sharing(0.68), ContractSpec::two_part_tariff(2500.0)}) {
        const Equilibrium a = sv::solve_contract(pr, ct);
        const Equilibrium b = sv::solve_with_tax(pr, ct, TaxPolicy{0.0, 6.5});
        CHECK(a.fee == b.fee);
        CHECK(a.fare == b.fare);
        CHECK(a.theta == b.theta);
        CHECK(a.demand == b.demand);
        CHECK(a.welfare == b.welfare);
        CHECK(b.tax_revenue == 0.0);
    }
}

TEST_CASE("taxation raises greening and costs the airline") {
    const ChannelParams pr = base();
    const TaxPolicy tax{6.0, 6.5};

    const Equilibrium d0 = sv::solve_contract(pr, ContractSpec::decentralised());
    const Equilibrium d6 = sv::solve_with_tax(pr, ContractSpec::decentralised(), tax);
    CHECK(d6.theta > d0.theta);
    CHECK(*d6.airline_profit < *d0.airline_profit);
    CHECK(d6.tax_revenue > 0.0);
    // the penalty-region greening condition holds at the taxed solution
    const double m = d6.fare - *d6.fee - pr.cost_airline;
    CHECK_THAT(d6.theta,
               Catch::Matchers::WithinAbs((pr.xi * m + tax.level) / (2.0 * pr.invest_cost),
                                          1e-8));

    // published direction: the revenue-sharing greening level lands near the
    // Table-5 value, which is treated as directional
    const Equilibrium r6 = sv::solve_with_tax(pr, ContractSpec::revenue_sharing(0.68), tax);
    const Equilibrium r0 = sv::solve_contract(pr, ContractSpec::revenue_sharing(0.68));
    CHECK(r6.theta > r0.theta);
    CHECK(std::abs(r6.theta - 18.29) / 18.29 < 0.10);
    CHECK(std::abs(r0.theta - 16.17) / 16.17 < 0.10);

    // coordinating contracts share a taxed benchmark
    const Equilibrium l6 =
        sv::solve_with_tax(pr, ContractSpec::two_part_tariff(2500.0), tax);
    CHECK_THAT(r6.theta, Catch::Matchers::WithinAbs(l6.theta, 1e-9));
    CHECK_THAT(r6.fare, Catch::Matchers::WithinAbs(l6.fare, 1e-6));
    CHECK(*l6.airline_profit == 2500.0);
    // fees drop under the tax regime for the coordinating contracts
    CHECK(*r6.fee < *r0.fee);
}

TEST_CASE("optimal tax scan") {
    const ChannelParams pr = base();
    std::vector<double> grid;
    for (int t = 0; t <= 12; ++t) grid.push_back(t);

    const auto res = sv::optimal_tax(pr, ContractSpec::decentralised(), 6.5, grid);
    REQUIRE(res.rows.size() == grid.size());
    CHECK(res.rows.front().tax_revenue == 0.0);
    CHECK(res.unimodal);
    CHECK(res.gtr_star >= res.rows.back().tax_revenue);
    // every curve value is the penalty recomputed from its own equilibrium
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double again = gtr(TaxPolicy{grid[i], 6.5}, pr.freq, res.rows[i].theta);
        CHECK_THAT(res.rows[i].tax_revenue, Catch::Matchers::WithinAbs(again, 1e-9));
    }

    const auto degenerate = sv::optimal_tax(pr, ContractSpec::decentralised(), 6.5, {0.0});
    CHECK(degenerate.t_star == 0.0);
    CHECK(degenerate.gtr_star == 0.0);

    CHECK_THROWS_AS(sv::optimal_tax(pr, ContractSpec::decentralised(), 6.5, {}), ModelError);
    CHECK_THROWS_AS(sv::optimal_tax(pr, ContractSpec::decentralised(), 6.5, {1.0, 1.0}),
                    ModelError);
    CHECK_THROWS_AS(sv::optimal_tax(pr, ContractSpec::decentralised(), 6.5, {-1.0, 2.0}),
                    ModelError);
}

TEST_CASE("oracle equivalence on a small in-test family") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const sv::SolverConfig cfg;
    int done = 0;
    while (done < 25) {
        ChannelParams pr = base();
        pr.invest_cost = std::exp(std::log(5.0) + std::log(10.0) * u(rng));
        pr.mu = 0.3 * u(rng);
        pr.xi = 3.5 * u(rng);
        const auto cc = concavity_check(pr);
        if (!cc.centralised_ok || !cc.airline_ok) continue;
        if (!(4.0 * pr.beta * pr.invest_cost * (2.0 / 3.0) > pr.xi * pr.xi)) continue;
        const double psi = 0.3 + 0.7 * u(rng);
        const Equilibrium cfm = cf::eq_dcent(pr);
        const Equilibrium num = sv::solve_contract(pr, ContractSpec::decentralised(), cfg);
        CHECK(close_rel(*cfm.fee, *num.fee, 1e-6));
        const Equilibrium r1 = cf::eq_rsc(pr, psi);
        const Equilibrium r2 = sv::solve_contract(pr, ContractSpec::revenue_sharing(psi), cfg);
        CHECK(close_rel(*r1.fee, *r2.fee, 1e-6));
        ++done;
    }
}
