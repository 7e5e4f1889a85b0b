#pragma once

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "aircoord/analysis.hpp"
#include "aircoord/config.hpp"
#include "aircoord/io.hpp"

namespace aircoord::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    int failures() const {
        int n = 0;
        for (const auto& c : checks) n += c.pass ? 0 : 1;
        return n;
    }
    bool all_pass() const { return failures() == 0; }

    std::string text() const {
        std::string out = "verification report (seed " + std::to_string(seed) + ")\n";
        for (const auto& c : checks)
            out += std::string(c.pass ? "[PASS] " : "[FAIL] ") + c.name + ": " + c.detail + "\n";
        out += "result: " + std::to_string(checks.size() - failures()) + " passed, " +
               std::to_string(failures()) + " failed\n";
        return out;
    }

    io::json to_json() const {
        io::json j;
        j["seed"] = seed;
        j["passed"] = static_cast<int>(checks.size()) - failures();
        j["failed"] = failures();
        io::json arr = io::json::array();
        for (const auto& c : checks)
            arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        j["checks"] = arr;
        return j;
    }
};

namespace detail {

using io::fmt6;

class Suite {
public:
    explicit Suite(VerifyReport& rep) : rep_(rep) {}

    void close(const std::string& name, double got, double want, double tol) {
        const bool ok = std::abs(got - want) <= tol;
        add(name, ok, fmt6(got) + " vs " + fmt6(want) + " (tol " + fmt6(tol) + ")");
    }
    void table_value(const std::string& name, double got, double want) {
        close(name, got, want, std::max(0.5, 0.01 * std::abs(want)));
    }
    void is_true(const std::string& name, bool ok, const std::string& detail) {
        add(name, ok, detail);
    }
    void add(const std::string& name, bool ok, const std::string& detail) {
        rep_.checks.push_back({name, ok, detail});
    }

private:
    VerifyReport& rep_;
};

inline bool agree(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Golden {
    const char* field;
    double value;
};

inline double field_of(const Equilibrium& eq, const ChannelParams& pr, const std::string& f) {
    if (f == "fee") return eq.fee.value();
    if (f == "fare") return eq.fare;
    if (f == "theta") return eq.theta;
    if (f == "demand") return eq.demand;
    if (f == "airline_profit") return eq.airline_profit.value();
    if (f == "airport_utility") return eq.airport_utility.value();
    if (f == "total_profit") return eq.total_profit;
    if (f == "welfare") return eq.welfare;
    if (f == "lump_sum") return eq.lump_sum.value();
    if (f == "swe") return analysis::swe(pr, eq);
    throw ModelError("unknown golden field " + f);
}

} // namespace detail

/// Reproduction of the published base-scenario table plus the two scenario
/// columns, through both the closed forms and the numeric solver.
inline void check_tables(detail::Suite& s, const RunConfig& rc) {
    struct Cell {
        const char* scenario;
        Structure structure;
        const char* field;
        double value;
    };
    // S2 carries three cells the published table garbled: the centralised
    // and decentralised fares are swapped across its panels (each pairs with
    // the other's demand through the demand identity and the panels' own
    // profit rows), and the decentralised fee cell disagrees with the
    // identical-by-construction cost-sharing panel. The values asserted here
    // are the demand- and profit-consistent attribution of the printed
    // numbers.
    static const Cell cells[] = {
        {"base", Structure::cent, "total_profit", 3527.3},
        {"base", Structure::cent, "welfare", 3675.2},
        {"base", Structure::cent, "demand", 65.94},
        {"base", Structure::cent, "fare", 166.94},
        {"base", Structure::cent, "theta", 16.48},
        {"base", Structure::dcent, "airline_profit", 960.3},
        {"base", Structure::dcent, "airport_utility", 1783.7},
        {"base", Structure::dcent, "demand", 29.8},
        {"base", Structure::dcent, "fare", 185.01},
        {"base", Structure::dcent, "theta", 7.45},
        {"base", Structure::dcent, "fee", 105.4},
        {"base", Structure::csc, "airline_profit", 772.5},
        {"base", Structure::csc, "airport_utility", 1932.5},
        {"base", Structure::csc, "demand", 32.4},
        {"base", Structure::csc, "fare", 208.03},
        {"base", Structure::csc, "theta", 12.17},
        {"base", Structure::csc, "fee", 123.09},
        {"base", Structure::rsc, "airline_profit", 2503.1},
        {"base", Structure::rsc, "airport_utility", 1622.6},
        {"base", Structure::rsc, "demand", 65.94},
        {"base", Structure::rsc, "fare", 166.94},
        {"base", Structure::rsc, "theta", 16.48},
        {"base", Structure::rsc, "fee", 3.8},
        {"base", Structure::ltt, "airline_profit", 2500.0},
        {"base", Structure::ltt, "airport_utility", 1625.2},
        {"base", Structure::ltt, "demand", 65.94},
        {"base", Structure::ltt, "fare", 166.94},
        {"base", Structure::ltt, "theta", 16.48},
        {"base", Structure::ltt, "fee", 15.05},
        {"base", Structure::ltt, "lump_sum", 2786.6},
        {"s1", Structure::cent, "total_profit", 3694.8},
        {"s1", Structure::cent, "welfare", 3694.8},  // scenario identity SW = profit
        {"s1", Structure::cent, "demand", 54.36},
        {"s1", Structure::cent, "fare", 172.73},
        {"s1", Structure::cent, "theta", 13.59},
        {"s1", Structure::dcent, "airline_profit", 773.9},
        {"s1", Structure::dcent, "airport_utility", 1997.4},
        {"s1", Structure::dcent, "demand", 27.18},
        {"s1", Structure::dcent, "fare", 186.32},
        {"s1", Structure::dcent, "theta", 6.7},
        {"s1", Structure::dcent, "fee", 111.96},
        {"s1", Structure::csc, "airline_profit", 605.7},
        {"s1", Structure::csc, "airport_utility", 2147.2},
        {"s1", Structure::csc, "demand", 29.38},
        {"s1", Structure::csc, "fare", 207.26},
        {"s1", Structure::csc, "theta", 11.02},
        {"s1", Structure::csc, "fee", 128.49},
        {"s1", Structure::rsc, "airline_profit", 1653.5},
        {"s1", Structure::rsc, "airport_utility", 2041.8},
        {"s1", Structure::rsc, "fee", 23.5},
        {"s1", Structure::ltt, "airline_profit", 2500.0},
        {"s1", Structure::ltt, "airport_utility", 1194.8},
        {"s1", Structure::ltt, "fee", 44.0},
        {"s1", Structure::ltt, "lump_sum", 1044.8},
        {"s2", Structure::cent, "total_profit", 2274.8},
        {"s2", Structure::cent, "welfare", 2127.1},
        {"s2", Structure::cent, "demand", 38.16},
        {"s2", Structure::cent, "fare", 123.58},
        {"s2", Structure::dcent, "airline_profit", 496.3},
        {"s2", Structure::dcent, "airport_utility", 1124.8},
        {"s2", Structure::dcent, "demand", 17.97},
        {"s2", Structure::dcent, "fare", 163.96},
        {"s2", Structure::dcent, "fee", 108.01},
        {"s2", Structure::csc, "airline_profit", 496.3},
        {"s2", Structure::csc, "airport_utility", 1124.8},
        {"s2", Structure::csc, "fee", 108.01},
        {"s2", Structure::rsc, "airline_profit", 1834.4},
        {"s2", Structure::rsc, "airport_utility", 625.33},
        {"s2", Structure::rsc, "demand", 38.16},
        {"s2", Structure::rsc, "fee", 12.12},
        {"s2", Structure::ltt, "airport_utility", 77.05},
        {"s2", Structure::ltt, "fee", 27.24},
        {"s2", Structure::ltt, "lump_sum", 263.7},
    };

    const auto scenario_params = [&](const std::string& which) {
        ChannelParams pr = rc.params;
        if (which == "s1") pr.mu = 0.0;
        if (which == "s2") pr.xi = 0.0;
        return pr;
    };
    for (const Cell& c : cells) {
        const ChannelParams pr = scenario_params(c.scenario);
        const Equilibrium cf = closed_form::solve(pr, rc.contract(c.structure));
        const Equilibrium nm = solver::solve_contract(pr, rc.contract(c.structure));
        const std::string base = std::string("table4.") + c.scenario + "." +
                                 to_string(c.structure) + "." + c.field;
        s.table_value(base + ".closed_form", detail::field_of(cf, pr, c.field), c.value);
        s.table_value(base + ".solver", detail::field_of(nm, pr, c.field), c.value);
    }
    // the cost share is 1/3 in every scenario column; the numeric search can
    // only identify it where greening is active (any share is optimal at
    // xi = 0, which is why the s2 column asserts the closed form alone)
    for (const char* which : {"base", "s1", "s2"}) {
        const ChannelParams pr = scenario_params(which);
        const Equilibrium cf = closed_form::eq_csc(pr);
        s.close(std::string("table4.") + which + ".CSC.cost_share.closed_form",
                *cf.cost_share, 1.0 / 3.0, 0.01);
        if (pr.xi > 0.0) {
            const Equilibrium nm = solver::solve_contract(pr, ContractSpec::cost_sharing());
            s.close(std::string("table4.") + which + ".CSC.cost_share.solver", *nm.cost_share,
                    1.0 / 3.0, 0.01);
        }
    }
    // S2 coordinating structures: greening exactly zero, demand 38.16
    {
        ChannelParams pr = rc.params;
        pr.xi = 0.0;
        for (Structure st : {Structure::cent, Structure::rsc, Structure::ltt}) {
            const Equilibrium eq = closed_form::solve(pr, rc.contract(st));
            s.close(std::string("table4.s2.") + to_string(st) + ".theta_zero", eq.theta, 0.0,
                    1e-9);
        }
    }
}

inline void check_efficiency(detail::Suite& s, const RunConfig& rc) {
    const ChannelParams& pr = rc.params;
    const Equilibrium dcent = closed_form::eq_dcent(pr);
    const Equilibrium csc = closed_form::eq_csc(pr);
    const Equilibrium rsc = closed_form::eq_rsc(pr, rc.psi);
    const Equilibrium ltt = closed_form::eq_ltt(pr, rc.reservation);
    s.close("efficiency.swe.D-CENT", analysis::swe(pr, dcent), 0.70, 0.01);
    s.close("efficiency.swe.CSC", analysis::swe(pr, csc), 0.69, 0.01);
    s.close("efficiency.ge.D-CENT", analysis::ge(pr, dcent).value(), 0.45, 0.01);
    s.close("efficiency.ge.CSC", analysis::ge(pr, csc).value(), 0.738, 0.01);
    s.close("efficiency.swe.RSC", analysis::swe(pr, rsc), 1.0, 1e-6);
    s.close("efficiency.swe.LTT", analysis::swe(pr, ltt), 1.0, 1e-6);
    s.close("efficiency.ge.RSC", analysis::ge(pr, rsc).value(), 1.0, 1e-6);
    s.close("efficiency.ge.LTT", analysis::ge(pr, ltt).value(), 1.0, 1e-6);
}

/// Closed-form / numeric-solver agreement over a seeded random family that
/// satisfies every concavity condition: I log-uniform in [5,50], mu uniform
/// in [0,0.3], xi uniform in [0,3.5], other parameters at the configured
/// calibration; draws must pass the centralised, airline and cost-sharing
/// (phi = 1/3) second-order conditions.
inline void check_oracle_equivalence(detail::Suite& s, const RunConfig& rc, int target = 200) {
    std::mt19937_64 rng(rc.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    solver::SolverConfig cfg;

    int accepted = 0, attempts = 0;
    int failures = 0;
    double worst = 0.0;
    std::string worst_name = "-";
    double worst_foc = 0.0;

    const auto compare = [&](const char* what, int draw, double a, double b, double tol) {
        const double err = std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
        if (err > worst) { worst = err; worst_name = what + std::string("#") + std::to_string(draw); }
        if (!detail::agree(a, b, tol)) ++failures;
    };

    while (accepted < target && attempts < 40 * target) {
        ++attempts;
        ChannelParams pr = rc.params;
        pr.invest_cost = std::exp(std::log(5.0) + (std::log(50.0) - std::log(5.0)) * u01(rng));
        pr.mu = 0.3 * u01(rng);
        pr.xi = 3.5 * u01(rng);
        const auto cc = concavity_check(pr);
        if (!cc.centralised_ok || !cc.airline_ok) continue;
        if (!(4.0 * pr.beta * pr.invest_cost * (2.0 / 3.0) > pr.xi * pr.xi)) continue;

        try {
            const int n = accepted;
            const Equilibrium c0 = closed_form::eq_centralised(pr);
            const Equilibrium n0 = solver::solve_contract(pr, ContractSpec::centralised(), cfg);
            compare("CENT.fare", n, c0.fare, n0.fare, 1e-6);
            compare("CENT.theta", n, c0.theta, n0.theta, 1e-6);

            const Equilibrium c1 = closed_form::eq_dcent(pr);
            const Equilibrium n1 = solver::solve_contract(pr, ContractSpec::decentralised(), cfg);
            compare("D-CENT.fee", n, *c1.fee, *n1.fee, 1e-6);
            compare("D-CENT.fare", n, c1.fare, n1.fare, 1e-6);
            compare("D-CENT.theta", n, c1.theta, n1.theta, 1e-6);

            const Equilibrium c2 = closed_form::eq_csc(pr);
            const Equilibrium n2 = solver::solve_contract(pr, ContractSpec::cost_sharing(), cfg);
            compare("CSC.fee", n, *c2.fee, *n2.fee, 1e-4);
            compare("CSC.fare", n, c2.fare, n2.fare, 1e-4);
            compare("CSC.theta", n, c2.theta, n2.theta, 1e-4);
            compare("CSC.phi", n, *c2.cost_share, *n2.cost_share, 1e-3);

            const double psi = 0.3 + 0.7 * u01(rng);
            const Equilibrium c3 = closed_form::eq_rsc(pr, psi);
            const Equilibrium n3 =
                solver::solve_contract(pr, ContractSpec::revenue_sharing(psi), cfg);
            compare("RSC.fee", n, *c3.fee, *n3.fee, 1e-6);
            compare("RSC.fare", n, c3.fare, n3.fare, 1e-6);
            compare("RSC.theta", n, c3.theta, n3.theta, 1e-6);

            // reservation 0 keeps every draw feasible; the fee, fare and
            // greening level do not depend on it
            const Equilibrium c4 = closed_form::eq_ltt(pr, 0.0);
            const Equilibrium n4 =
                solver::solve_contract(pr, ContractSpec::two_part_tariff(0.0), cfg);
            compare("LTT.fee", n, *c4.fee, *n4.fee, 1e-6);
            compare("LTT.fare", n, c4.fare, n4.fare, 1e-6);
            compare("LTT.theta", n, c4.theta, n4.theta, 1e-6);

            for (const Equilibrium* eq : {&c0, &c1, &c2, &c3, &c4, &n0, &n1, &n2, &n3, &n4}) {
                worst_foc = std::max(worst_foc, eq->diag.foc_residual);
                if (eq->diag.foc_residual > 1e-6) ++failures;
                if (std::abs(eq->demand - demand(pr, eq->fare, eq->theta)) > 1e-9) ++failures;
            }
            ++accepted;
        } catch (const InfeasibleError&) {
            continue;  // outside the documented family
        }
    }

    s.is_true("oracle.draws", accepted >= target,
              std::to_string(accepted) + " accepted draws (target " + std::to_string(target) +
                  ", attempts " + std::to_string(attempts) + ")");
    s.is_true("oracle.agreement", failures == 0,
              std::to_string(failures) + " disagreements; worst rel err " + io::fmt6(worst) +
                  " at " + worst_name + "; worst FOC residual " + io::fmt6(worst_foc));
}

inline void check_propositions(detail::Suite& s, const RunConfig& rc) {
    analysis::AnalysisContext cx;
    cx.params = rc.params;
    cx.psi = rc.psi;
    cx.reservation = rc.reservation;
    if (rc.tax) cx.theta0 = rc.tax->theta0;
    for (int id = 1; id <= 11; ++id) {
        const auto rep = analysis::check_proposition(id, cx);
        s.is_true("proposition." + std::to_string(id),
                  rep.verdict == analysis::Verdict::confirmed,
                  std::string(analysis::to_string(rep.verdict)) + " | " + rep.observed);
    }
    // the conditional revenue-sharing clauses of the sensitivity claims only
    // apply at the larger published fraction; exercise them there too
    analysis::AnalysisContext cx82 = cx;
    cx82.psi = 0.82;
    for (int id : {6, 7}) {
        const auto rep = analysis::check_proposition(id, cx82);
        s.is_true("proposition." + std::to_string(id) + ".psi82",
                  rep.verdict == analysis::Verdict::confirmed,
                  std::string(analysis::to_string(rep.verdict)) + " | " + rep.observed);
    }
}

inline void check_tax_game(detail::Suite& s, const RunConfig& rc) {
    const double theta0 = rc.tax ? rc.tax->theta0 : 6.5;
    solver::SolverConfig cfg;
    std::vector<double> grid;
    for (int t = 0; t <= 12; ++t) grid.push_back(t);

    for (Structure st : {Structure::dcent, Structure::csc, Structure::rsc, Structure::ltt}) {
        const auto curve = solver::optimal_tax(rc.params, rc.contract(st), theta0, grid, cfg);
        bool theta_up = true, profit_down = true;
        for (std::size_t i = 1; i < curve.rows.size(); ++i) {
            if (!(curve.rows[i].theta > curve.rows[i - 1].theta)) theta_up = false;
            // for the two-part tariff the airline's net profit is the
            // reservation by construction; the declining quantity is its
            // gross surplus before the transfer
            const auto gross = [&](const Equilibrium& e) {
                return *e.airline_profit + e.lump_sum.value_or(0.0);
            };
            if (!(gross(curve.rows[i]) < gross(curve.rows[i - 1]))) profit_down = false;
        }
        const std::string name = std::string("tax.") + to_string(st);
        s.is_true(name + ".theta_increasing", theta_up,
                  "theta " + io::fmt6(curve.rows.front().theta) + " -> " +
                      io::fmt6(curve.rows.back().theta));
        s.is_true(name + ".airline_profit_decreasing", profit_down,
                  "profit " + io::fmt6(*curve.rows.front().airline_profit +
                                       curve.rows.front().lump_sum.value_or(0.0)) +
                      " -> " +
                      io::fmt6(*curve.rows.back().airline_profit +
                               curve.rows.back().lump_sum.value_or(0.0)));
        s.is_true(name + ".gtr_zero_at_zero", curve.rows.front().tax_revenue == 0.0,
                  "GTR(0) = " + io::fmt6(curve.rows.front().tax_revenue));
        s.is_true(name + ".gtr_unimodal", curve.unimodal,
                  "t* = " + io::fmt6(curve.t_star) + ", GTR* = " + io::fmt6(curve.gtr_star));
    }

    // Published taxed-table transcription check: its (p, theta, q) triples
    // satisfy the demand identity to 0.1 even though the table is otherwise
    // treated as directional.
    struct Row {
        const char* name;
        double fare, theta, q;
    };
    static const Row rows[] = {
        {"dcent", 184.97, 7.47, 29.89},   {"dcent_t6", 189.43, 8.57, 30.97},
        {"csc", 208.04, 12.19, 32.51},    {"csc_t2", 208.19, 12.35, 32.93},
        {"rsc", 167.56, 16.17, 64.70},    {"rsc_t6", 173.32, 18.29, 68.19},
        {"ltt", 167.56, 16.17, 64.70},    {"ltt_t6", 173.32, 18.29, 68.19},
    };
    for (const Row& r : rows) {
        const double q = demand(rc.params, r.fare, r.theta);
        s.close(std::string("tax.table5_demand_identity.") + r.name, q, r.q, 0.1);
    }
}

inline void check_duopoly(detail::Suite& s, const RunConfig& rc) {
    solver::SolverConfig cfg;
    DuopolyParams base;
    base.alpha = rc.params.alpha;
    base.beta = rc.params.beta;
    base.xi = rc.params.xi;
    base.invest_cost = rc.params.invest_cost;
    base.cost_airport = rc.params.cost_airport;
    base.mu = rc.params.mu;

    // symmetric instances produce symmetric equilibria
    {
        DuopolyParams d = base;
        d.beta1 = d.beta2 = 0.2;
        const auto eq = solver::duopoly_solve(d, Structure::dcent, cfg);
        const bool sym = std::abs(eq.decisions.fare1 - eq.decisions.fare2) < 1e-9 &&
                         std::abs(eq.decisions.theta1 - eq.decisions.theta2) < 1e-9;
        s.is_true("duopoly.symmetric", sym,
                  "p1 - p2 = " + io::fmt6(eq.decisions.fare1 - eq.decisions.fare2));
        // relabeling the airlines leaves the outcome unchanged
        DuopolyParams swapped = d;
        std::swap(swapped.beta1, swapped.beta2);
        const auto eq2 = solver::duopoly_solve(swapped, Structure::dcent, cfg);
        s.is_true("duopoly.relabel", std::abs(eq.fee - eq2.fee) < 1e-9 &&
                                         std::abs(eq.decisions.fare1 - eq2.decisions.fare2) < 1e-9,
                  "fee " + io::fmt6(eq.fee) + " vs " + io::fmt6(eq2.fee));
    }
    // beta1 > beta2 implies p1 > p2
    {
        DuopolyParams d = base;
        d.beta1 = 0.3;
        d.beta2 = 0.1;
        const auto dec = closed_form::duopoly_price_closed_form(d, 50.0);
        s.is_true("duopoly.fare_order", dec.fare1 > dec.fare2,
                  "p1 = " + io::fmt6(dec.fare1) + ", p2 = " + io::fmt6(dec.fare2));
        // joint solve equals the damped fixed point
        const auto fp = solver::duopoly_fixed_point(d, Structure::dcent, 50.0, cfg);
        const auto js = solver::duopoly_joint_solve(d, Structure::dcent, 50.0);
        const double gap = std::max(
            std::max(std::abs(fp.fare1 - js.fare1), std::abs(fp.fare2 - js.fare2)),
            std::max(std::abs(fp.theta1 - js.theta1), std::abs(fp.theta2 - js.theta2)));
        s.is_true("duopoly.joint_equals_fixed_point", gap < 1e-9, "max gap " + io::fmt6(gap));
        // the index-symmetric closed form matches the oracle; the literal
        // text does not (its second airline repeats first-airline terms)
        const double sym_err = std::max(std::abs(dec.fare2 - fp.fare2),
                                        std::abs(dec.theta2 - fp.theta2));
        const auto lit =
            closed_form::duopoly_price_closed_form(d, 50.0, closed_form::FormVariant::as_printed);
        const double lit_err = std::max(std::abs(lit.fare2 - fp.fare2),
                                        std::abs(lit.theta2 - fp.theta2));
        s.is_true("duopoly.form_adjudication.price", sym_err < 1e-6 * std::abs(fp.fare2) &&
                                                         lit_err > 1e-3,
                  "corrected err " + io::fmt6(sym_err) + ", literal err " + io::fmt6(lit_err));
    }
    // revenue sharing: corrected denominator matches the oracle, r = 1
    // collapses to the decentralised forms
    {
        DuopolyParams d = base;
        d.beta1 = d.beta2 = 0.2;
        d.r1 = d.r2 = 0.8;
        const auto fp = solver::duopoly_fixed_point(d, Structure::rsc, 50.0, cfg);
        const auto cfm = closed_form::duopoly_rsc_closed_form(d, 50.0);
        const auto lit =
            closed_form::duopoly_rsc_closed_form(d, 50.0, closed_form::FormVariant::as_printed);
        const double err = std::max(std::abs(cfm.fare1 - fp.fare1),
                                    std::abs(cfm.theta1 - fp.theta1));
        const double lit_err = std::abs(lit.fare1 - fp.fare1);
        s.is_true("duopoly.form_adjudication.rsc",
                  err < 1e-6 * std::abs(fp.fare1) && lit_err > 1e-3,
                  "corrected err " + io::fmt6(err) + ", literal err " + io::fmt6(lit_err));
        DuopolyParams d1 = d;
        d1.r1 = d1.r2 = 1.0;
        const auto back = closed_form::duopoly_rsc_closed_form(d1, 50.0);
        const auto dc = closed_form::duopoly_price_closed_form(d1, 50.0);
        s.is_true("duopoly.rsc_full_retention", std::abs(back.fare1 - dc.fare1) < 1e-9,
                  "p1 " + io::fmt6(back.fare1) + " vs " + io::fmt6(dc.fare1));
    }
    // greening competition: closed form matches the symmetric-convention
    // oracle; higher rival sensitivity raises the first airline's greening
    {
        DuopolyParams d = base;
        d.mode = DuopolyParams::Mode::greening;
        d.xi1 = 0.4;
        d.xi2 = 0.9;
        const auto dec = closed_form::duopoly_greening_closed_form(d, 50.0);
        const auto fp = solver::duopoly_fixed_point(d, Structure::dcent, 50.0, cfg);
        const double err = std::max(std::abs(dec.fare1 - fp.fare1),
                                    std::abs(dec.theta2 - fp.theta2));
        s.is_true("duopoly.greening_closed_form", err < 1e-6 * std::abs(fp.fare1),
                  "max err " + io::fmt6(err));
        s.is_true("duopoly.greening_gap", dec.theta1 - dec.theta2 > 0.0,
                  "theta1 - theta2 = " + io::fmt6(dec.theta1 - dec.theta2));
    }
}

inline void check_thresholds(detail::Suite& s, const RunConfig& rc) {
    // The published thresholds pair with the parameter-list revenue fraction
    // (0.82); the table-consistent 0.68 shifts the revenue-sharing zero to
    // about 0.25 and is reported for reference.
    const auto th = analysis::nonneg_profit_thresholds(rc.params, 0.82, rc.reservation);
    s.close("thresholds.mu_ltt", th.mu_ltt.value_or(-1.0), 0.31, 0.01);
    s.close("thresholds.mu_rsc", th.mu_rsc.value_or(-1.0), 0.165, 0.01);
    const auto alt = analysis::nonneg_profit_thresholds(rc.params, rc.psi, rc.reservation);
    s.is_true("thresholds.mu_rsc.configured_psi", alt.mu_rsc.has_value(),
              "psi=" + io::fmt6(rc.psi) + " zero at mu=" + io::fmt6(alt.mu_rsc.value_or(-1.0)));
}

inline void check_crossings(detail::Suite& s, const RunConfig& rc) {
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(i * 0.05);
    // the sweep-figure revenue fraction (0.82, parameter list) locates the
    // airline-profit crossing near 1.5
    const auto rsc = analysis::sweep(rc.params, ContractSpec::revenue_sharing(0.82), "xi", grid);
    const auto ltt =
        analysis::sweep(rc.params, ContractSpec::two_part_tariff(rc.reservation), "xi", grid);
    const auto csc = analysis::sweep(rc.params, ContractSpec::cost_sharing(), "xi", grid);
    std::vector<double> f, g, h;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        f.push_back(rsc.rows[i] ? *rsc.rows[i]->airline_profit : -1e300);
        g.push_back(ltt.rows[i] ? *ltt.rows[i]->airline_profit : -1e300);
        h.push_back(csc.rows[i] ? *csc.rows[i]->airline_profit : -1e300);
    }
    const auto crossings = analysis::find_crossings(grid, f, g);
    s.is_true("crossings.rsc_ltt", crossings.size() == 1 && std::abs(crossings[0] - 1.5) <= 0.3,
              crossings.empty() ? "no crossing found"
                                : "crossing at xi = " + io::fmt6(crossings[0]));
    const double peak = grid[analysis::find_peak(h)];
    s.close("crossings.csc_profit_peak", peak, 2.8, 0.3);
}

/// The full verification battery; deterministic given the seed.
inline VerifyReport run_verification(const RunConfig& rc, int oracle_target = 200) {
    VerifyReport rep;
    rep.seed = rc.seed;
    detail::Suite s(rep);
    check_tables(s, rc);
    check_efficiency(s, rc);
    check_oracle_equivalence(s, rc, oracle_target);
    check_propositions(s, rc);
    check_tax_game(s, rc);
    check_duopoly(s, rc);
    check_thresholds(s, rc);
    check_crossings(s, rc);
    return rep;
}

} // namespace aircoord::verify
