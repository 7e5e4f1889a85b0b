#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "aircoord/model.hpp"

namespace aircoord::solver {

struct SolverConfig {
    double outer_tol = 1e-10;  ///< convergence tolerance on the leader variable
    double foc_tol = 1e-8;     ///< acceptance threshold on follower FOC residuals
    /// Search interval for the conveyance fee; defaults to
    /// [-2 c_AP, 4 c_AP] and widens on boundary hits.
    std::optional<std::pair<double, double>> fee_bracket;
    int max_refinements = 8;
    double damping = 0.5;      ///< fixed-point damping for duopoly iteration
    int max_iterations = 100000;
    int grid_points = 41;      ///< bracket seeding resolution

    void validate() const {
        if (!(outer_tol > 0.0) || !(foc_tol > 0.0))
            throw ModelError("solver tolerances must be positive");
        if (!(damping > 0.0 && damping <= 1.0))
            throw ModelError("damping must lie in (0, 1]");
    }
};

namespace detail {

inline constexpr double kGolden = 0.6180339887498949;

/// Derivative-free maximization of a unimodal function on [lo, hi];
/// terminates on bracket width, not objective change.
template <class F>
double golden_section_max(F&& f, double lo, double hi, double xtol, int max_iter = 400) {
    double a = lo, b = hi;
    double c1 = b - kGolden * (b - a);
    double c2 = a + kGolden * (b - a);
    double f1 = f(c1), f2 = f(c2);
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        if (f1 < f2) {
            a = c1;
            c1 = c2; f1 = f2;
            c2 = a + kGolden * (b - a); f2 = f(c2);
        } else {
            b = c2;
            c2 = c1; f2 = f1;
            c1 = b - kGolden * (b - a); f1 = f(c1);
        }
    }
    return 0.5 * (a + b);
}

template <class F>
auto guard_infeasible(F&& objective) {
    return [f = std::forward<F>(objective)](double x) {
        try {
            return f(x);
        } catch (const ModelError&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
}

/// Sharpens a derivative-free argmax by bisecting the sign of a fourth-order
/// central difference of the objective. Near a flat top the sign of the
/// slope stays resolvable long after value comparisons drown in rounding.
/// `h_cap` bounds the stencil so every evaluation stays in a feasible region.
template <class F>
double derivative_polish(F&& f, double x, double span,
                         double h_cap = std::numeric_limits<double>::infinity()) {
    const double h = std::min(1e-2 * std::max(1.0, std::abs(x)), h_cap);
    if (!(h > 0.0) || !(span > 0.0)) return x;
    const auto slope = [&](double w) {
        return (f(w - 2.0 * h) - 8.0 * f(w - h) + 8.0 * f(w + h) - f(w + 2.0 * h)) /
               (12.0 * h);
    };
    double lo = x - span, hi = x + span;
    if (!(slope(lo) > 0.0 && slope(hi) < 0.0)) return x;
    for (int i = 0; i < 80 && hi - lo > 1e-12 * std::max(1.0, std::abs(x)); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double sm = slope(mid);
        if (!std::isfinite(sm)) return 0.5 * (lo + hi);
        (sm > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Grid-seeded bracketed search: evaluate a coarse grid, widen the interval
/// while the best point sits on its edge, then refine by golden section and
/// a parabolic polish.
template <class F>
double leader_search(F&& objective, const SolverConfig& cfg, double lo, double hi) {
    const auto safe = guard_infeasible(std::forward<F>(objective));
    const int n = std::max(cfg.grid_points, 5);
    for (int round = 0;; ++round) {
        int best = 0;
        double best_val = -std::numeric_limits<double>::infinity();
        const double step = (hi - lo) / (n - 1);
        for (int i = 0; i < n; ++i) {
            const double v = safe(lo + i * step);
            if (v > best_val) { best_val = v; best = i; }
        }
        if (best_val == -std::numeric_limits<double>::infinity())
            throw SolverError("leader search: objective infeasible on the whole bracket");
        if (best != 0 && best != n - 1) {
            const double w = golden_section_max(safe, lo + (best - 1) * step,
                                                lo + (best + 1) * step, cfg.outer_tol);
            return derivative_polish(safe, w, 0.5 * step);
        }
        if (round >= cfg.max_refinements)
            throw SolverError("leader search: bracket exhausted after refinements");
        const double mid = 0.5 * (lo + hi), half = (hi - lo);
        lo = mid - half;
        hi = mid + half;
    }
}

/// Like leader_search but the interval is a hard constraint (used for
/// fractions that live in [0, 1)); boundary optima are legal.
template <class F>
double bounded_search(F&& objective, const SolverConfig& cfg, double lo, double hi) {
    const auto safe = guard_infeasible(std::forward<F>(objective));
    const int n = std::max(cfg.grid_points, 5);
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double v = safe(lo + i * step);
        if (v > best_val) { best_val = v; best = i; }
    }
    if (best_val == -std::numeric_limits<double>::infinity())
        throw SolverError("bounded search: objective infeasible on the whole interval");
    const double a = std::max(lo, lo + (best - 1) * step);
    const double b = std::min(hi, lo + (best + 1) * step);
    const double x = golden_section_max(safe, a, b, cfg.outer_tol);
    const double room = std::min(x - lo, hi - x);
    if (!(room > 0.0)) return x;
    const double h_cap = room / 4.0;
    return derivative_polish(safe, x, std::min(0.5 * step, 2.0 * h_cap), h_cap);
}

inline std::pair<double, double> fee_bounds(const ChannelParams& pr, const SolverConfig& cfg) {
    if (cfg.fee_bracket) return *cfg.fee_bracket;
    const double scale = std::max(std::abs(pr.cost_airport), 1.0);
    return {-2.0 * scale, 4.0 * scale};
}

struct Linear2x2 {
    double a11, a12, a21, a22, b1, b2;
};

inline std::pair<double, double> solve2x2(const Linear2x2& s, const char* what) {
    const double det = s.a11 * s.a22 - s.a12 * s.a21;
    if (std::abs(det) < 1e-14)
        throw SolverError(std::string(what) + ": singular first-order system");
    return {(s.b1 * s.a22 - s.a12 * s.b2) / det, (s.a11 * s.b2 - s.b1 * s.a21) / det};
}

} // namespace detail

/// Fare/greening pair a follower picks.
struct BestResponse {
    double fare = 0.0;
    double theta = 0.0;
};

/// The airline's best response to a conveyance fee: the unique stationary
/// point of its concave objective, solved from the two linear first-order
/// conditions. `tax_term` is the active-penalty shift (+t), zero otherwise.
inline BestResponse airline_best_response_core(const ChannelParams& pr, const ContractSpec& ct,
                                               double fee, double tax_term) {
    const double A = pr.net_potential();
    const double I = pr.invest_cost, xi = pr.xi, beta = pr.beta;
    switch (ct.kind) {
        case Structure::dcent:
        case Structure::ltt: {
            const double denom = 2.0 * beta - xi * xi / (2.0 * I);
            if (!(denom > 0.0)) throw SolverError("no best response: airline Hessian indefinite");
            const double m = (A - beta * (fee + pr.cost_airline) + xi * tax_term / (2.0 * I)) / denom;
            return {m + fee + pr.cost_airline, (xi * m + tax_term) / (2.0 * I)};
        }
        case Structure::csc: {
            const double phi = ct.phi.value_or(1.0 / 3.0);
            const double k = 2.0 * I * (1.0 - phi);
            const double denom = 2.0 * beta - xi * xi / k;
            if (!(denom > 0.0))
                throw SolverError("no best response: CSC airline Hessian indefinite");
            const double m = (A - beta * (fee + pr.cost_airline) + xi * tax_term / k) / denom;
            return {m + fee + pr.cost_airline, (xi * m + tax_term) / k};
        }
        case Structure::rsc: {
            const double psi = *ct.psi;
            const double denom = 2.0 * beta - xi * xi / (2.0 * I);
            if (!(denom > 0.0)) throw SolverError("no best response: airline Hessian indefinite");
            const double m = (psi * A - beta * (fee + pr.cost_airline) +
                              xi * tax_term / (2.0 * I)) / denom;
            return {(m + fee + pr.cost_airline) / psi, (xi * m + tax_term) / (2.0 * psi * I)};
        }
        case Structure::cent:
            throw ModelError("the centralised benchmark has no follower");
    }
    throw ModelError("unknown structure");
}

inline BestResponse airline_best_response(const ChannelParams& pr, const ContractSpec& ct,
                                          double fee) {
    return airline_best_response_core(pr, ct, fee, 0.0);
}

/// Piecewise best response across the tax kink at theta = f*theta0: solve the
/// penalized branch, solve the tax-free branch, discard region-inconsistent
/// candidates, return the profit-maximal consistent one (ties toward the
/// penalty-active branch); if neither is consistent the optimum sits on the
/// kink itself.
inline BestResponse airline_best_response_taxed(const ChannelParams& pr, const ContractSpec& ct,
                                                double fee, const TaxPolicy& tax) {
    if (tax.level == 0.0) return airline_best_response(pr, ct, fee);
    const ContractSpec taxed = ct.with_tax(tax);
    const double kink = pr.freq * tax.target_theta;

    std::optional<BestResponse> best;
    double best_profit = -std::numeric_limits<double>::infinity();
    const auto consider = [&](const BestResponse& cand, double preference) {
        const double profit =
            airline_profit(pr, taxed, fee, cand.fare, cand.theta) + preference;
        if (profit > best_profit) { best_profit = profit; best = cand; }
    };

    const BestResponse active = airline_best_response_core(pr, ct, fee, tax.level);
    if (active.theta < kink) consider(active, 1e-12);  // tie-break toward the active branch
    const BestResponse free = airline_best_response_core(pr, ct, fee, 0.0);
    if (free.theta >= kink) consider(free, 0.0);

    if (!best) {
        // boundary solution: theta pinned at the kink, fare from the fare FOC
        const double A = pr.net_potential();
        const double share = ct.kind == Structure::rsc ? *ct.psi : 1.0;
        const double fare = (share * (A + pr.xi * kink) + pr.beta * (fee + pr.cost_airline)) /
                            (2.0 * pr.beta * share);
        best = BestResponse{fare, kink};
    }
    return *best;
}

namespace detail {

/// Centralised welfare maximiser: 2x2 linear FOC solve. `tax_term` is the
/// penalty-branch shift on the greening condition.
inline BestResponse cent_point(const ChannelParams& pr, double tax_term) {
    const double A = pr.net_potential();
    const double beta = pr.beta, xi = pr.xi, mu = pr.mu, I = pr.invest_cost;
    const double net_cost = pr.w_prime - pr.cost_airport - pr.cost_airline;
    Linear2x2 s;
    s.a11 = -beta * (2.0 - 3.0 * mu);
    s.a12 = (1.0 - 2.0 * mu) * xi;
    s.b1 = -(1.0 - 2.0 * mu) * A + (1.0 - mu) * beta * net_cost;
    s.a21 = xi * (1.0 - 2.0 * mu);
    s.a22 = -2.0 * I * (1.0 - mu) + mu * xi * xi / beta;
    s.b2 = -(1.0 - mu) * xi * net_cost - mu * xi * A / beta - (1.0 - mu) * tax_term;
    const auto [fare, theta] = solve2x2(s, "centralised solve");
    return {fare, theta};
}

inline BestResponse cent_point_taxed(const ChannelParams& pr, const TaxPolicy& tax) {
    if (tax.level == 0.0) return cent_point(pr, 0.0);
    const double kink = pr.freq * tax.target_theta;
    std::optional<BestResponse> best;
    double best_val = -std::numeric_limits<double>::infinity();
    const auto consider = [&](const BestResponse& cand, double preference) {
        const double v = social_welfare_taxed(pr, tax, cand.fare, cand.theta) + preference;
        if (v > best_val) { best_val = v; best = cand; }
    };
    const BestResponse active = cent_point(pr, tax.level);
    if (active.theta < kink) consider(active, 1e-12);
    const BestResponse free = cent_point(pr, 0.0);
    if (free.theta >= kink) consider(free, 0.0);
    if (!best) {
        const double A = pr.net_potential();
        const double net_cost = pr.w_prime - pr.cost_airport - pr.cost_airline;
        const double fare = ((1.0 - 2.0 * pr.mu) * (A + pr.xi * kink) -
                             (1.0 - pr.mu) * pr.beta * net_cost) /
                            (pr.beta * (2.0 - 3.0 * pr.mu));
        best = BestResponse{fare, kink};
    }
    return *best;
}

using aircoord::detail::make_equilibrium;

inline void leader_certificate(Equilibrium& eq, const std::function<double(double)>& utility,
                               double w_star) {
    const double step = std::max(1e-6, 1e-6 * std::abs(w_star));
    const double at = utility(w_star);
    const double slack = 1e-7 * std::max(1.0, std::abs(at));
    eq.diag.leader_certified =
        at >= utility(w_star - step) - slack && at >= utility(w_star + step) - slack;
}

/// Shared backward-induction driver; `tax` may be null for the untaxed game.
inline Equilibrium solve_impl(const ChannelParams& pr, const ContractSpec& contract,
                              const TaxPolicy* tax, const SolverConfig& cfg) {
    pr.validate();
    contract.validate();
    cfg.validate();
    const ContractSpec ct = tax ? contract.with_tax(*tax) : contract;
    const auto cc = concavity_check(pr);
    const auto [w_lo, w_hi] = fee_bounds(pr, cfg);

    const auto follower = [&](const ContractSpec& c, double w) {
        return tax ? airline_best_response_taxed(pr, c, w, *tax)
                   : airline_best_response(pr, c, w);
    };

    switch (ct.kind) {
        case Structure::cent: {
            if (!cc.centralised_ok)
                throw InfeasibleError("centralised concavity violated");
            const BestResponse pt = tax ? cent_point_taxed(pr, *tax) : cent_point(pr, 0.0);
            return make_equilibrium(pr, ct, Method::numeric, {}, pt.fare, pt.theta);
        }
        case Structure::dcent: {
            const auto utility = [&](double w) {
                const BestResponse br = follower(ct, w);
                return airport_utility(pr, ct, w, br.fare, br.theta);
            };
            const double w = leader_search(utility, cfg, w_lo, w_hi);
            const BestResponse br = follower(ct, w);
            Equilibrium eq = make_equilibrium(pr, ct, Method::numeric, w, br.fare, br.theta);
            leader_certificate(eq, utility, w);
            return eq;
        }
        case Structure::csc: {
            const double phi_cap = 1.0 - pr.xi * pr.xi / (4.0 * pr.beta * pr.invest_cost);
            const double phi_hi = std::max(0.0, std::min(0.999999, phi_cap - 1e-9));
            const auto utility_at = [&](double w, double phi) {
                ContractSpec c = ct;
                c.phi = phi;
                const BestResponse br = follower(c, w);
                return airport_utility(pr, c, w, br.fare, br.theta);
            };
            const auto inner_w = [&](double phi) {
                return leader_search([&](double w) { return utility_at(w, phi); }, cfg, w_lo,
                                     w_hi);
            };
            const double phi_star =
                ct.phi ? *ct.phi
                       : bounded_search(
                             [&](double phi) { return utility_at(inner_w(phi), phi); }, cfg,
                             0.0, phi_hi);
            ContractSpec c = ct;
            c.phi = phi_star;
            const auto utility = [&](double w) { return utility_at(w, phi_star); };
            const double w = leader_search(utility, cfg, w_lo, w_hi);
            const BestResponse br = follower(c, w);
            Equilibrium eq =
                make_equilibrium(pr, c, Method::numeric, w, br.fare, br.theta, {}, phi_star);
            leader_certificate(eq, utility, w);
            return eq;
        }
        case Structure::rsc: {
            if (!cc.centralised_ok)
                throw InfeasibleError("centralised concavity violated (RSC coordinates on it)");
            const BestResponse pt = tax ? cent_point_taxed(pr, *tax) : cent_point(pr, 0.0);
            const double q = demand(pr, pt.fare, pt.theta);
            // coordinating fee: the fare FOC holds at the benchmark point
            const double w = *ct.psi * (pt.fare - q / pr.beta) - pr.cost_airline;
            return make_equilibrium(pr, ct, Method::numeric, w, pt.fare, pt.theta);
        }
        case Structure::ltt: {
            if (!cc.centralised_ok)
                throw InfeasibleError("centralised concavity violated (LTT coordinates on it)");
            const double reservation = *ct.reservation;
            const auto gross_at = [&](double w, const BestResponse& br) {
                double g = (br.fare - w - pr.cost_airline) * demand(pr, br.fare, br.theta) -
                           pr.landing_fee * pr.freq - pr.invest_cost * br.theta * br.theta;
                if (tax) g -= gtr(*tax, pr.freq, br.theta);
                return g;
            };
            const auto utility = [&](double w) {
                const BestResponse br = follower(ct, w);
                const double lump = gross_at(w, br) - reservation;
                return airport_utility(pr, ct, w, br.fare, br.theta, lump);
            };
            const double w = leader_search(utility, cfg, w_lo, w_hi);
            const BestResponse br = follower(ct, w);
            const double gross = gross_at(w, br);
            if (gross < reservation)
                throw InfeasibleError("LTT reservation profit exceeds the airline's gross surplus");
            Equilibrium eq = make_equilibrium(pr, ct, Method::numeric, w, br.fare, br.theta,
                                              gross - reservation);
            eq.airline_profit = reservation;
            leader_certificate(eq, utility, w);
            return eq;
        }
    }
    throw ModelError("unknown structure");
}

} // namespace detail

/// Backward-induction solve of the untaxed game.
inline Equilibrium solve_contract(const ChannelParams& pr, const ContractSpec& ct,
                                  const SolverConfig& cfg = {}) {
    return detail::solve_impl(pr, ct, nullptr, cfg);
}

/// Three-stage game at a fixed tax level; t = 0 collapses to the untaxed solve.
inline Equilibrium solve_with_tax(const ChannelParams& pr, const ContractSpec& ct,
                                  const TaxPolicy& tax, const SolverConfig& cfg = {}) {
    tax.validate();
    if (tax.level == 0.0) return solve_contract(pr, ct, cfg);
    return detail::solve_impl(pr, ct, &tax, cfg);
}

/// Revenue-maximizing tax level over a grid, with a parabolic refinement
/// around the best interior grid point, plus the full curve.
struct OptimalTax {
    double t_star = 0.0;
    double gtr_star = 0.0;
    std::vector<double> grid;
    std::vector<Equilibrium> rows;
    bool unimodal = true;
};

inline OptimalTax optimal_tax(const ChannelParams& pr, const ContractSpec& ct, double theta0,
                              const std::vector<double>& t_grid, const SolverConfig& cfg = {}) {
    if (t_grid.empty()) throw ModelError("optimal_tax: empty grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] < 0.0) throw ModelError("optimal_tax: negative tax level");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
            throw ModelError("optimal_tax: grid must be strictly increasing");
    }
    OptimalTax out;
    out.grid = t_grid;
    out.rows.reserve(t_grid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        out.rows.push_back(solve_with_tax(pr, ct, {t_grid[i], theta0}, cfg));
        if (out.rows[i].tax_revenue > out.rows[best].tax_revenue) best = i;
    }
    out.t_star = t_grid[best];
    out.gtr_star = out.rows[best].tax_revenue;

    // single rise-then-fall shape (monotone counts, with a small slack)
    const double slack = 1e-9 * std::max(1.0, out.gtr_star);
    bool falling = false;
    for (std::size_t i = 1; i < out.rows.size(); ++i) {
        const double d = out.rows[i].tax_revenue - out.rows[i - 1].tax_revenue;
        if (d < -slack) falling = true;
        else if (d > slack && falling) { out.unimodal = false; break; }
    }

    if (best > 0 && best + 1 < t_grid.size()) {
        const double x0 = t_grid[best - 1], x1 = t_grid[best], x2 = t_grid[best + 1];
        const double y0 = out.rows[best - 1].tax_revenue, y1 = out.rows[best].tax_revenue,
                     y2 = out.rows[best + 1].tax_revenue;
        const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
        if (std::abs(denom) > 0.0) {
            const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
            const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) /
                             denom;
            if (a < 0.0) {
                const double vertex = std::clamp(-b / (2.0 * a), x0, x2);
                const Equilibrium refined = solve_with_tax(pr, ct, {vertex, theta0}, cfg);
                if (refined.tax_revenue >= out.gtr_star) {
                    out.t_star = vertex;
                    out.gtr_star = refined.tax_revenue;
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Duopoly: simultaneous airline stage under a common conveyance fee.

namespace detail {

inline void check_duopoly_soc(const DuopolyParams& d, Structure kind) {
    const double r = kind == Structure::rsc ? std::max(d.r1, d.r2) : 1.0;
    if (!(4.0 * d.beta * d.invest_cost > r * d.xi * d.xi))
        throw SolverError("duopoly airline Hessian indefinite");
}

inline double duopoly_demand(const DuopolyParams& d, const DuopolyDecision& dec, int which) {
    const double own_fare = which == 1 ? dec.fare1 : dec.fare2;
    const double own_theta = which == 1 ? dec.theta1 : dec.theta2;
    if (d.mode == DuopolyParams::Mode::price) {
        const double cross = which == 1 ? d.beta1 * dec.fare2 : d.beta2 * dec.fare1;
        return d.alpha - d.beta * own_fare + d.xi * own_theta + cross;
    }
    const double rival_theta = which == 1 ? dec.theta2 : dec.theta1;
    double cross = which == 1 ? -d.xi1 * rival_theta : -d.xi2 * rival_theta;
    if (which == 2 && d.convention == DuopolyParams::GreeningConvention::asymmetric)
        cross = d.xi2 * rival_theta;
    return d.alpha - d.beta * own_fare + d.xi * own_theta + cross;
}

/// One airline's linear best response to the rival's current decision.
inline std::pair<double, double> duopoly_best_response(const DuopolyParams& d, Structure kind,
                                                       double fee, const DuopolyDecision& dec,
                                                       int which) {
    const double r = kind == Structure::rsc ? (which == 1 ? d.r1 : d.r2) : 1.0;
    const double denom = 2.0 * d.beta - r * d.xi * d.xi / (2.0 * d.invest_cost);
    double cross;
    if (d.mode == DuopolyParams::Mode::price) {
        cross = which == 1 ? d.beta1 * dec.fare2 : d.beta2 * dec.fare1;
    } else {
        const double rival_theta = which == 1 ? dec.theta2 : dec.theta1;
        cross = which == 1 ? -d.xi1 * rival_theta : -d.xi2 * rival_theta;
        if (which == 2 && d.convention == DuopolyParams::GreeningConvention::asymmetric)
            cross = d.xi2 * rival_theta;
    }
    const double m = (r * (d.alpha + cross) - d.beta * fee) / denom;
    return {(m + fee) / r, d.xi * m / (2.0 * d.invest_cost)};
}

} // namespace detail

/// Damped simultaneous best-response iteration to the airline-stage Nash
/// point at fixed fee.
inline DuopolyDecision duopoly_fixed_point(const DuopolyParams& d, Structure kind, double fee,
                                           const SolverConfig& cfg = {}) {
    d.validate();
    detail::check_duopoly_soc(d, kind);
    DuopolyDecision dec{d.alpha / (2.0 * d.beta), d.alpha / (2.0 * d.beta), 0.0, 0.0};
    for (int it = 0; it < cfg.max_iterations; ++it) {
        const auto [p1, t1] = detail::duopoly_best_response(d, kind, fee, dec, 1);
        const auto [p2, t2] = detail::duopoly_best_response(d, kind, fee, dec, 2);
        const double move = std::max(std::max(std::abs(p1 - dec.fare1), std::abs(p2 - dec.fare2)),
                                     std::max(std::abs(t1 - dec.theta1), std::abs(t2 - dec.theta2)));
        dec.fare1 += cfg.damping * (p1 - dec.fare1);
        dec.fare2 += cfg.damping * (p2 - dec.fare2);
        dec.theta1 += cfg.damping * (t1 - dec.theta1);
        dec.theta2 += cfg.damping * (t2 - dec.theta2);
        if (!std::isfinite(dec.fare1) || !std::isfinite(dec.fare2))
            throw SolverError("duopoly iteration diverged");
        if (move < cfg.outer_tol) {
            dec.fare1 = p1; dec.fare2 = p2; dec.theta1 = t1; dec.theta2 = t2;
            return dec;
        }
    }
    throw SolverError("duopoly iteration did not contract");
}

/// Direct solve of the joint four-equation FOC system, reduced to the two
/// margins m_i = r_i p_i - w; each airline's greening follows its own
/// condition theta_i = xi m_i / (2I).
inline DuopolyDecision duopoly_joint_solve(const DuopolyParams& d, Structure kind, double fee) {
    d.validate();
    detail::check_duopoly_soc(d, kind);
    const double I = d.invest_cost, xi = d.xi, beta = d.beta, w = fee;
    const double r1 = kind == Structure::rsc ? d.r1 : 1.0;
    const double r2 = kind == Structure::rsc ? d.r2 : 1.0;
    const double D1 = 2.0 * beta - r1 * xi * xi / (2.0 * I);
    const double D2 = 2.0 * beta - r2 * xi * xi / (2.0 * I);
    detail::Linear2x2 s;
    if (d.mode == DuopolyParams::Mode::price) {
        // cross term of airline i is beta_i p_j = beta_i (m_j + w) / r_j
        s = {D1, -r1 * d.beta1 / r2, -r2 * d.beta2 / r1, D2,
             r1 * d.alpha - beta * w + r1 * d.beta1 * w / r2,
             r2 * d.alpha - beta * w + r2 * d.beta2 * w / r1};
    } else {
        const double sign2 =
            d.convention == DuopolyParams::GreeningConvention::asymmetric ? -1.0 : 1.0;
        // cross term is -xi_i theta_j with theta_j = xi m_j / (2I)
        s = {D1, r1 * d.xi1 * xi / (2.0 * I), sign2 * r2 * d.xi2 * xi / (2.0 * I), D2,
             r1 * d.alpha - beta * w, r2 * d.alpha - beta * w};
    }
    const auto [m1, m2] = detail::solve2x2(s, "duopoly joint solve");
    return {(m1 + w) / r1, (m2 + w) / r2, xi * m1 / (2.0 * I), xi * m2 / (2.0 * I)};
}

/// Full duopoly game: outer search over the common fee maximizing the
/// airport's utility over both airlines' traffic.
inline DuopolyEquilibrium duopoly_solve(const DuopolyParams& d, Structure kind,
                                        const SolverConfig& cfg = {}) {
    d.validate();
    if (kind != Structure::dcent && kind != Structure::rsc)
        throw ModelError("duopoly supports the decentralised and revenue-sharing structures");
    detail::check_duopoly_soc(d, kind);

    const auto evaluate = [&](double w) {
        const DuopolyDecision dec = duopoly_joint_solve(d, kind, w);
        const double q1 = detail::duopoly_demand(d, dec, 1);
        const double q2 = detail::duopoly_demand(d, dec, 2);
        double profit = (w + d.w_prime - d.cost_airport) * (q1 + q2) + d.landing_income;
        if (kind == Structure::rsc)
            profit += (1.0 - d.r1) * dec.fare1 * q1 + (1.0 - d.r2) * dec.fare2 * q2;
        const double cs = (q1 + q2) * (q1 + q2) / (2.0 * d.beta);
        return std::tuple{(1.0 - d.mu) * profit + d.mu * cs, profit, q1, q2, dec};
    };
    const auto utility = [&](double w) {
        const auto [u, profit, q1, q2, dec] = evaluate(w);
        if (q1 <= 0.0 || q2 <= 0.0) return -std::numeric_limits<double>::infinity();
        return u;
    };
    const double scale = std::max(std::abs(d.cost_airport), 1.0);
    const auto [lo, hi] = cfg.fee_bracket.value_or(std::pair{-2.0 * scale, 4.0 * scale});
    const double w = detail::leader_search(utility, cfg, lo, hi);
    const auto [u, profit, q1, q2, dec] = evaluate(w);

    DuopolyEquilibrium eq;
    eq.structure = kind;
    eq.fee = w;
    eq.decisions = dec;
    eq.demand1 = q1;
    eq.demand2 = q2;
    const double r1 = kind == Structure::rsc ? d.r1 : 1.0;
    const double r2 = kind == Structure::rsc ? d.r2 : 1.0;
    eq.airline_profit1 =
        r1 * dec.fare1 * q1 - w * q1 - d.invest_cost * dec.theta1 * dec.theta1;
    eq.airline_profit2 =
        r2 * dec.fare2 * q2 - w * q2 - d.invest_cost * dec.theta2 * dec.theta2;
    eq.airport_profit = profit;
    eq.airport_utility = u;
    return eq;
}

} // namespace aircoord::solver
