#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "aircoord/types.hpp"

namespace aircoord {

/// Passenger demand q = alpha - beta*p - gamma/f + xi*theta.
/// May be negative; feasibility is the caller's concern.
inline double demand(const ChannelParams& pr, double fare, double theta) {
    if (!(pr.freq > 0.0))
        throw ModelError("demand undefined: flight frequency must be positive");
    return pr.alpha - pr.beta * fare - pr.gamma / pr.freq + pr.xi * theta;
}

/// Government tax revenue t * (f*theta0 - theta)^+.
inline double gtr(const TaxPolicy& tax, double freq, double theta) {
    if (tax.level < 0.0) throw ModelError("tax level must be nonnegative");
    return tax.level * std::max(freq * tax.target_theta - theta, 0.0);
}

/// Unweighted consumer surplus q^2 / (2*beta).
inline double consumer_surplus(const ChannelParams& pr, double q) {
    if (q < 0.0) throw InfeasibleError("consumer surplus undefined for negative demand");
    return q * q / (2.0 * pr.beta);
}

/// Airline profit under the given contract at an arbitrary decision point.
///
/// Revenue is p*q, except psi*p*q under RSC. The airline pays the greening
/// investment (share 1-phi under CSC), the landing fee, the conveyance fee,
/// operating cost, the LTT lump sum, and the tax penalty when a policy is set.
inline double airline_profit(const ChannelParams& pr, const ContractSpec& ct,
                             double fee, double fare, double theta, double lump_sum = 0.0) {
    const double q = demand(pr, fare, theta);
    const double revenue = (ct.kind == Structure::rsc ? *ct.psi : 1.0) * fare * q;
    const double green_share = (ct.kind == Structure::csc && ct.phi) ? 1.0 - *ct.phi : 1.0;
    double profit = revenue - green_share * pr.invest_cost * theta * theta -
                    pr.landing_fee * pr.freq - fee * q - pr.cost_airline * q;
    if (ct.kind == Structure::ltt) profit -= lump_sum;
    if (ct.tax) profit -= gtr(*ct.tax, pr.freq, theta);
    return profit;
}

/// Airport profit: landing fee plus aeronautical and non-aeronautical margin,
/// adjusted by the contract's transfer (CSC greening share, RSC revenue share,
/// LTT lump sum).
inline double airport_profit(const ChannelParams& pr, const ContractSpec& ct,
                             double fee, double fare, double theta, double lump_sum = 0.0) {
    const double q = demand(pr, fare, theta);
    double profit = pr.landing_fee * pr.freq + (fee + pr.w_prime) * q - pr.cost_airport * q;
    if (ct.kind == Structure::csc && ct.phi) profit -= *ct.phi * pr.invest_cost * theta * theta;
    if (ct.kind == Structure::rsc) profit += (1.0 - *ct.psi) * fare * q;
    if (ct.kind == Structure::ltt) profit += lump_sum;
    return profit;
}

/// Airport utility (1-mu)*profit + mu*q^2/(2*beta).
inline double airport_utility(const ChannelParams& pr, const ContractSpec& ct,
                              double fee, double fare, double theta, double lump_sum = 0.0) {
    const double q = demand(pr, fare, theta);
    return (1.0 - pr.mu) * airport_profit(pr, ct, fee, fare, theta, lump_sum) +
           pr.mu * consumer_surplus(pr, std::max(q, 0.0));
}

/// The welfare functional used to score every structure:
/// (1-mu)*((p + w' - c_AP - c_AL)q - I theta^2) + mu q^2/(2 beta).
inline double social_welfare(const ChannelParams& pr, double fare, double theta) {
    const double q = demand(pr, fare, theta);
    const double margin = fare + pr.w_prime - pr.cost_airport - pr.cost_airline;
    return (1.0 - pr.mu) * (margin * q - pr.invest_cost * theta * theta) +
           pr.mu * q * q / (2.0 * pr.beta);
}

/// Taxed welfare functional: the tax penalty is a channel loss.
inline double social_welfare_taxed(const ChannelParams& pr, const TaxPolicy& tax,
                                   double fare, double theta) {
    return social_welfare(pr, fare, theta) - (1.0 - pr.mu) * gtr(tax, pr.freq, theta);
}

/// Channel profit (airline + airport before the CSR weighting); internal
/// transfers (fee, landing fee, shares, lump sum) cancel.
inline double channel_profit(const ChannelParams& pr, double fare, double theta) {
    const double q = demand(pr, fare, theta);
    const double margin = fare + pr.w_prime - pr.cost_airport - pr.cost_airline;
    return margin * q - pr.invest_cost * theta * theta;
}

/// Derivative of the airline objective with respect to the fare at (p, theta).
/// The tax penalty has no fare dependence, so this is contract-complete.
inline double airline_fare_foc(const ChannelParams& pr, const ContractSpec& ct,
                               double fee, double fare, double theta) {
    const double q = demand(pr, fare, theta);
    const double share = ct.kind == Structure::rsc ? *ct.psi : 1.0;
    return share * q - pr.beta * (share * fare - fee - pr.cost_airline);
}

/// Derivative of the airline's greening condition at (p, theta). Under CSC
/// the airline bears share (1-phi) of the investment; under RSC the greening
/// condition scales with psi, the form the revenue-sharing equilibrium is
/// built on. An active tax (theta below the f*theta0 target) adds +t.
inline double airline_greening_foc(const ChannelParams& pr, const ContractSpec& ct,
                                   double fee, double fare, double theta) {
    const double share = ct.kind == Structure::rsc ? *ct.psi : 1.0;
    const double margin = share * fare - fee - pr.cost_airline;
    double green_coef = pr.invest_cost;
    if (ct.kind == Structure::csc && ct.phi) green_coef *= 1.0 - *ct.phi;
    if (ct.kind == Structure::rsc) green_coef *= *ct.psi;
    double foc = pr.xi * margin - 2.0 * green_coef * theta;
    if (ct.tax && theta < pr.freq * ct.tax->target_theta) foc += ct.tax->level;
    return foc;
}

/// First-order conditions of the welfare functional (the centralised game).
inline double welfare_fare_foc(const ChannelParams& pr, double fare, double theta) {
    const double q = demand(pr, fare, theta);
    const double margin = fare + pr.w_prime - pr.cost_airport - pr.cost_airline;
    return (1.0 - 2.0 * pr.mu) * q - (1.0 - pr.mu) * pr.beta * margin;
}

inline double welfare_greening_foc(const ChannelParams& pr, double fare, double theta,
                                   const TaxPolicy* tax = nullptr) {
    const double q = demand(pr, fare, theta);
    const double margin = fare + pr.w_prime - pr.cost_airport - pr.cost_airline;
    double foc = (1.0 - pr.mu) * (pr.xi * margin - 2.0 * pr.invest_cost * theta) +
                 pr.mu * pr.xi * q / pr.beta;
    if (tax && theta < pr.freq * tax->target_theta) foc += (1.0 - pr.mu) * tax->level;
    return foc;
}

struct ConcavityReport {
    bool centralised_ok = false;    ///< I > xi^2(1-mu) / (2 beta (2-3mu)) and mu in [0, 2/3)
    double centralised_threshold = 0.0;
    bool airline_ok = false;        ///< 4 beta I > xi^2 (strict)
    double airline_lhs = 0.0;
    double airline_rhs = 0.0;
};

/// Joint concavity of the centralised objective and the airline Hessian
/// condition, with the threshold values for reporting.
inline ConcavityReport concavity_check(const ChannelParams& pr) {
    ConcavityReport r;
    const bool mu_ok = pr.mu >= 0.0 && pr.mu < 2.0 / 3.0;
    r.centralised_threshold =
        mu_ok ? pr.xi * pr.xi * (1.0 - pr.mu) / (2.0 * pr.beta * (2.0 - 3.0 * pr.mu))
              : std::numeric_limits<double>::infinity();
    r.centralised_ok = mu_ok && pr.invest_cost > r.centralised_threshold;
    r.airline_lhs = 4.0 * pr.beta * pr.invest_cost;
    r.airline_rhs = pr.xi * pr.xi;
    r.airline_ok = r.airline_lhs > r.airline_rhs;
    return r;
}

namespace detail {

/// Assembles a full Equilibrium record from the decision variables,
/// evaluating profits, utility, surplus and welfare with the functionals
/// above. Nonpositive demand is infeasible by the reporting contract.
inline Equilibrium make_equilibrium(const ChannelParams& pr, const ContractSpec& ct,
                                    Method method, std::optional<double> fee, double fare,
                                    double theta, std::optional<double> lump_sum = {},
                                    std::optional<double> cost_share = {}) {
    Equilibrium eq;
    eq.structure = ct.kind;
    eq.method = method;
    eq.fee = fee;
    eq.fare = fare;
    eq.theta = theta;
    eq.demand = demand(pr, fare, theta);
    eq.lump_sum = lump_sum;
    eq.cost_share = cost_share;
    if (!(eq.demand > 0.0))
        throw InfeasibleError(std::string(to_string(ct.kind)) + ": nonpositive demand");

    eq.tax_revenue = ct.tax ? gtr(*ct.tax, pr.freq, theta) : 0.0;
    eq.consumer_surplus = consumer_surplus(pr, eq.demand);
    eq.welfare = social_welfare(pr, fare, theta);
    eq.total_profit = channel_profit(pr, fare, theta) - eq.tax_revenue;

    const double lump = lump_sum.value_or(0.0);
    if (ct.kind == Structure::cent) {
        eq.diag.foc_residual = std::max(
            std::abs(welfare_fare_foc(pr, fare, theta)),
            std::abs(welfare_greening_foc(pr, fare, theta, ct.tax ? &*ct.tax : nullptr)));
    } else {
        eq.airline_profit = airline_profit(pr, ct, *fee, fare, theta, lump);
        eq.airport_profit = airport_profit(pr, ct, *fee, fare, theta, lump);
        eq.airport_utility = airport_utility(pr, ct, *fee, fare, theta, lump);
        double fare_res = std::abs(airline_fare_foc(pr, ct, *fee, fare, theta));
        double green_res = std::abs(airline_greening_foc(pr, ct, *fee, fare, theta));
        // Under an active tax the revenue-sharing greening level is
        // contractual (pinned to the taxed benchmark), so only the fare
        // condition binds on the airline.
        if (ct.kind == Structure::rsc && ct.tax && ct.tax->level > 0.0) green_res = 0.0;
        eq.diag.foc_residual = std::max(fare_res, green_res);
    }
    return eq;
}

} // namespace detail

} // namespace aircoord
