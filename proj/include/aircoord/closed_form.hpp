#pragma once

#include <cmath>

#include "aircoord/deltas.hpp"
#include "aircoord/model.hpp"

namespace aircoord::closed_form {

namespace detail {

using aircoord::detail::make_equilibrium;

inline double cent_denominator(const ChannelParams& pr, const DeltaSet& d) {
    return d.d2 + 2.0 * pr.beta * pr.invest_cost * pr.mu;
}

} // namespace detail

/// Centralised benchmark: joint welfare maximiser over fare and greening.
inline Equilibrium eq_centralised(const ChannelParams& pr,
                                  Delta3Variant v3 = Delta3Variant::deduplicated) {
    pr.validate();
    const auto cc = concavity_check(pr);
    if (!cc.centralised_ok)
        throw InfeasibleError("centralised concavity violated: I <= xi^2(1-mu)/(2 beta (2-3mu))");
    const auto d = compute_deltas(pr, 0.0, 0.0, v3);
    const double den = detail::cent_denominator(pr, d);
    const double f = pr.freq;
    const double theta = pr.xi * (1.0 - pr.mu) * d.d1 / (f * den);
    const double fare = d.d3 / den;
    return detail::make_equilibrium(pr, ContractSpec::centralised(), Method::closed_form, {}, fare,
                            theta, {}, {});
}

/// Decentralised channel: airport leads with the fee, airline follows.
inline Equilibrium eq_dcent(const ChannelParams& pr) {
    pr.validate();
    const auto d = compute_deltas(pr);
    const double f = pr.freq, I = pr.invest_cost, mu = pr.mu;
    const double den3 = d.d2 + 3.0 * pr.beta * I * mu;
    const double q = pr.beta * I * (1.0 - mu) * d.d1 / (f * den3);
    const double fee = d.d4 / (2.0 * pr.beta * f) - I * mu * d.d1 / (2.0 * f * den3);
    const double fare = fee + pr.cost_airline + q / pr.beta;
    const double theta = pr.xi * (1.0 - mu) * d.d1 / (2.0 * f * den3);
    return detail::make_equilibrium(pr, ContractSpec::decentralised(), Method::closed_form, fee, fare,
                            theta, {}, {});
}

/// Cost-sharing contract; the airport's optimal share is 1/3 regardless of
/// the calibration.
inline Equilibrium eq_csc(const ChannelParams& pr) {
    pr.validate();
    if (!(4.0 * pr.beta * pr.invest_cost * (2.0 / 3.0) > pr.xi * pr.xi))
        throw InfeasibleError("CSC follower concavity violated at phi = 1/3");
    const auto d = compute_deltas(pr);
    const double f = pr.freq, I = pr.invest_cost, mu = pr.mu;
    const double theta = 6.0 * pr.xi * (1.0 - mu) * d.d1 / (f * d.d10);
    const double q = 8.0 * pr.beta * I * (1.0 - mu) * d.d1 / (f * d.d10);
    const double fare = (pr.net_potential() + pr.xi * theta - q) / pr.beta;
    const double fee = fare - q / pr.beta - pr.cost_airline;
    const double phi_star = 1.0 / 3.0;
    return detail::make_equilibrium(pr, ContractSpec::cost_sharing(phi_star), Method::closed_form, fee,
                            fare, theta, {}, phi_star);
}

/// Revenue-sharing contract: replicates the centralised fare, greening and
/// demand for any psi; the fee moves the split.
inline Equilibrium eq_rsc(const ChannelParams& pr, double psi,
                          Delta3Variant v3 = Delta3Variant::deduplicated) {
    if (!(psi > 0.0 && psi <= 1.0)) throw InfeasibleError("psi must lie in (0, 1]");
    const Equilibrium cent = eq_centralised(pr, v3);
    const auto d = compute_deltas(pr, psi);
    const double den = detail::cent_denominator(pr, d);
    const double fee = (2.0 * pr.invest_cost * pr.mu * psi * pr.gamma - pr.freq * d.d8) /
                       (pr.freq * den);
    return detail::make_equilibrium(pr, ContractSpec::revenue_sharing(psi), Method::closed_form, fee,
                            cent.fare, cent.theta, {}, {});
}

/// Airline gross surplus under LTT before the lump-sum transfer.
inline double ltt_gross_surplus(const ChannelParams& pr, double fee, double fare, double theta) {
    const double q = demand(pr, fare, theta);
    return (fare - fee - pr.cost_airline) * q - pr.landing_fee * pr.freq -
           pr.invest_cost * theta * theta;
}

/// The printed lump-sum expression (the thirteenth alias over the squared
/// centralised denominator); regression-checked against the construction
/// L = gross surplus - reservation.
inline double ltt_lump_sum_printed(const ChannelParams& pr, double reservation) {
    const auto d = compute_deltas(pr, 0.0, reservation);
    const double den = detail::cent_denominator(pr, d);
    return d.d13 / (pr.freq * pr.freq * den * den);
}

/// Linear two-part tariff: centralised decisions, airline keeps exactly its
/// reservation profit, remainder transfers as the lump sum.
inline Equilibrium eq_ltt(const ChannelParams& pr, double reservation,
                          Delta3Variant v3 = Delta3Variant::deduplicated) {
    if (reservation < 0.0) throw InfeasibleError("reservation profit must be nonnegative");
    const Equilibrium cent = eq_centralised(pr, v3);
    const auto d = compute_deltas(pr);
    const double den = detail::cent_denominator(pr, d);
    const double fee = (d.d9 * (1.0 - pr.mu) - 2.0 * pr.invest_cost * pr.mu * d.d11) /
                       (pr.freq * den);
    const double gross = ltt_gross_surplus(pr, fee, cent.fare, cent.theta);
    if (gross < reservation)
        throw InfeasibleError("LTT reservation profit exceeds the airline's gross surplus");
    const double lump = gross - reservation;
    Equilibrium eq = detail::make_equilibrium(pr, ContractSpec::two_part_tariff(reservation),
                                      Method::closed_form, fee, cent.fare, cent.theta, lump, {});
    eq.airline_profit = reservation;  // exact by construction of L
    return eq;
}

/// Convenience dispatch over the five structures.
inline Equilibrium solve(const ChannelParams& pr, const ContractSpec& ct) {
    ct.validate();
    switch (ct.kind) {
        case Structure::cent: return eq_centralised(pr);
        case Structure::dcent: return eq_dcent(pr);
        case Structure::csc: return eq_csc(pr);
        case Structure::rsc: return eq_rsc(pr, *ct.psi);
        case Structure::ltt: return eq_ltt(pr, *ct.reservation);
    }
    throw ModelError("unknown structure");
}

// ---------------------------------------------------------------------------
// Scenario limits (S1: mu -> 0, S2: xi -> 0), as exact formulas.

/// S1 centralised welfare (= channel profit): I d1^2 / (f^2 (4 beta I - xi^2)).
inline double s1_welfare_centralised(const ChannelParams& pr) {
    const auto d = compute_deltas(pr);
    const double den = 4.0 * pr.beta * pr.invest_cost - pr.xi * pr.xi;
    return pr.invest_cost * d.d1 * d.d1 / (pr.freq * pr.freq * den);
}

inline double s1_fee_dcent(const ChannelParams& pr) {
    return (pr.cost_airport - pr.cost_airline - 1.0) / 2.0 -
           (pr.gamma - pr.alpha * pr.freq) / (2.0 * pr.beta * pr.freq);
}

inline double s1_fee_rsc(const ChannelParams& pr, double psi) {
    return (pr.cost_airline + pr.cost_airport - 1.0) * psi - pr.cost_airline;
}

inline double s1_fee_ltt(const ChannelParams& pr) { return pr.cost_airport - 1.0; }

/// S2 centralised welfare: d1^2 (mu-1)^2 / (2 beta f^2 (2-3mu)).
inline double s2_welfare_centralised(const ChannelParams& pr) {
    const auto d = compute_deltas(pr);
    const double num = d.d1 * d.d1 * (pr.mu - 1.0) * (pr.mu - 1.0);
    return num / (2.0 * pr.beta * pr.freq * pr.freq * (2.0 - 3.0 * pr.mu));
}

/// S2 centralised channel profit.
inline double s2_profit_centralised(const ChannelParams& pr) {
    const auto d = compute_deltas(pr);
    const double bI = pr.beta * pr.invest_cost;
    const double den = 4.0 * bI - 6.0 * bI * pr.mu;
    return pr.invest_cost * (4.0 * bI - 8.0 * bI * pr.mu) * (1.0 - pr.mu) * d.d1 * d.d1 /
           (pr.freq * pr.freq * den * den);
}

// ---------------------------------------------------------------------------
// Duopoly closed forms (section on horizontal competition).

/// Two of the printed expressions break the airline-index symmetry; the
/// corrected variant restores it and is the one the numeric oracle validates.
/// as_printed keeps the literal text for the adjudication report.
enum class FormVariant { corrected, as_printed };

inline void require_regular(double denominator, const char* what) {
    if (std::abs(denominator) < 1e-12)
        throw SolverError(std::string(what) + ": singular configuration (zero denominator)");
}

/// Price competition, decentralised: both airlines post fares and greening
/// simultaneously at fee w.
inline DuopolyDecision duopoly_price_closed_form(const DuopolyParams& d, double fee,
                                                 FormVariant v = FormVariant::corrected) {
    d.validate();
    const double a = d.alpha, b = d.beta, x = d.xi, I = d.invest_cost, w = fee;
    const double b1 = d.beta1, b2 = d.beta2;
    const double x2 = x * x, x4 = x2 * x2, I2 = I * I;
    const double den = (x2 - 4.0 * b * I) * (x2 - 4.0 * b * I) - 4.0 * b1 * b2 * I2;
    require_regular(den, "duopoly price closed form");

    const auto pnum = [&](double bi) {
        return w * x4 - 2.0 * I * x2 * (a + bi * w) + (b * w + a) * (8.0 * b * I2 + 4.0 * bi * I2) -
               6.0 * b * I * w * x2;
    };
    const auto tnum = [&](double bi, double bj) {
        return x * ((b - bi) * w * x2 - 4.0 * b * I * (b * w - a) - a * x2 + 2.0 * a * bi * I +
                    2.0 * bi * I * w * (b + bj));
    };

    DuopolyDecision r;
    r.fare1 = pnum(b1) / den;
    r.theta1 = tnum(b1, b2) / den;
    if (v == FormVariant::corrected) {
        r.fare2 = pnum(b2) / den;
        r.theta2 = tnum(b2, b1) / den;
    } else {
        // literal text: the second fare repeats 4*beta1*I^2 and the second
        // greening level repeats beta1 in both cross slots
        r.fare2 = (w * x4 - 2.0 * I * x2 * (a + b2 * w) +
                   (b * w + a) * (8.0 * b * I2 + 4.0 * b1 * I2) - 6.0 * b * I * w * x2) /
                  den;
        r.theta2 = x *
                   ((b - b2) * w * x2 - 4.0 * b * I * (b * w - a) - a * x2 + 2.0 * a * b2 * I +
                    2.0 * b1 * I * w * (b + b1)) /
                   den;
    }
    return r;
}

/// Greening competition, decentralised. The printed expressions correspond to
/// the symmetric rival-greening convention.
inline DuopolyDecision duopoly_greening_closed_form(const DuopolyParams& d, double fee) {
    d.validate();
    const double a = d.alpha, b = d.beta, x = d.xi, I = d.invest_cost, w = fee;
    const double x2 = x * x;
    const double den = (x2 - 4.0 * b * I) * (x2 - 4.0 * b * I) - d.xi1 * d.xi2 * x2;
    require_regular(den, "duopoly greening closed form");

    const auto theta = [&](double xi_i) {
        return x * (w * b - a) * (x2 - 4.0 * I * b + xi_i * x) / den;
    };
    const auto fare = [&](double xi_i, double xi_j) {
        return (2.0 * I * x * (w * xi_i * b - a * (x + xi_i)) +
                (8.0 * b * I * I * (a + w * b) - w * x2 * (6.0 * b * I - x2 + xi_i * xi_j))) /
               den;
    };

    DuopolyDecision r;
    r.fare1 = fare(d.xi1, d.xi2);
    r.fare2 = fare(d.xi2, d.xi1);
    r.theta1 = theta(d.xi1);
    r.theta2 = theta(d.xi2);
    return r;
}

/// Price competition under revenue sharing with equal retained fractions.
/// The corrected variant carries the retained fraction into the squared
/// denominator term, matching the printed greening expression and the oracle.
inline DuopolyDecision duopoly_rsc_closed_form(const DuopolyParams& d, double fee,
                                               FormVariant v = FormVariant::corrected) {
    d.validate();
    if (d.r1 != d.r2)
        throw ModelError("duopoly revenue sharing assumes equal retained fractions");
    const double a = d.alpha, b = d.beta, x = d.xi, I = d.invest_cost, w = fee, r = d.r1;
    const double b1 = d.beta1, b2 = d.beta2;
    const double x2 = x * x;

    const double core = v == FormVariant::corrected ? r * x2 - 4.0 * b * I : x2 - 4.0 * b * I;
    const double den_p = core * core - 4.0 * b1 * b2 * I * I;
    require_regular(den_p, "duopoly RSC closed form");
    const auto pnum = [&](double bi) {
        return (-r * x2 + 4.0 * b * I + 2.0 * bi * I) *
               (-r * w * x2 + 2.0 * a * I * r + 2.0 * b * I * w);
    };
    const auto tnum = [&](double bi, double bj) {
        return I * (4.0 * b * (a * r - b * w) + 2.0 * bi * (a * r + w * (b + bj))) * x -
               (a * r * r - (b - bi) * r * w) * x2 * x;
    };
    const double den_t = (r * x2 - 4.0 * b * I) * (r * x2 - 4.0 * b * I) - 4.0 * b1 * b2 * I * I;
    require_regular(den_t, "duopoly RSC closed form");

    DuopolyDecision out;
    out.fare1 = pnum(b1) / (r * den_p);
    out.fare2 = pnum(v == FormVariant::corrected ? b2 : b1) / (r * den_p);
    out.theta1 = tnum(b1, b2) / den_t;
    out.theta2 = tnum(b2, b1) / den_t;
    return out;
}

} // namespace aircoord::closed_form
