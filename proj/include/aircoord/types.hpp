#pragma once

#include <optional>
#include <string>

#include "aircoord/common.hpp"

namespace aircoord {

/// Exogenous calibration of the single-airline channel.
///
/// All quantities are abstract monetary/passenger units. The non-aeronautical
/// revenue per passenger is normalized to 1 and kept as a field only so
/// sensitivity runs can vary it.
struct ChannelParams {
    double alpha = 100.0;        ///< market potential (passengers)
    double beta = 0.5;           ///< own-price sensitivity (passengers per fare unit)
    double gamma = 0.2;          ///< schedule-delay parameter
    double freq = 5.0;           ///< flight frequency (exogenous)
    double xi = 3.0;             ///< passenger greening sensitivity
    double invest_cost = 12.0;   ///< greening investment cost coefficient
    double landing_fee = 30.0;   ///< landing charge per flight
    double cost_airline = 20.0;  ///< airline operating cost per passenger
    double cost_airport = 45.0;  ///< airport operating cost per passenger
    double mu = 0.18;            ///< consumer-surplus weight in the airport objective
    double w_prime = 1.0;        ///< non-aeronautical revenue per passenger

    /// Throws InfeasibleError when the calibration cannot support a solve:
    /// positivity constraints, mu outside [0, 2/3), or the airline
    /// second-order condition 4*beta*invest_cost > xi^2.
    void validate() const {
        if (!(alpha > 0.0)) throw InfeasibleError("alpha must be positive");
        if (!(beta > 0.0)) throw InfeasibleError("beta must be positive");
        if (!(freq > 0.0)) throw InfeasibleError("flight frequency must be positive");
        if (!(invest_cost > 0.0)) throw InfeasibleError("greening cost coefficient must be positive");
        if (gamma < 0.0) throw InfeasibleError("schedule-delay parameter must be nonnegative");
        if (xi < 0.0) throw InfeasibleError("greening sensitivity must be nonnegative");
        if (!(mu >= 0.0 && mu < 2.0 / 3.0))
            throw InfeasibleError("centralised concavity violated: mu=" + std::to_string(mu) +
                                  " outside [0, 2/3)");
        if (!(4.0 * beta * invest_cost > xi * xi))
            throw InfeasibleError("airline second-order condition violated: 4*beta*I <= xi^2");
    }

    /// Market potential net of the schedule-delay penalty, alpha - gamma/f.
    double net_potential() const { return alpha - gamma / freq; }
};

/// Emission-tax policy of the government stage.
struct TaxPolicy {
    double level = 0.0;         ///< tax coefficient t >= 0
    double target_theta = 6.5;  ///< desired greening level per flight (theta_0)

    void validate() const {
        if (level < 0.0) throw InfeasibleError("tax level must be nonnegative");
        if (!(target_theta > 0.0)) throw InfeasibleError("greening target must be positive");
    }
};

/// Tagged market structure plus its contract-specific terms.
struct ContractSpec {
    Structure kind = Structure::dcent;
    std::optional<double> phi;          ///< CSC cost share; absent => optimized
    std::optional<double> psi;          ///< RSC airline-retained revenue fraction
    std::optional<double> reservation;  ///< LTT airline reservation profit
    std::optional<TaxPolicy> tax;

    static ContractSpec centralised() { return {Structure::cent, {}, {}, {}, {}}; }
    static ContractSpec decentralised() { return {Structure::dcent, {}, {}, {}, {}}; }
    static ContractSpec cost_sharing(std::optional<double> phi_ = {}) {
        return {Structure::csc, phi_, {}, {}, {}};
    }
    static ContractSpec revenue_sharing(double psi_) {
        return {Structure::rsc, {}, psi_, {}, {}};
    }
    static ContractSpec two_part_tariff(double reservation_) {
        return {Structure::ltt, {}, {}, reservation_, {}};
    }

    ContractSpec with_tax(TaxPolicy t) const {
        ContractSpec c = *this;
        c.tax = t;
        return c;
    }

    void validate() const {
        if (phi && kind != Structure::csc)
            throw ModelError("cost share is only meaningful under CSC");
        if (psi && kind != Structure::rsc)
            throw ModelError("revenue fraction is only meaningful under RSC");
        if (reservation && kind != Structure::ltt)
            throw ModelError("reservation profit is only meaningful under LTT");
        if (kind == Structure::rsc && !psi)
            throw ModelError("RSC requires a revenue fraction");
        if (kind == Structure::ltt && !reservation)
            throw ModelError("LTT requires a reservation profit");
        if (phi && !(*phi >= 0.0 && *phi < 1.0))
            throw InfeasibleError("cost share must lie in [0, 1)");
        if (psi && !(*psi > 0.0 && *psi <= 1.0))
            throw InfeasibleError("revenue fraction must lie in (0, 1]");
        if (reservation && *reservation < 0.0)
            throw InfeasibleError("reservation profit must be nonnegative");
        if (tax) tax->validate();
    }
};

/// Solver diagnostics attached to every numerically produced equilibrium.
struct SolveDiagnostics {
    double foc_residual = 0.0;     ///< max |follower first-order condition|
    bool leader_certified = true;  ///< objective at w* >= objective at w* +/- step
};

/// One solved outcome of a channel structure.
///
/// Fields that a structure does not define stay disengaged: the centralised
/// benchmark has no conveyance fee and no airline/airport split, only LTT has
/// a lump-sum tariff, only CSC has a realized cost share.
struct Equilibrium {
    Structure structure = Structure::cent;
    Method method = Method::closed_form;

    std::optional<double> fee;        ///< conveyance fee per passenger (w)
    double fare = 0.0;                ///< ticket fare (p)
    double theta = 0.0;               ///< greening level
    double demand = 0.0;              ///< passengers (q)
    std::optional<double> lump_sum;   ///< LTT tariff (L)
    std::optional<double> cost_share; ///< realized CSC share

    std::optional<double> airline_profit;
    std::optional<double> airport_profit;
    std::optional<double> airport_utility;
    double total_profit = 0.0;    ///< channel profit (airline + airport)
    double consumer_surplus = 0.0;
    double welfare = 0.0;         ///< the single welfare functional used everywhere
    double tax_revenue = 0.0;     ///< 0 when no tax applies

    SolveDiagnostics diag;
};

/// Two-airline calibration for the horizontal-competition extension.
///
/// The duopoly game drops the schedule-delay term, airline operating cost and
/// (by default) the landing fee; cross effects enter either through rival
/// fares (price mode) or rival greening (greening mode).
struct DuopolyParams {
    enum class Mode { price, greening };

    double alpha = 100.0;
    double beta = 0.5;
    double xi = 3.0;
    double invest_cost = 12.0;
    double cost_airport = 45.0;
    double mu = 0.18;
    double w_prime = 1.0;

    Mode mode = Mode::price;
    double beta1 = 0.2;  ///< cross-price sensitivity in airline 1's demand
    double beta2 = 0.2;  ///< cross-price sensitivity in airline 2's demand
    double xi1 = 0.2;    ///< cross-greening sensitivity in airline 1's demand
    double xi2 = 0.2;    ///< cross-greening sensitivity in airline 2's demand
    double r1 = 1.0;     ///< airline 1 retained revenue fraction (RSC variant)
    double r2 = 1.0;     ///< airline 2 retained revenue fraction (RSC variant)

    /// Fixed per-period aeronautical income (c*f); excluded from the airport
    /// objective unless explicitly set, matching the extension's profit form.
    double landing_income = 0.0;

    /// Sign convention of the rival-greening term in airline 2's demand.
    /// The closed forms are consistent with the symmetric convention
    /// (both demands lose xi_i * theta_j); the asymmetric one flips the sign
    /// for airline 2 so the numeric oracle can exercise both readings.
    enum class GreeningConvention { symmetric, asymmetric };
    GreeningConvention convention = GreeningConvention::symmetric;

    void validate() const {
        if (!(alpha > 0.0) || !(beta > 0.0) || !(invest_cost > 0.0))
            throw InfeasibleError("duopoly alpha, beta, I must be positive");
        if (xi < 0.0) throw InfeasibleError("duopoly xi must be nonnegative");
        if (!(mu >= 0.0 && mu < 1.0)) throw InfeasibleError("duopoly mu must lie in [0, 1)");
        if (mode == Mode::price) {
            if (!(beta1 > 0.0 && beta1 <= beta) || !(beta2 > 0.0 && beta2 <= beta))
                throw InfeasibleError("cross-price sensitivities must lie in (0, beta]");
        } else {
            if (xi1 < 0.0 || xi2 < 0.0)
                throw InfeasibleError("cross-greening sensitivities must be nonnegative");
        }
        if (!(r1 > 0.0 && r1 <= 1.0) || !(r2 > 0.0 && r2 <= 1.0))
            throw InfeasibleError("retained revenue fractions must lie in (0, 1]");
    }
};

/// Fare and greening decisions of both airlines at fixed conveyance fee.
struct DuopolyDecision {
    double fare1 = 0.0;
    double fare2 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
};

/// Full duopoly outcome after the airport's fee stage.
struct DuopolyEquilibrium {
    Structure structure = Structure::dcent;  ///< dcent or rsc
    double fee = 0.0;
    DuopolyDecision decisions;
    double demand1 = 0.0;
    double demand2 = 0.0;
    double airline_profit1 = 0.0;
    double airline_profit2 = 0.0;
    double airport_profit = 0.0;
    double airport_utility = 0.0;
};

} // namespace aircoord
