#pragma once

#include "aircoord/types.hpp"

namespace aircoord::closed_form {

/// The printed third alias carries the term "-2 I alpha mu" twice. The
/// deduplicated form is the one that satisfies the centralised first-order
/// conditions (the regression suite checks this); it is the default. The
/// literal transcription stays selectable.
enum class Delta3Variant { deduplicated, as_printed };

/// The sixteen aliases the closed forms are written in. Aliases that depend
/// on contract terms take them from the psi / reservation arguments of
/// compute_deltas; the rest ignore them.
struct DeltaSet {
    double d1 = 0, d2 = 0, d3 = 0, d4 = 0, d5 = 0, d6 = 0, d7 = 0, d8 = 0;
    double d9 = 0, d10 = 0, d11 = 0, d12 = 0, d13 = 0;
    double sigma1 = 0, sigma2 = 0;
};

namespace detail {

// Verbatim transcription of the thirteenth alias (the LTT lump-sum
// numerator). One monomial per term as printed; local one-letter names keep
// the transcription mechanical and checkable.
inline double delta13_verbatim(double a, double b, double g, double f, double x,
                               double I, double cal, double cap, double m,
                               double c, double pb) {
    const double a2 = a * a, b2 = b * b, b3 = b2 * b, f2 = f * f, f3 = f2 * f;
    const double I2 = I * I, m2 = m * m, x2 = x * x, x4 = x2 * x2, g2 = g * g;
    const double cap2 = cap * cap, cal2 = cal * cal;
    double s = 0.0;
    s += 4 * a2 * b * f2 * I2 * m2 - 8 * a2 * b * f2 * I2 * m + 4 * a2 * b * f2 * I2;
    s += -a2 * f2 * I * m2 * x2 + 2 * a2 * f2 * I * m * x2 - a2 * f2 * I * x2;
    s += -8 * a * b2 * cap * f2 * I2 * m2 + 16 * a * b2 * cap * f2 * I2 * m - 8 * a * b2 * cap * f2 * I2;
    s += -8 * a * b2 * cal * f2 * I2 * m2 + 16 * a * b2 * cal * f2 * I2 * m - 8 * a * b2 * cal * f2 * I2;
    s += 8 * a * b2 * f2 * I2 * m2 - 16 * a * b2 * f2 * I2 * m + 8 * a * b2 * f2 * I2;
    s += 2 * a * b * cap * f2 * I * m2 * x2 - 4 * a * b * cap * f2 * I * m * x2 + 2 * a * b * cap * f2 * I * x2;
    s += 2 * a * b * cal * f2 * I * m2 * x2 - 4 * a * b * cal * f2 * I * m * x2 + 2 * a * b * cal * f2 * I * x2;
    s += -2 * a * b * f2 * I * m2 * x2 + 4 * a * b * f2 * I * m * x2 - 2 * a * b * f2 * I * x2;
    s += -8 * a * b * f * I2 * m2 * g + 16 * a * b * f * I2 * m * g - 8 * a * b * f * I2 * g;
    s += 2 * a * f * I * m2 * x2 * g - 4 * a * f * I * m * x2 * g + 2 * a * f * I * x2 * g;
    s += 4 * b3 * cap2 * f2 * I2 * m2 - 8 * b3 * cap2 * f2 * I2 * m + 4 * b3 * cap2 * f2 * I2;
    s += 8 * b3 * cap * cal * f2 * I2 * m2 - 16 * b3 * cap * cal * f2 * I2 * m + 8 * b3 * cap * cal * f2 * I2;
    s += -8 * b3 * cap * f2 * I2 * m2 + 16 * b3 * cap * f2 * I2 * m - 8 * b3 * cap * f2 * I2;
    s += 4 * b3 * cal2 * f2 * I2 * m2 - 8 * b3 * cal2 * f2 * I2 * m + 4 * b3 * cal2 * f2 * I2;
    s += -8 * b3 * cal * f2 * I2 * m2 + 16 * b3 * cal * f2 * I2 * m - 8 * b3 * cal * f2 * I2;
    s += 4 * b3 * f2 * I2 * m2 - 8 * b3 * f2 * I2 * m + 4 * b3 * f2 * I2;
    s += -b2 * cap2 * f2 * I * m2 * x2 + 2 * b2 * cap2 * f2 * I * m * x2 - b2 * cap2 * f2 * I * x2;
    s += -2 * b2 * cap * cal * f2 * I * m2 * x2 + 4 * b2 * cap * cal * f2 * I * m * x2 - 2 * b2 * cap * cal * f2 * I * x2;
    s += 2 * b2 * cap * f2 * I * m2 * x2 - 4 * b2 * cap * f2 * I * m * x2 + 2 * b2 * cap * f2 * I * x2;
    s += 8 * b2 * cap * f * I2 * m2 * g - 16 * b2 * cap * f * I2 * m * g + 8 * b2 * cap * f * I2 * g;
    s += -b2 * cal2 * f2 * I * m2 * x2 + 2 * b2 * cal2 * f2 * I * m * x2 - b2 * cal2 * f2 * I * x2;
    s += 2 * b2 * cal * f2 * I * m2 * x2 - 4 * b2 * cal * f2 * I * m * x2 + 2 * b2 * cal * f2 * I * x2;
    s += 8 * b2 * cal * f * I2 * m2 * g - 16 * b2 * cal * f * I2 * m * g + 8 * b2 * cal * f * I2 * g;
    s += -36 * c * b2 * f3 * I2 * m2 + 48 * c * b2 * f3 * I2 * m - 16 * c * b2 * f3 * I2;
    s += -36 * pb * b2 * f2 * I2 * m2 + 48 * pb * b2 * f2 * I2 * m - 16 * pb * b2 * f2 * I2;
    s += -b2 * f2 * I * m2 * x2 + 2 * b2 * f2 * I * m * x2 - b2 * f2 * I * x2;
    s += -8 * b2 * f * I2 * m2 * g + 16 * b2 * f * I2 * m * g - 8 * b2 * f * I2 * g;
    s += -2 * b * cap * f * I * m2 * x2 * g + 4 * b * cap * f * I * m * x2 * g - 2 * b * cap * f * I * x2 * g;
    s += -2 * b * cal * f * I * m2 * x2 * g + 4 * b * cal * f * I * m * x2 * g - 2 * b * cal * f * I * x2 * g;
    s += 12 * c * b * f3 * I * m2 * x2 - 20 * c * b * f3 * I * m * x2 + 8 * c * b * f3 * I * x2;
    s += 12 * pb * b * f2 * I * m2 * x2 - 20 * pb * b * f2 * I * m * x2 + 8 * pb * b * f2 * I * x2;
    s += 2 * b * f * I * m2 * x2 * g - 4 * b * f * I * m * x2 * g + 2 * b * f * I * x2 * g;
    s += 4 * b * I2 * m2 * g2 - 8 * b * I2 * m * g2 + 4 * b * I2 * g2;
    s += -c * f3 * m2 * x4 + 2 * c * f3 * m * x4 - c * f3 * x4;
    s += -pb * f2 * m2 * x4 + 2 * pb * f2 * m * x4 - pb * f2 * x4;
    s += -I * m2 * x2 * g2 + 2 * I * m * x2 * g2 - I * x2 * g2;
    return s;
}

} // namespace detail

/// Evaluates all sixteen aliases. psi and reservation feed the aliases that
/// mention them (d8, d13, sigma1); pass zeros when they are irrelevant.
inline DeltaSet compute_deltas(const ChannelParams& pr, double psi = 0.0,
                               double reservation = 0.0,
                               Delta3Variant v3 = Delta3Variant::deduplicated) {
    const double a = pr.alpha, b = pr.beta, g = pr.gamma, f = pr.freq, x = pr.xi;
    const double I = pr.invest_cost, cal = pr.cost_airline, cap = pr.cost_airport;
    const double m = pr.mu, x2 = x * x;

    DeltaSet d;
    d.d1 = a * f - b * f * (cap + cal - 1.0) - g;
    d.d2 = 4.0 * b * I + m * x2 - x2 - 8.0 * b * I * m;
    d.d3 = (1.0 - m) * (2.0 * a * I + (x2 - 2.0 * b * I) * (1.0 - cap - cal)) -
           2.0 * I * a * m - (2.0 * I * g / f) * (1.0 - 2.0 * m);
    if (v3 == Delta3Variant::as_printed) d.d3 -= 2.0 * I * a * m;
    d.d4 = -g + a * f - b * f * (1.0 - cap + cal);
    d.d5 = (1.0 - m) * ((2.0 * b * I - x2) * (cap + cal - 1.0) - a * x2) +
           2.0 * a * I * (3.0 - 4.0 * m);
    d.d6 = 4.0 * f * b * I * (1.0 - m) * (8.0 * b * I - 3.0 * x2) *
               (g + (b * cal + b * cap - a - b) * f) +
           (g - a * f + b * cal * f) * (8.0 * b * b * I * I * m - 3.0 * b * I * x2 * (1.0 - m));
    d.d7 = (1.0 - m) * (2.0 * b * (4.0 * b * I - 3.0 * x2) * (cal + cap - 1.0) +
                        3.0 * a * (8.0 * b * I - x2)) -
           8.0 * b * I * m * (a + b * (cap + cal));
    d.d8 = (1.0 - m) * (4.0 * b * I - x2) * (cal - psi * (cap + cal - 1.0)) -
           2.0 * I * m * (b * cal - a * psi);
    d.d9 = f * x2 - 4.0 * b * f * I - cap * f * x2 + 4.0 * b * cap * f * I;
    d.d10 = 9.0 * d.d2 + 4.0 * b * I * (8.0 * m - 1.0);
    d.d11 = a * f - b * cal * f - g;
    d.d12 = 2.0 * d.d6 - 3.0 * b * I * d.d1 * x2 * (1.0 - m) + 8.0 * b * b * I * I * m * d.d1;
    d.d13 = detail::delta13_verbatim(a, b, g, f, x, I, cal, cap, m, pr.landing_fee, reservation);
    d.sigma2 = (a + b * (1.0 - cal - cap)) * (a + b * (1.0 - cal - cap));
    // "2b" in the printed sigma_1 is read as 2*beta.
    d.sigma1 = (2.0 * a + b) / 9.0 - (2.0 * a * (cal - cap)) / 9.0 -
               (2.0 * b * (cal - cap)) / 9.0 + (b * (cal * cal - cap * cap)) / 9.0 +
               a * a / (9.0 * b) - (2.0 * d.sigma2) / (9.0 * b * (3.0 * m - 2.0)) +
               d.sigma2 / (9.0 * b * (3.0 * m - 2.0) * (3.0 * m - 2.0)) +
               (2.0 * b * cal * cap) / 9.0;
    return d;
}

} // namespace aircoord::closed_form
