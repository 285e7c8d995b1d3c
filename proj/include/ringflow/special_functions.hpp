#pragma once

// Complete elliptic integrals (AGM), the axisymmetric kernel profile F(s),
// its log-analytic expansion near s = 0, and the Fourier multipliers of the
// log kernel on a circle.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ringflow {

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Truncation of the log-analytic series: powers up to u^max_power, terms
// below tail_tolerance stop the summation early.
struct SeriesTruncation {
    int max_power = 60;
    double tail_tolerance = 1e-16;

    void validate() const {
        if (max_power < 1) throw std::invalid_argument("SeriesTruncation: max_power must be >= 1");
        if (!(tail_tolerance > 0.0)) throw std::invalid_argument("SeriesTruncation: tail_tolerance must be > 0");
    }
};

namespace detail {
inline constexpr double agm_threshold = 1e-15;
}

// K(m) = int_0^{pi/2} (1 - m^2 sin^2 t)^(-1/2) dt, m the modulus in [0,1).
inline double elliptic_K(double m) {
    if (!(m >= 0.0) || m >= 1.0)
        throw std::domain_error("elliptic_K: modulus must lie in [0,1), got " + std::to_string(m));
    double a = 1.0;
    double g = std::sqrt((1.0 - m) * (1.0 + m));
    while (std::abs(a - g) > detail::agm_threshold * a) {
        const double an = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = an;
    }
    return pi / (a + g);
}

// E(m) = int_0^{pi/2} (1 - m^2 sin^2 t)^(1/2) dt, m in [0,1].
inline double elliptic_E(double m) {
    if (!(m >= 0.0) || m > 1.0)
        throw std::domain_error("elliptic_E: modulus must lie in [0,1], got " + std::to_string(m));
    if (m == 1.0) return 1.0;
    double a = 1.0;
    double g = std::sqrt((1.0 - m) * (1.0 + m));
    double c = m;
    double sum = 0.5 * c * c;
    double two_pow = 0.5;
    while (std::abs(a - g) > detail::agm_threshold * a) {
        const double an = 0.5 * (a + g);
        c = 0.5 * (a - g);
        g = std::sqrt(a * g);
        a = an;
        two_pow *= 2.0;
        sum += two_pow * c * c;
    }
    return pi / (a + g) * (1.0 - sum);
}

// dK/dm and dE/dm.
inline double elliptic_K_deriv(double m) {
    const double K = elliptic_K(m);
    const double E = elliptic_E(m);
    return (E - (1.0 - m * m) * K) / (m * (1.0 - m * m));
}

inline double elliptic_E_deriv(double m) {
    return (elliptic_E(m) - elliptic_K(m)) / m;
}

namespace detail {

// Values and u-derivatives of the two series behind the near-diagonal
// expansion, u = t^2:
//   kappa(u) = (2/pi) K(t)         = sum_{l>=0} c_l^2 u^l
//   sigma(u) = sum_{l>=1} c_l^2 s_l u^l,   s_l = sum_{j<=l} 1/(2j(2j-1))
// with c_l = (2l)! / (2^{2l} (l!)^2).
struct LogSeries {
    double kappa = 0, kappa1 = 0, kappa2 = 0;
    double sigma = 0, sigma1 = 0, sigma2 = 0;
};

inline LogSeries log_series_eval(double u, const SeriesTruncation& trunc) {
    trunc.validate();
    LogSeries out;
    double c2 = 1.0;   // c_l^2
    double sl = 0.0;   // partial sum of 1/(2j(2j-1))
    double ul = 1.0;   // u^l
    out.kappa = 1.0;
    for (int l = 1; l <= trunc.max_power; ++l) {
        const double ratio = (2.0 * l - 1.0) / (2.0 * l);
        c2 *= ratio * ratio;
        sl += 1.0 / (2.0 * l * (2.0 * l - 1.0));
        const double ulm1 = ul;
        ul *= u;
        out.kappa += c2 * ul;
        out.sigma += c2 * sl * ul;
        out.kappa1 += c2 * l * ulm1;
        out.sigma1 += c2 * sl * l * ulm1;
        if (l >= 2) {
            const double ulm2 = (u == 0.0) ? (l == 2 ? 1.0 : 0.0) : ulm1 / u;
            out.kappa2 += c2 * l * (l - 1.0) * ulm2;
            out.sigma2 += c2 * sl * l * (l - 1.0) * ulm2;
        }
        if (c2 * std::max(1.0, sl) * std::abs(ul) < trunc.tail_tolerance && l > 4) break;
    }
    return out;
}

} // namespace detail

// K(sqrt(1 - t^2)) evaluated through the log-analytic series,
// K(sqrt(1-t^2)) = (2/pi) K(t) log(4/t) - 2 sum_j [1/(2j(2j-1))] sum_{l>=j} c_l^2 t^{2l}.
inline double elliptic_K_log_series(double t, const SeriesTruncation& trunc = {}) {
    if (!(t > 0.0) || t >= 1.0)
        throw std::domain_error("elliptic_K_log_series: t must lie in (0,1)");
    const auto s = detail::log_series_eval(t * t, trunc);
    return s.kappa * std::log(4.0 / t) - 2.0 * s.sigma;
}

enum class FMode { quadrature, elliptic, near_diagonal };

// Switch radius for the near-diagonal series of F: t = sqrt(s/(4+s)) stays
// well inside the unit disk of convergence.
inline constexpr double f_series_switch_radius = 0.25;

namespace detail {

// Adaptive Simpson on [a,b].
template <class Fn>
double adaptive_simpson_rec(const Fn& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class Fn>
double adaptive_simpson(const Fn& f, double a, double b, double tol, int depth = 52) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Pieces of the near-diagonal representation
//   F(s) + (1/2) log s = c1 [A1*L0 - 2 sigma] - c2 [A2*L0 + B]
//                        - (1/2) log s (c1*A1 - c2*A2 - 1)
// with u = s/(4+s), L0 = log 4 + (1/2) log(4+s),
//   A1 = kappa(u), A2 = u (kappa - 2(1-u) kappa'), and
//   B = -2u sigma + (1-u) kappa + 4u(1-u) sigma'.
// The u-series converge for u < 1; the log(s)-coefficient vanishes at s = 0
// analytically, so there is no cancellation blow-up.
struct FSplit {
    double value;   // F(s) + (1/2) log(s)
    double deriv;   // d/ds of F(s) (not of the split value)
};

inline FSplit f_near_diagonal_split(double s, const SeriesTruncation& trunc) {
    const double u = s / (4.0 + s);
    const auto q = log_series_eval(u, trunc);
    const double c1 = (2.0 + s) / std::sqrt(4.0 + s);
    const double c2 = std::sqrt(4.0 + s);
    const double L0 = std::log(4.0) + 0.5 * std::log(4.0 + s);
    const double A1 = q.kappa;
    const double A2 = u * (q.kappa - 2.0 * (1.0 - u) * q.kappa1);
    const double B = -2.0 * u * q.sigma + (1.0 - u) * q.kappa + 4.0 * u * (1.0 - u) * q.sigma1;
    const double logs = std::log(s);

    const double logcoeff = c1 * A1 - c2 * A2 - 1.0;
    FSplit out;
    out.value = c1 * (A1 * L0 - 2.0 * q.sigma) - c2 * (A2 * L0 + B) - 0.5 * logs * logcoeff;

    // s-derivative by the chain rule, du/ds = 4/(4+s)^2.
    const double du = 4.0 / ((4.0 + s) * (4.0 + s));
    const double c1p = (6.0 + s) / (2.0 * std::pow(4.0 + s, 1.5));
    const double c2p = 0.5 / std::sqrt(4.0 + s);
    const double L0p = 0.5 / (4.0 + s);
    const double A1p = q.kappa1;
    const double A2p = q.kappa + (5.0 * u - 2.0) * q.kappa1 - 2.0 * u * (1.0 - u) * q.kappa2;
    const double Bp = -2.0 * q.sigma - q.kappa + (1.0 - u) * q.kappa1 +
                      (4.0 - 10.0 * u) * q.sigma1 + 4.0 * u * (1.0 - u) * q.sigma2;

    const double dsplit = c1p * (A1 * L0 - 2.0 * q.sigma) +
                          c1 * (A1p * du * L0 + A1 * L0p - 2.0 * q.sigma1 * du) -
                          c2p * (A2 * L0 + B) - c2 * (A2p * du * L0 + A2 * L0p + Bp * du) -
                          0.5 / s * logcoeff -
                          0.5 * logs * (c1p * A1 + c1 * A1p * du - c2p * A2 - c2 * A2p * du);
    out.deriv = dsplit - 0.5 / s;   // F' = d/ds[split] - d/ds[(1/2) log s]
    return out;
}

inline double f_elliptic(double s) {
    const double m = 2.0 / std::sqrt(4.0 + s);
    return (2.0 + s) / std::sqrt(4.0 + s) * elliptic_K(m) - std::sqrt(4.0 + s) * elliptic_E(m);
}

inline double f_elliptic_deriv(double s) {
    const double m = 2.0 / std::sqrt(4.0 + s);
    const double K = elliptic_K(m), E = elliptic_E(m);
    const double Km = (E - (1.0 - m * m) * K) / (m * (1.0 - m * m));
    const double Em = (E - K) / m;
    const double mp = -std::pow(4.0 + s, -1.5);
    const double c1 = (2.0 + s) / std::sqrt(4.0 + s);
    const double c1p = (6.0 + s) / (2.0 * std::pow(4.0 + s, 1.5));
    const double c2 = std::sqrt(4.0 + s);
    const double c2p = 0.5 / std::sqrt(4.0 + s);
    return c1p * K + c1 * Km * mp - c2p * E - c2 * Em * mp;
}

inline double f_quadrature(double s) {
    return adaptive_simpson(
        [s](double t) { return std::cos(t) / std::sqrt(2.0 * (1.0 - std::cos(t)) + s); },
        0.0, pi, 1e-15);
}

} // namespace detail

// F(s) = int_0^pi cos t / sqrt(2(1 - cos t) + s) dt.
inline double F_eval(double s, FMode mode, const SeriesTruncation& trunc = {}) {
    if (!(s > 0.0)) throw std::domain_error("F_eval: s must be > 0, got " + std::to_string(s));
    switch (mode) {
        case FMode::quadrature: return detail::f_quadrature(s);
        case FMode::elliptic: return detail::f_elliptic(s);
        case FMode::near_diagonal: {
            if (s > f_series_switch_radius)
                throw std::domain_error("F_eval: near_diagonal mode requires s <= " +
                                        std::to_string(f_series_switch_radius));
            const auto split = detail::f_near_diagonal_split(s, trunc);
            return split.value - 0.5 * std::log(s);
        }
    }
    throw std::logic_error("F_eval: unknown mode");
}

// F(s) + (1/2) log s, free of the log singularity (the stable quantity near
// the diagonal). Series inside the switch radius, elliptic form outside.
inline double F_regular(double s, const SeriesTruncation& trunc = {}) {
    if (!(s > 0.0)) throw std::domain_error("F_regular: s must be > 0");
    if (s <= f_series_switch_radius) return detail::f_near_diagonal_split(s, trunc).value;
    return detail::f_elliptic(s) + 0.5 * std::log(s);
}

inline double F_deriv(double s, const SeriesTruncation& trunc = {}) {
    if (!(s > 0.0)) throw std::domain_error("F_deriv: s must be > 0");
    if (s <= f_series_switch_radius) return detail::f_near_diagonal_split(s, trunc).deriv;
    return detail::f_elliptic_deriv(s);
}

// h(s) = F(s) + (1/2) log s - log 8 + 2; h -> 0 as s -> 0.
inline double h_remainder(double s, const SeriesTruncation& trunc = {}) {
    if (!(s > 0.0)) throw std::domain_error("h_remainder: s must be > 0");
    return F_regular(s, trunc) - std::log(8.0) + 2.0;
}

// Fourier multiplier of f -> int log|x-y| f dl over the circle of radius rho:
// constants pick up 2 pi rho log rho, mode n != 0 picks up -pi rho / |n|.
inline double log_circle_multiplier(int n, double rho) {
    if (!(rho > 0.0)) throw std::domain_error("log_circle_multiplier: rho must be > 0");
    if (n == 0) return 2.0 * pi * rho * std::log(rho);
    return -pi * rho / std::abs(n);
}

} // namespace ringflow
