#pragma once

// Point evaluation of the axisymmetric stream kernel, its flat (logarithmic)
// approximation, the harmonic ring single-layer kernel, their y-gradients,
// and the log-split decompositions kernel = P log|x-y| + Q used by the
// quadrature layer.

#include <array>
#include <cmath>
#include <stdexcept>

#include "ringflow/special_functions.hpp"

namespace ringflow {

struct HalfPlanePoint {
    double r = 1.0;  // radial coordinate, > 0
    double z = 0.0;
};

using Vec2 = std::array<double, 2>;

namespace detail {

inline void require_distinct(const HalfPlanePoint& x, const HalfPlanePoint& y, const char* who) {
    if (x.r == y.r && x.z == y.z)
        throw std::domain_error(std::string(who) + ": kernel is singular at x = y");
    if (!(x.r > 0.0) || !(y.r > 0.0))
        throw std::domain_error(std::string(who) + ": points must lie in the half-plane r > 0");
}

inline double dist2(const HalfPlanePoint& x, const HalfPlanePoint& y) {
    const double dr = x.r - y.r, dz = x.z - y.z;
    return dr * dr + dz * dz;
}

} // namespace detail

// K(x,y) = -(1/2pi) sqrt(x_r y_r) F(|x-y|^2 / (x_r y_r)); symmetric in (x,y).
inline double stream_kernel(const HalfPlanePoint& x, const HalfPlanePoint& y) {
    detail::require_distinct(x, y, "stream_kernel");
    const double prod = x.r * y.r;
    const double s = detail::dist2(x, y) / prod;
    const double F = (s <= f_series_switch_radius) ? F_eval(s, FMode::near_diagonal)
                                                   : F_eval(s, FMode::elliptic);
    return -std::sqrt(prod) / (2.0 * pi) * F;
}

// Flat approximation at radius R: (R/2pi)(log|x-y| - log 8 + 2 - log R).
inline double flat_kernel(double R, const HalfPlanePoint& x, const HalfPlanePoint& y) {
    detail::require_distinct(x, y, "flat_kernel");
    if (!(R > 0.0)) throw std::domain_error("flat_kernel: R must be > 0");
    return R / (2.0 * pi) *
           (0.5 * std::log(detail::dist2(x, y)) - std::log(8.0) + 2.0 - std::log(R));
}

// Gradient of K in the second argument, (d/dy_r, d/dy_z).
inline Vec2 stream_kernel_grad_y(const HalfPlanePoint& x, const HalfPlanePoint& y) {
    detail::require_distinct(x, y, "stream_kernel_grad_y");
    const double prod = x.r * y.r;
    const double sq = std::sqrt(prod);
    const double s = detail::dist2(x, y) / prod;
    const double F = (s <= f_series_switch_radius) ? F_eval(s, FMode::near_diagonal)
                                                   : F_eval(s, FMode::elliptic);
    const double Fp = F_deriv(s);
    const double ds_dr = 2.0 * (y.r - x.r) / prod - s / y.r;
    const double ds_dz = 2.0 * (y.z - x.z) / prod;
    const double c = -1.0 / (2.0 * pi);
    return {c * (0.5 * x.r / sq * F + sq * Fp * ds_dr), c * sq * Fp * ds_dz};
}

namespace detail {

struct RingGeom {
    double l1;   // sqrt((x_r + y_r)^2 + (x_z - y_z)^2)
    double u;    // |x-y|^2 / l1^2 = 1 - k^2
    double k;    // modulus of the azimuthal average
};

inline RingGeom ring_geom(const HalfPlanePoint& x, const HalfPlanePoint& y) {
    RingGeom g;
    const double sum = x.r + y.r, dz = x.z - y.z;
    g.l1 = std::sqrt(sum * sum + dz * dz);
    g.u = dist2(x, y) / (g.l1 * g.l1);
    g.k = 2.0 * std::sqrt(x.r * y.r) / g.l1;
    return g;
}

} // namespace detail

// Azimuthal average of the 3D Newtonian potential against the ring through x:
// S(x,y) = (x_r/pi) K(k) / l1, k^2 = 4 x_r y_r / ((x_r+y_r)^2 + (x_z-y_z)^2).
// A density sigma on a generating curve then produces the potential of the
// surface charge sigma on the torus of revolution.
inline double laplace_ring_kernel(const HalfPlanePoint& x, const HalfPlanePoint& y) {
    detail::require_distinct(x, y, "laplace_ring_kernel");
    const auto g = detail::ring_geom(x, y);
    return x.r / pi * elliptic_K(g.k) / g.l1;
}

inline Vec2 laplace_ring_kernel_grad_y(const HalfPlanePoint& x, const HalfPlanePoint& y) {
    detail::require_distinct(x, y, "laplace_ring_kernel_grad_y");
    const auto g = detail::ring_geom(x, y);
    const double K = elliptic_K(g.k);
    const double Km = elliptic_K_deriv(g.k);
    const double dl1_dr = (x.r + y.r) / g.l1;
    const double dl1_dz = (y.z - x.z) / g.l1;
    const double dk_dr = x.r / (std::sqrt(x.r * y.r) * g.l1) - g.k * dl1_dr / g.l1;
    const double dk_dz = -g.k * dl1_dz / g.l1;
    const double c = x.r / pi;
    return {c * (Km * dk_dr / g.l1 - K * dl1_dr / (g.l1 * g.l1)),
            c * (Km * dk_dz / g.l1 - K * dl1_dz / (g.l1 * g.l1))};
}

// ---- log-split decompositions --------------------------------------------
//
// On a single boundary both kernels split as  kernel = P(x,y) log|x-y| + Q(x,y)
// with P, Q analytic across the diagonal. Evaluating Q at x = y is allowed.

// Stream kernel: P = (1/2pi) sqrt(x_r y_r).
inline double stream_log_coeff(const HalfPlanePoint& x, const HalfPlanePoint& y) {
    return std::sqrt(x.r * y.r) / (2.0 * pi);
}

inline double stream_smooth_part(const HalfPlanePoint& x, const HalfPlanePoint& y) {
    const double prod = x.r * y.r;
    const double d2 = detail::dist2(x, y);
    const double h = (d2 == 0.0) ? 0.0 : h_remainder(d2 / prod);
    return std::sqrt(prod) / (2.0 * pi) * (-0.5 * std::log(prod) - std::log(8.0) + 2.0 - h);
}

// Ring kernel: P = -(x_r / (pi l1)) kappa(u), where kappa(u) = (2/pi) K(sqrt(u))
// as a power series in u = |x-y|^2 / l1^2.
inline double ring_log_coeff(const HalfPlanePoint& x, const HalfPlanePoint& y) {
    const auto g = detail::ring_geom(x, y);
    const auto s = detail::log_series_eval(g.u, {});
    return -x.r / (pi * g.l1) * s.kappa;
}

inline double ring_smooth_part(const HalfPlanePoint& x, const HalfPlanePoint& y) {
    const auto g = detail::ring_geom(x, y);
    const auto s = detail::log_series_eval(g.u, {});
    return x.r / (pi * g.l1) * (s.kappa * std::log(4.0 * g.l1) - 2.0 * s.sigma);
}

// y-gradients of the split pieces, needed for the normal-derivative kernel of
// the single layer on the diagonal blocks. Valid while u < 1 (same body).
inline Vec2 ring_log_coeff_grad_y(const HalfPlanePoint& x, const HalfPlanePoint& y) {
    const auto g = detail::ring_geom(x, y);
    const auto s = detail::log_series_eval(g.u, {});
    const Vec2 dl1 = {(x.r + y.r) / g.l1, (y.z - x.z) / g.l1};
    const Vec2 du = {2.0 * (y.r - x.r) / (g.l1 * g.l1) - 2.0 * g.u * dl1[0] / g.l1,
                     2.0 * (y.z - x.z) / (g.l1 * g.l1) - 2.0 * g.u * dl1[1] / g.l1};
    Vec2 out;
    for (int c = 0; c < 2; ++c)
        out[c] = -x.r / pi * (s.kappa1 * du[c] / g.l1 - s.kappa * dl1[c] / (g.l1 * g.l1));
    return out;
}

inline Vec2 ring_smooth_part_grad_y(const HalfPlanePoint& x, const HalfPlanePoint& y) {
    const auto g = detail::ring_geom(x, y);
    const auto s = detail::log_series_eval(g.u, {});
    const double lg = std::log(4.0 * g.l1);
    const Vec2 dl1 = {(x.r + y.r) / g.l1, (y.z - x.z) / g.l1};
    const Vec2 du = {2.0 * (y.r - x.r) / (g.l1 * g.l1) - 2.0 * g.u * dl1[0] / g.l1,
                     2.0 * (y.z - x.z) / (g.l1 * g.l1) - 2.0 * g.u * dl1[1] / g.l1};
    const double val = s.kappa * lg - 2.0 * s.sigma;
    Vec2 out;
    for (int c = 0; c < 2; ++c) {
        const double dval = s.kappa1 * du[c] * lg + s.kappa * dl1[c] / g.l1 - 2.0 * s.sigma1 * du[c];
        out[c] = x.r / pi * (dval / g.l1 - val * dl1[c] / (g.l1 * g.l1));
    }
    return out;
}

} // namespace ringflow
