#pragma once

// Embedded Dormand-Prince 5(4) pair with step rejection and an optional
// state-dependent step cap. Deterministic for fixed inputs.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ringflow {

struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OdeControls {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0;  // 0: choose automatically
    long max_steps = 50000000;

    OdeControls scaled(double factor) const {
        OdeControls c = *this;
        c.rel_tol *= factor;
        c.abs_tol *= factor;
        // capped stepping responds through the square root so the energy
        // drift of the pair tracks the knob at least quadratically
        c.max_step *= std::sqrt(factor);
        return c;
    }
};

struct OdeStatus {
    std::string termination = "horizon";  // horizon | event:<name> | ...
    long steps = 0;
    long rejected = 0;
};

namespace detail {

inline double error_norm(const Eigen::VectorXd& err, const Eigen::VectorXd& y0,
                         const Eigen::VectorXd& y1, double atol, double rtol) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double e = err[i] / sc;
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

} // namespace detail

// rhs:       f(t, y) -> dy/dt
// step_cap:  largest admissible step at (t, y); <= 0 disables
// observer:  called after every accepted step with (t, y, h_used)
// stop:      event check; a non-empty string terminates with that label
template <class Rhs, class StepCap, class Observer, class Stop>
OdeStatus integrate_dopri5(const Rhs& rhs, double t0, double t1, Eigen::VectorXd y,
                           const OdeControls& ctrl, const StepCap& step_cap,
                           const Observer& observer, const Stop& stop) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                        e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                        e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

    const double span = t1 - t0;
    if (!(span > 0.0)) throw std::invalid_argument("integrate_dopri5: empty horizon");

    double t = t0;
    Eigen::VectorXd k1 = rhs(t, y);
    double h = ctrl.initial_step;
    if (h <= 0.0) {
        const double ynorm = y.norm() + ctrl.abs_tol;
        const double fnorm = k1.norm() + 1e-300;
        h = std::min({0.01 * ynorm / fnorm, span / 100.0, ctrl.max_step});
        h = std::max(h, 1e-12 * span);
    }

    OdeStatus status;
    Eigen::VectorXd k2, k3, k4, k5, k6, k7, ynew;
    while (t < t1) {
        const double cap = step_cap(t, y);
        if (cap > 0.0) h = std::min(h, cap);
        h = std::min({h, ctrl.max_step, t1 - t});
        if (!(h > std::abs(t) * 1e-14 + 1e-300 * span) || !(h > 1e-14 * span))
            throw StiffnessError("integrate_dopri5: step collapsed at t = " + std::to_string(t));

        k2 = rhs(t + c2 * h, y + h * (a21 * k1));
        k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = rhs(t + h, ynew);

        const Eigen::VectorXd err =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = detail::error_norm(err, y, ynew, ctrl.abs_tol, ctrl.rel_tol);

        if (en <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;  // FSAL
            ++status.steps;
            observer(t, y, h);
            const std::string ev = stop(t, y);
            if (!ev.empty()) {
                status.termination = ev;
                return status;
            }
            const double factor =
                (en == 0.0) ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(en, -0.2)));
            h *= factor;
        } else {
            ++status.rejected;
            h *= std::max(0.1, 0.9 * std::pow(en, -0.2));
        }
        if (status.steps + status.rejected > ctrl.max_steps)
            throw StiffnessError("integrate_dopri5: step budget exhausted");
    }
    return status;
}

} // namespace ringflow
