#pragma once

// The two limiting point-vortex systems on the rescaled plane, their
// conserved quantities, and the leapfrog-orbit detector.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ringflow/ode.hpp"
#include "ringflow/trajectory.hpp"

namespace ringflow {

// J1 carries the constant self-drift -gamma_i/(4 pi R0) e_Z; J2 carries the
// linearized drift +qtilde_R gamma_i/(4 pi R0^2) e_Z.
enum class PvSystem { J1, J2 };

inline Eigen::VectorXd pv_velocity(PvSystem system, const Eigen::VectorXd& gamma,
                                   const Eigen::VectorXd& qtilde, double R0) {
    const int k = static_cast<int>(gamma.size());
    if (qtilde.size() != 2 * k) throw std::invalid_argument("pv_velocity: size mismatch");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * k);
    for (int i = 0; i < k; ++i) {
        double vr = 0.0, vz = 0.0;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            const double dr = qtilde[2 * i] - qtilde[2 * j];
            const double dz = qtilde[2 * i + 1] - qtilde[2 * j + 1];
            const double d2 = dr * dr + dz * dz;
            if (d2 == 0.0) throw std::domain_error("pv_velocity: coincident vortices");
            // (a,b)^perp = (-b,a)
            vr += gamma[j] * (-dz) / (2.0 * pi * d2);
            vz += gamma[j] * dr / (2.0 * pi * d2);
        }
        if (system == PvSystem::J1) {
            vz -= gamma[i] / (4.0 * pi * R0);
        } else {
            vz += qtilde[2 * i] * gamma[i] / (4.0 * pi * R0 * R0);
        }
        v[2 * i] = vr;
        v[2 * i + 1] = vz;
    }
    return v;
}

struct PvInvariants {
    double H = 0.0;  // Hamiltonian, constant along the flow
    double P = 0.0;  // sum gamma_i qtilde_{R_i}
};

inline PvInvariants pv_invariants(PvSystem system, const Eigen::VectorXd& gamma,
                                  const Eigen::VectorXd& qtilde, double R0) {
    const int k = static_cast<int>(gamma.size());
    PvInvariants inv;
    for (int i = 0; i < k; ++i) {
        inv.P += gamma[i] * qtilde[2 * i];
        for (int j = i + 1; j < k; ++j) {
            const double dr = qtilde[2 * i] - qtilde[2 * j];
            const double dz = qtilde[2 * i + 1] - qtilde[2 * j + 1];
            const double d2 = dr * dr + dz * dz;
            if (d2 == 0.0) throw std::domain_error("pv_invariants: coincident vortices");
            inv.H -= gamma[i] * gamma[j] * 0.5 * std::log(d2) / (2.0 * pi);
        }
        // drift potential chosen so that qtilde' = -(1/gamma_i) grad_i^perp H
        if (system == PvSystem::J1) {
            inv.H += gamma[i] * gamma[i] * qtilde[2 * i] / (4.0 * pi * R0);
        } else {
            inv.H -= gamma[i] * gamma[i] * qtilde[2 * i] * qtilde[2 * i] / (8.0 * pi * R0 * R0);
        }
    }
    return inv;
}

inline double pv_min_pair_distance(const Eigen::VectorXd& qtilde) {
    const int k = static_cast<int>(qtilde.size() / 2);
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            dmin = std::min(dmin, std::hypot(qtilde[2 * i] - qtilde[2 * j],
                                             qtilde[2 * i + 1] - qtilde[2 * j + 1]));
    return dmin;
}

inline Trajectory integrate_pv(PvSystem system, const Eigen::VectorXd& gamma,
                               const Eigen::VectorXd& qtilde0, double horizon, double R0,
                               OdeControls ctrl = {}) {
    if (pv_min_pair_distance(qtilde0) < 1e-6 && gamma.size() > 1)
        throw std::domain_error("integrate_pv: initial vortices too close");
    Trajectory traj;
    traj.push(0.0, qtilde0, pv_velocity(system, gamma, qtilde0, R0),
              pv_invariants(system, gamma, qtilde0, R0).H, 0.0);

    const auto rhs = [&](double, const Eigen::VectorXd& y) {
        return pv_velocity(system, gamma, y, R0);
    };
    const auto cap = [](double, const Eigen::VectorXd&) { return 0.0; };
    const auto obs = [&](double t, const Eigen::VectorXd& y, double h) {
        traj.push(t, y, pv_velocity(system, gamma, y, R0),
                  pv_invariants(system, gamma, y, R0).H, h);
    };
    const auto stop = [&](double, const Eigen::VectorXd& y) -> std::string {
        if (gamma.size() > 1 && pv_min_pair_distance(y) < 1e-6) return "event:pair_collapse";
        return {};
    };
    const OdeStatus st = integrate_dopri5(rhs, 0.0, horizon, qtilde0, ctrl, cap, obs, stop);
    traj.status = st.termination;
    traj.steps = st.steps;
    traj.rejected = st.rejected;
    return traj;
}

// Leapfrog diagnostics for a two-ring trajectory: axial-lead exchanges and
// the first return of the relative vector (Poincare section by unwrapped
// relative angle).
struct LeapfrogReport {
    int exchange_count = 0;
    std::optional<double> period;
    double return_error = std::numeric_limits<double>::quiet_NaN();
};

inline LeapfrogReport detect_leapfrog(const Trajectory& traj) {
    LeapfrogReport rep;
    if (traj.states.empty() || traj.states.front().q.size() != 4) return rep;

    const auto rel = [&](std::size_t m) {
        const auto& q = traj.states[m].q;
        return Vec2{q[0] - q[2], q[1] - q[3]};
    };

    double prev_dz = rel(0)[1];
    double angle = std::atan2(rel(0)[1], rel(0)[0]);
    double unwrapped = 0.0;
    double prev_angle = angle;
    const Vec2 rel0 = rel(0);

    for (std::size_t m = 1; m < traj.states.size(); ++m) {
        const Vec2 d = rel(m);
        const double dz = d[1];
        if (dz * prev_dz < 0.0) ++rep.exchange_count;
        if (dz != 0.0) prev_dz = dz;

        double a = std::atan2(d[1], d[0]);
        double da = a - prev_angle;
        while (da > pi) da -= 2.0 * pi;
        while (da < -pi) da += 2.0 * pi;
        unwrapped += da;
        prev_angle = a;

        if (!rep.period && std::abs(unwrapped) >= 2.0 * pi) {
            // linear interpolation back to the crossing of one full turn
            const double overshoot = std::abs(unwrapped) - 2.0 * pi;
            const double frac = (std::abs(da) > 0.0) ? overshoot / std::abs(da) : 0.0;
            const double t = traj.times[m] - frac * (traj.times[m] - traj.times[m - 1]);
            rep.period = t;
            const Vec2 dm = rel(m), dp = rel(m - 1);
            const Vec2 at_t = {dm[0] + frac * (dp[0] - dm[0]), dm[1] + frac * (dp[1] - dm[1])};
            rep.return_error = std::hypot(at_t[0] - rel0[0], at_t[1] - rel0[1]);
        }
    }
    return rep;
}

} // namespace ringflow
