#pragma once

// The body ODE: acceleration from the assembled coefficients, and the
// adaptive integrator with per-stage re-assembly, gyroscopic step capping,
// and clean termination on near-collision or domain exit.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ringflow/coefficients.hpp"
#include "ringflow/geometry.hpp"
#include "ringflow/ode.hpp"
#include "ringflow/trajectory.hpp"

namespace ringflow {

struct BodyDynamicsOptions {
    AssemblyOptions assembly;
    OdeControls ode;
    double gyro_cap = 0.2;          // max h * (gyroscopic frequency)
    double collision_factor = 0.1;  // stop when gap < factor * min rho
    double emodel_halfwidth = 0.30; // relative half-width of the f(R) window
    int emodel_degree = 14;

    BodyDynamicsOptions() {
        ode.rel_tol = 1e-9;
        ode.abs_tol = 1e-12;
    }

    BodyDynamicsOptions scaled_tolerance(double factor) const {
        BodyDynamicsOptions o = *this;
        o.ode = ode.scaled(factor);
        o.gyro_cap *= std::sqrt(factor);
        return o;
    }
};

// Velocity annihilating the circulation forcing, the solution of A^T x = -G.
// For a single ring this is the steady translation speed (zero radial part).
inline Eigen::VectorXd quasi_steady_velocity(const CoefficientSet& coeffs) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(coeffs.A.transpose());
    if (lu.rcond() < 1e-13)
        throw SolverError("quasi_steady_velocity: A is near-singular (zero circulation?)");
    return -lu.solve(coeffs.G);
}

// (1/2)(d_q E . qdot) qdot: only the radial entries f_i'(R_i) contribute.
inline Eigen::VectorXd energy_gradient_term(const Eigen::VectorXd& fprime,
                                            const Eigen::VectorXd& qdot) {
    const int k = static_cast<int>(fprime.size());
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * k);
    for (int i = 0; i < k; ++i) v[2 * i] = 0.5 * fprime[i] * qdot[2 * i] * qdot[2 * i];
    return v;
}

namespace detail {

struct CollisionAbort {
    std::string label;
};

} // namespace detail

// Assembles everything the acceleration needs at a configuration; caches the
// last evaluation so diagnostics after a step reuse the final-stage assembly.
class BodyOde {
  public:
    BodyOde(const BodyConfiguration& config0, BodyDynamicsOptions opt = {})
        : base_(config0), opt_(opt) {
        base_.validate();
        rebuild_energy_models(config0);
    }

    const BodyDynamicsOptions& options() const { return opt_; }

    CoefficientSet coefficients_at(const Eigen::VectorXd& q) const {
        if (cache_q_ && cache_q_->size() == q.size() && (cache_q_->array() == q.array()).all())
            return *cache_;
        BodyConfiguration c = base_.displaced(q);
        ensure_window(c);
        CoefficientSet set = assemble_coefficients(c, opt_.assembly, &emodels_);
        cache_q_ = q;
        cache_ = set;
        return set;
    }

    Eigen::VectorXd acceleration(const Eigen::VectorXd& q, const Eigen::VectorXd& qdot) const {
        const CoefficientSet coeffs = coefficients_at(q);
        const BodyConfiguration c = base_.displaced(q);
        const Eigen::VectorXd gamma_term = christoffel_Gamma(c, qdot, qdot, opt_.assembly);
        Eigen::VectorXd fprime(base_.size());
        for (int i = 0; i < base_.size(); ++i)
            fprime[i] = emodels_[static_cast<std::size_t>(i)].deriv(q[2 * i]);
        return solve_acceleration(coeffs, qdot, energy_gradient_term(fprime, qdot) + gamma_term);
    }

    double gyro_frequency(const Eigen::VectorXd& q) const {
        const CoefficientSet coeffs = coefficients_at(q);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(coeffs.E + coeffs.M);
        const double lmin = es.eigenvalues().minCoeff();
        if (!(lmin > 0.0)) throw StiffnessError("gyro_frequency: E + M not positive definite");
        return coeffs.A.operatorNorm() / lmin;
    }

    static Eigen::VectorXd solve_acceleration(const CoefficientSet& coeffs,
                                              const Eigen::VectorXd& qdot,
                                              const Eigen::VectorXd& inertial_terms) {
        const Eigen::MatrixXd EM = coeffs.E + coeffs.M;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(EM);
        if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(EM);
            throw StiffnessError("body_acceleration: E + M near-singular, smallest eigenvalue " +
                                 std::to_string(es.eigenvalues().minCoeff()));
        }
        // the gyroscopic matrix is stored as a bilinear form; the force it
        // exerts on the test direction is A^T qdot
        return ldlt.solve(coeffs.G + coeffs.A.transpose() * qdot - inertial_terms);
    }

  private:
    void rebuild_energy_models(const BodyConfiguration& c) const {
        emodels_.clear();
        for (int i = 0; i < c.size(); ++i) {
            const auto& b = c.bodies[static_cast<std::size_t>(i)];
            const double R = b.center.r;
            const double r_floor = 1.05 * std::cbrt(b.volume / pi);  // R = rho(R) boundary
            const double lo = std::max(R * (1.0 - opt_.emodel_halfwidth), r_floor);
            const double hi = R * (1.0 + opt_.emodel_halfwidth);
            emodels_.emplace_back(b.volume, lo, hi, opt_.emodel_degree, opt_.assembly.interior_nr,
                                  opt_.assembly.interior_ntheta);
        }
        cache_q_.reset();
    }

    void ensure_window(const BodyConfiguration& c) const {
        for (int i = 0; i < c.size(); ++i) {
            if (!emodels_[static_cast<std::size_t>(i)].contains(
                    c.bodies[static_cast<std::size_t>(i)].center.r)) {
                rebuild_energy_models(c);
                ++window_rebuilds_;
                return;
            }
        }
    }

    BodyConfiguration base_;
    BodyDynamicsOptions opt_;
    mutable std::vector<RadialEnergyModel> emodels_;
    mutable std::optional<Eigen::VectorXd> cache_q_;
    mutable std::optional<CoefficientSet> cache_;
    mutable long window_rebuilds_ = 0;
};

// q'' = (E + M)^{-1} (G + A^T q' - (1/2)(d_q E . q') q' - Gamma(q', q')),
// with d_q E by central differences of the interior energy.
inline Eigen::VectorXd body_acceleration(const BodyConfiguration& config,
                                         const Eigen::VectorXd& qdot, const CoefficientSet& coeffs,
                                         const AssemblyOptions& opt = {}) {
    config.validate();
    const int k = config.size();
    Eigen::VectorXd fprime(k);
    for (int i = 0; i < k; ++i) {
        const auto& b = config.bodies[static_cast<std::size_t>(i)];
        const double h = 1e-3 * b.center.r;
        fprime[i] = (interior_energy_f(b.center.r + h, b.volume, opt.interior_nr,
                                       opt.interior_ntheta) -
                     interior_energy_f(b.center.r - h, b.volume, opt.interior_nr,
                                       opt.interior_ntheta)) /
                    (2.0 * h);
    }
    const Eigen::VectorXd gamma_term = christoffel_Gamma(config, qdot, qdot, opt);
    return BodyOde::solve_acceleration(coeffs, qdot,
                                       energy_gradient_term(fprime, qdot) + gamma_term);
}

inline Trajectory integrate_body(const BodyConfiguration& config0, const Eigen::VectorXd& qdot0,
                                 double horizon, const BodyDynamicsOptions& opt = {}) {
    config0.validate();
    const int k = config0.size();
    if (qdot0.size() != 2 * k) throw std::invalid_argument("integrate_body: qdot0 size mismatch");

    BodyOde ode(config0, opt);
    Trajectory traj;

    const auto pack = [k](const Eigen::VectorXd& q, const Eigen::VectorXd& v) {
        Eigen::VectorXd y(4 * k);
        y.head(2 * k) = q;
        y.tail(2 * k) = v;
        return y;
    };

    const auto record = [&](double t, const Eigen::VectorXd& y, double h) {
        const Eigen::VectorXd q = y.head(2 * k), v = y.tail(2 * k);
        traj.push(t, q, v, total_energy(v, ode.coefficients_at(q)), h);
    };

    const auto rhs = [&](double, const Eigen::VectorXd& y) {
        Eigen::VectorXd dy(4 * k);
        dy.head(2 * k) = y.tail(2 * k);
        try {
            dy.tail(2 * k) = ode.acceleration(y.head(2 * k), y.tail(2 * k));
        } catch (const ConfigurationError&) {
            throw detail::CollisionAbort{"event:collision"};
        }
        return dy;
    };

    const auto cap = [&](double, const Eigen::VectorXd& y) {
        const double freq = ode.gyro_frequency(y.head(2 * k));
        return (freq > 0.0) ? opt.gyro_cap / freq : 0.0;
    };

    const auto stop = [&](double, const Eigen::VectorXd& y) -> std::string {
        const BodyConfiguration c = config0.displaced(y.head(2 * k));
        const double gap = c.min_gap();
        const double rho = c.min_rho();
        for (int i = 0; i < k; ++i)
            if (c.bodies[static_cast<std::size_t>(i)].center.r - c.rho(i) <
                opt.collision_factor * c.rho(i))
                return "event:domain_exit";
        if (gap < opt.collision_factor * rho) return "event:collision";
        return {};
    };

    record(0.0, pack(config0.positions(), qdot0), 0.0);
    try {
        const OdeStatus st =
            integrate_dopri5(rhs, 0.0, horizon, pack(config0.positions(), qdot0), opt.ode, cap,
                             record, stop);
        traj.status = st.termination;
        traj.steps = st.steps;
        traj.rejected = st.rejected;
    } catch (const detail::CollisionAbort& abort) {
        traj.status = abort.label;
    }
    return traj;
}

} // namespace ringflow
