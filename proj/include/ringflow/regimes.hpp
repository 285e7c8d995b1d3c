#pragma once

// The two scaling regimes relating rescaled ring coordinates to physical
// configurations: spacing |log eps|^(-1/2) with time factor |log eps| and all
// circulations one, or spacing |log eps|^(-1) with time factor |log eps|^2.

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ringflow/geometry.hpp"

namespace ringflow {

enum class RegimeKind { sqrtlog, log };

struct RegimeSpec {
    RegimeKind kind = RegimeKind::log;
    double epsilon = 1e-2;
    double R0 = 1.0;
    double Z0 = 0.0;

    double L() const { return std::abs(std::log(epsilon)); }

    // rescaled time s = time_factor * t
    double time_factor() const { return kind == RegimeKind::sqrtlog ? L() : L() * L(); }

    // spatial contraction: q = q0 + qtilde / space_factor
    double space_factor() const { return kind == RegimeKind::sqrtlog ? std::sqrt(L()) : L(); }

    void validate() const {
        if (!(epsilon > 0.0) || epsilon >= 1.0)
            throw std::invalid_argument("RegimeSpec: epsilon must lie in (0,1)");
        if (!(R0 > 0.0)) throw std::invalid_argument("RegimeSpec: R0 must be > 0");
    }
};

// Ring parameters that stay fixed along the scaling limit: unrescaled volume
// (actual volume is vtilde * eps^2) and circulation.
struct RingSpec {
    double vtilde = pi;
    double gamma = 1.0;
};

// Drift velocity subtracted in the sqrtlog regime, (sqrt(L)/(4 pi R0)) e_Z
// per body; zero in the log regime.
inline Eigen::VectorXd regime_drift_velocity(const RegimeSpec& spec, int k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * k);
    if (spec.kind == RegimeKind::sqrtlog) {
        const double d = std::sqrt(spec.L()) / (4.0 * pi * spec.R0);
        for (int i = 0; i < k; ++i) v[2 * i + 1] = d;
    }
    return v;
}

inline BodyConfiguration regime_lift(const RegimeSpec& spec, const std::vector<RingSpec>& rings,
                                     const Eigen::VectorXd& qtilde) {
    spec.validate();
    const int k = static_cast<int>(rings.size());
    if (qtilde.size() != 2 * k) throw std::invalid_argument("regime_lift: qtilde size mismatch");
    BodyConfiguration config;
    const double sf = spec.space_factor();
    for (int i = 0; i < k; ++i) {
        BodyState b;
        b.volume = rings[static_cast<std::size_t>(i)].vtilde * spec.epsilon * spec.epsilon;
        b.circulation =
            spec.kind == RegimeKind::sqrtlog ? 1.0 : rings[static_cast<std::size_t>(i)].gamma;
        b.center = {spec.R0 + qtilde[2 * i] / sf, spec.Z0 + qtilde[2 * i + 1] / sf};
        config.bodies.push_back(b);
    }
    try {
        config.validate();
    } catch (const ConfigurationError& e) {
        throw ConfigurationError(std::string("regime_lift: lifted configuration inadmissible: ") +
                                 e.what());
    }
    return config;
}

// Physical velocity from d qtilde / ds.
inline Eigen::VectorXd regime_lift_velocity(const RegimeSpec& spec,
                                            const Eigen::VectorXd& qtilde_dot) {
    return qtilde_dot * (spec.time_factor() / spec.space_factor());
}

inline Eigen::VectorXd regime_project(const RegimeSpec& spec, const Eigen::VectorXd& q) {
    const int k = static_cast<int>(q.size() / 2);
    Eigen::VectorXd qt(2 * k);
    const double sf = spec.space_factor();
    for (int i = 0; i < k; ++i) {
        qt[2 * i] = (q[2 * i] - spec.R0) * sf;
        qt[2 * i + 1] = (q[2 * i + 1] - spec.Z0) * sf;
    }
    return qt;
}

inline Eigen::VectorXd regime_project_velocity(const RegimeSpec& spec,
                                               const Eigen::VectorXd& qdot) {
    return qdot * (spec.space_factor() / spec.time_factor());
}

} // namespace ringflow
