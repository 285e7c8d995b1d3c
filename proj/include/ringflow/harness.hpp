#pragma once

// Run configuration ingestion and the epsilon-sweep convergence study
// comparing the rescaled body dynamics against the limiting point-vortex
// systems.

#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ringflow/dynamics.hpp"
#include "ringflow/pointvortex.hpp"
#include "ringflow/regimes.hpp"

namespace ringflow {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    RegimeKind regime = RegimeKind::log;
    double R0 = 1.0;
    double Z0 = 0.0;
    std::vector<double> epsilons;  // strictly decreasing; single entry for plain runs
    double horizon = 1.0;          // in rescaled time
    int node_count = 64;
    std::vector<RingSpec> rings;
    Eigen::VectorXd qtilde0;
    std::optional<Eigen::VectorXd> qtilde_dot0;  // rescaled; quasi-steady start when absent
    OdeControls ode;
    double gyro_cap = 0.2;
    nlohmann::json raw;

    int k() const { return static_cast<int>(rings.size()); }

    RegimeSpec regime_spec(double eps) const { return {regime, eps, R0, Z0}; }

    PvSystem matching_system() const {
        return regime == RegimeKind::log ? PvSystem::J1 : PvSystem::J2;
    }

    Eigen::VectorXd gammas() const {
        Eigen::VectorXd g(k());
        for (int i = 0; i < k(); ++i) g[i] = rings[static_cast<std::size_t>(i)].gamma;
        return g;
    }

    BodyDynamicsOptions dynamics_options() const {
        BodyDynamicsOptions opt;
        opt.assembly.node_count = node_count;
        opt.ode = ode;
        opt.gyro_cap = gyro_cap;
        return opt;
    }
};

namespace detail {

[[noreturn]] inline void config_fail(const std::string& path, const std::string& msg) {
    throw ConfigError("config error at " + path + ": " + msg);
}

inline double require_number(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number()) config_fail(path, "expected a number");
    return j.get<double>();
}

} // namespace detail

inline RunConfig parse_run_config(const nlohmann::json& j) {
    using detail::config_fail;
    RunConfig cfg;
    cfg.raw = j;

    if (!j.is_object()) config_fail("$", "expected an object");
    if (!j.contains("schema_version")) config_fail("$.schema_version", "missing");
    if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != 1)
        config_fail("$.schema_version", "unsupported version (expected 1)");

    if (!j.contains("regime") || !j["regime"].is_string())
        config_fail("$.regime", "expected \"log\" or \"sqrtlog\"");
    const std::string regime = j["regime"].get<std::string>();
    if (regime == "log")
        cfg.regime = RegimeKind::log;
    else if (regime == "sqrtlog")
        cfg.regime = RegimeKind::sqrtlog;
    else
        config_fail("$.regime", "unknown regime \"" + regime + "\"");

    cfg.R0 = j.contains("R0") ? detail::require_number(j["R0"], "$.R0") : 1.0;
    cfg.Z0 = j.contains("Z0") ? detail::require_number(j["Z0"], "$.Z0") : 0.0;
    if (!(cfg.R0 > 0.0)) config_fail("$.R0", "must be > 0");

    if (j.contains("epsilon_list")) {
        if (!j["epsilon_list"].is_array() ) config_fail("$.epsilon_list", "expected an array");
        for (std::size_t i = 0; i < j["epsilon_list"].size(); ++i)
            cfg.epsilons.push_back(detail::require_number(
                j["epsilon_list"][i], "$.epsilon_list[" + std::to_string(i) + "]"));
    } else if (j.contains("epsilon")) {
        cfg.epsilons.push_back(detail::require_number(j["epsilon"], "$.epsilon"));
    } else {
        config_fail("$.epsilon", "either epsilon or epsilon_list is required");
    }
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
        const double e = cfg.epsilons[i];
        if (!(e > 0.0) || e >= 1.0)
            config_fail("$.epsilon_list[" + std::to_string(i) + "]", "must lie in (0,1)");
        if (i > 0 && !(e < cfg.epsilons[i - 1]))
            config_fail("$.epsilon_list", "entries must be strictly decreasing");
    }

    if (j.contains("horizon")) cfg.horizon = detail::require_number(j["horizon"], "$.horizon");
    if (!(cfg.horizon > 0.0)) config_fail("$.horizon", "must be > 0");

    if (j.contains("node_count")) {
        if (!j["node_count"].is_number_integer()) config_fail("$.node_count", "expected integer");
        cfg.node_count = j["node_count"].get<int>();
        if (cfg.node_count < 16 || cfg.node_count % 2 != 0)
            config_fail("$.node_count", "must be even and >= 16");
    }

    if (!j.contains("bodies") || !j["bodies"].is_array() || j["bodies"].empty())
        config_fail("$.bodies", "expected a non-empty array");
    const auto& bodies = j["bodies"];
    cfg.qtilde0.resize(2 * static_cast<int>(bodies.size()));
    std::vector<double> qd0;
    bool have_qd0 = false;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        const std::string base = "$.bodies[" + std::to_string(i) + "]";
        const auto& b = bodies[i];
        if (!b.is_object()) config_fail(base, "expected an object");
        RingSpec ring;
        if (!b.contains("volume")) config_fail(base + ".volume", "missing");
        ring.vtilde = detail::require_number(b["volume"], base + ".volume");
        if (!(ring.vtilde > 0.0)) config_fail(base + ".volume", "must be > 0");
        if (!b.contains("gamma")) config_fail(base + ".gamma", "missing");
        ring.gamma = detail::require_number(b["gamma"], base + ".gamma");
        if (ring.gamma == 0.0) config_fail(base + ".gamma", "circulation must be nonzero");
        if (cfg.regime == RegimeKind::sqrtlog && ring.gamma != 1.0)
            config_fail(base + ".gamma", "sqrtlog regime requires all circulations equal to 1");
        cfg.rings.push_back(ring);

        if (!b.contains("qtilde0") || !b["qtilde0"].is_array() || b["qtilde0"].size() != 2)
            config_fail(base + ".qtilde0", "expected [r, z]");
        cfg.qtilde0[2 * static_cast<int>(i)] =
            detail::require_number(b["qtilde0"][0], base + ".qtilde0[0]");
        cfg.qtilde0[2 * static_cast<int>(i) + 1] =
            detail::require_number(b["qtilde0"][1], base + ".qtilde0[1]");

        if (b.contains("qtilde_dot0") && !b["qtilde_dot0"].is_null()) {
            if (!b["qtilde_dot0"].is_array() || b["qtilde_dot0"].size() != 2)
                config_fail(base + ".qtilde_dot0", "expected [r, z] or null");
            have_qd0 = true;
            qd0.push_back(detail::require_number(b["qtilde_dot0"][0], base + ".qtilde_dot0[0]"));
            qd0.push_back(detail::require_number(b["qtilde_dot0"][1], base + ".qtilde_dot0[1]"));
        } else {
            qd0.push_back(0.0);
            qd0.push_back(0.0);
        }
    }
    if (have_qd0) {
        cfg.qtilde_dot0 = Eigen::Map<Eigen::VectorXd>(qd0.data(), static_cast<int>(qd0.size()));
    }

    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (!t.is_object()) config_fail("$.tolerances", "expected an object");
        if (t.contains("rel_tol")) cfg.ode.rel_tol = detail::require_number(t["rel_tol"], "$.tolerances.rel_tol");
        if (t.contains("abs_tol")) cfg.ode.abs_tol = detail::require_number(t["abs_tol"], "$.tolerances.abs_tol");
        if (t.contains("gyro_cap")) cfg.gyro_cap = detail::require_number(t["gyro_cap"], "$.tolerances.gyro_cap");
    }
    return cfg;
}

// The quasi-steady physical start velocity -(A^T)^{-1} G at a configuration.
inline Eigen::VectorXd quasi_steady_start(const BodyConfiguration& config,
                                          const AssemblyOptions& opt) {
    return quasi_steady_velocity(assemble_coefficients(config, opt));
}

// || (A^T)^{-1} G / L + J1(qtilde) || in the log regime, and the drift-shifted
// analogue in the sqrtlog regime.
inline double static_limit_error(const RunConfig& cfg, double eps) {
    const RegimeSpec spec = cfg.regime_spec(eps);
    const BodyConfiguration config = regime_lift(spec, cfg.rings, cfg.qtilde0);
    AssemblyOptions opt;
    opt.node_count = cfg.node_count;
    const CoefficientSet coeffs = assemble_coefficients(config, opt);
    const Eigen::VectorXd x = -quasi_steady_velocity(coeffs);  // (A^T)^{-1} G
    const double L = spec.L();
    if (cfg.regime == RegimeKind::log) {
        const Eigen::VectorXd J = pv_velocity(PvSystem::J1, config.circulations(), cfg.qtilde0, cfg.R0);
        return (x / L + J).norm();
    }
    const Eigen::VectorXd drift = regime_drift_velocity(spec, cfg.k());
    const Eigen::VectorXd J = pv_velocity(PvSystem::J2, config.circulations(), cfg.qtilde0, cfg.R0);
    return (x / std::sqrt(L) - drift + J).norm();
}

struct SweepRow {
    double epsilon = 0.0;
    double sup_distance = std::numeric_limits<double>::quiet_NaN();
    double energy_drift = std::numeric_limits<double>::quiet_NaN();
    double static_check = std::numeric_limits<double>::quiet_NaN();
    double runtime_seconds = 0.0;
    std::string status = "ok";
};

struct SweepReport {
    std::vector<SweepRow> rows;
};

// Body trajectory projected to the rescaled frame (with drift subtraction in
// the sqrtlog regime) on a uniform grid of rescaled times.
inline std::vector<Eigen::VectorXd> project_body_trajectory(const RegimeSpec& spec,
                                                            const Trajectory& body,
                                                            const std::vector<double>& s_grid) {
    const int k = static_cast<int>(body.states.front().q.size() / 2);
    const Eigen::VectorXd drift = regime_drift_velocity(spec, k);
    std::vector<Eigen::VectorXd> out;
    out.reserve(s_grid.size());
    for (const double s : s_grid) {
        const double t = s / spec.time_factor();
        Eigen::VectorXd qt = regime_project(spec, body.sample_q(t));
        qt += s * drift;  // undo the common self-induced translation
        out.push_back(qt);
    }
    return out;
}

inline SweepRow run_sweep_row(const RunConfig& cfg, double eps) {
    SweepRow row;
    row.epsilon = eps;
    const auto t_start = std::chrono::steady_clock::now();
    const RegimeSpec spec = cfg.regime_spec(eps);

    BodyConfiguration config;
    try {
        config = regime_lift(spec, cfg.rings, cfg.qtilde0);
    } catch (const ConfigurationError&) {
        row.status = "skipped:inadmissible_lift";
        return row;
    }

    row.static_check = static_limit_error(cfg, eps);

    BodyDynamicsOptions opt = cfg.dynamics_options();
    Eigen::VectorXd qdot0;
    if (cfg.qtilde_dot0) {
        qdot0 = regime_lift_velocity(spec, *cfg.qtilde_dot0);
    } else {
        qdot0 = quasi_steady_start(config, opt.assembly);
    }

    const double horizon_phys = cfg.horizon / spec.time_factor();
    const Trajectory body = integrate_body(config, qdot0, horizon_phys, opt);
    if (body.status != "horizon") row.status = body.status;

    double e0 = body.energy.front();
    double drift = 0.0;
    for (const double e : body.energy) drift = std::max(drift, std::abs(e - e0));
    row.energy_drift = drift / std::max(1e-300, std::abs(e0));

    const Trajectory pv = integrate_pv(cfg.matching_system(), cfg.gammas(), cfg.qtilde0,
                                       cfg.horizon, cfg.R0);

    const double s_max = std::min(cfg.horizon, body.times.back() * spec.time_factor());
    std::vector<double> s_grid;
    const int samples = 200;
    for (int m = 0; m <= samples; ++m) s_grid.push_back(s_max * m / samples);

    const auto projected = project_body_trajectory(spec, body, s_grid);
    double sup = 0.0;
    for (std::size_t m = 0; m < s_grid.size(); ++m)
        sup = std::max(sup, (projected[m] - pv.sample_q(s_grid[m])).norm());
    row.sup_distance = sup;

    row.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return row;
}

inline SweepReport run_epsilon_sweep(const RunConfig& cfg) {
    SweepReport report;
    for (const double eps : cfg.epsilons) report.rows.push_back(run_sweep_row(cfg, eps));
    return report;
}

} // namespace ringflow
