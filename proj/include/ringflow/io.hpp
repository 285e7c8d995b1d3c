#pragma once

// Deterministic file output: trajectory CSV with a JSON metadata sidecar.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "ringflow/trajectory.hpp"
#include "ringflow/version.hpp"

namespace ringflow {

namespace detail {

inline std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

// Header: t, q_R1, q_Z1, ..., qdot_R1, ..., energy. One row per recorded step.
inline void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    if (traj.states.empty()) throw std::invalid_argument("write_trajectory_csv: empty trajectory");
    const int k = static_cast<int>(traj.states.front().q.size() / 2);
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_trajectory_csv: cannot open " + path.string());

    os << "t";
    for (int i = 1; i <= k; ++i) os << ", q_R" << i << ", q_Z" << i;
    for (int i = 1; i <= k; ++i) os << ", qdot_R" << i << ", qdot_Z" << i;
    os << ", energy\n";

    for (std::size_t m = 0; m < traj.size(); ++m) {
        os << detail::fmt17(traj.times[m]);
        for (int c = 0; c < 2 * k; ++c) os << ", " << detail::fmt17(traj.states[m].q[c]);
        for (int c = 0; c < 2 * k; ++c) os << ", " << detail::fmt17(traj.states[m].qdot[c]);
        os << ", " << detail::fmt17(traj.energy[m]) << "\n";
    }
    if (!os) throw std::runtime_error("write_trajectory_csv: write failed for " + path.string());
}

inline void write_metadata_json(const std::filesystem::path& path, const nlohmann::json& config,
                                const Trajectory& traj, const nlohmann::json& extra = {}) {
    nlohmann::json meta;
    meta["build"] = build_id();
    meta["config"] = config;
    meta["termination"] = traj.status;
    meta["steps"] = traj.steps;
    meta["rejected_steps"] = traj.rejected;
    meta["samples"] = traj.size();
    if (!extra.is_null()) meta["run"] = extra;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_metadata_json: cannot open " + path.string());
    os << meta.dump(2) << "\n";
    if (!os) throw std::runtime_error("write_metadata_json: write failed for " + path.string());
}

} // namespace ringflow
