#pragma once

// Time series of states with per-step diagnostics, shared by the body and
// point-vortex integrators. The energy column holds the conserved quantity
// of whichever system produced the trajectory.

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ringflow {

struct Trajectory {
    struct State {
        Eigen::VectorXd q;
        Eigen::VectorXd qdot;
    };

    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> energy;
    std::vector<double> step_size;
    std::string status = "horizon";
    long steps = 0;
    long rejected = 0;

    void push(double t, Eigen::VectorXd q, Eigen::VectorXd qdot, double e, double h) {
        if (!times.empty() && !(t > times.back()))
            throw std::logic_error("Trajectory: times must increase");
        times.push_back(t);
        states.push_back({std::move(q), std::move(qdot)});
        energy.push_back(e);
        step_size.push_back(h);
    }

    std::size_t size() const { return times.size(); }

    // linear interpolation of q at time t (clamped to the recorded range)
    Eigen::VectorXd sample_q(double t) const {
        if (times.empty()) throw std::logic_error("Trajectory: empty");
        if (t <= times.front()) return states.front().q;
        if (t >= times.back()) return states.back().q;
        std::size_t lo = 0, hi = times.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (times[mid] <= t ? lo : hi) = mid;
        }
        const double w = (t - times[lo]) / (times[hi] - times[lo]);
        return (1.0 - w) * states[lo].q + w * states[hi].q;
    }
};

} // namespace ringflow
