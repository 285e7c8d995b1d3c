#pragma once

// Body configurations in the half-plane and their boundary discretization.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ringflow/kernels.hpp"

namespace ringflow {

struct ConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BodyState {
    double volume = 1.0;       // 3D volume, pi rho^2 R
    double circulation = 1.0;  // gamma
    HalfPlanePoint center;     // (R, Z)
};

// A point of the configuration manifold: k disjoint circular cross-sections
// inside r > 0. The cross-section radius is slaved to the center through the
// fixed volume, rho = sqrt(v / (pi R)).
struct BodyConfiguration {
    std::vector<BodyState> bodies;

    int size() const { return static_cast<int>(bodies.size()); }

    double rho(int i) const {
        const auto& b = bodies.at(static_cast<std::size_t>(i));
        return std::sqrt(b.volume / (pi * b.center.r));
    }

    Eigen::VectorXd positions() const {
        Eigen::VectorXd q(2 * size());
        for (int i = 0; i < size(); ++i) {
            q[2 * i] = bodies[static_cast<std::size_t>(i)].center.r;
            q[2 * i + 1] = bodies[static_cast<std::size_t>(i)].center.z;
        }
        return q;
    }

    BodyConfiguration displaced(const Eigen::VectorXd& q) const {
        if (q.size() != 2 * size())
            throw std::invalid_argument("BodyConfiguration::displaced: wrong position size");
        BodyConfiguration out = *this;
        for (int i = 0; i < size(); ++i) {
            out.bodies[static_cast<std::size_t>(i)].center = {q[2 * i], q[2 * i + 1]};
        }
        return out;
    }

    Eigen::VectorXd circulations() const {
        Eigen::VectorXd g(size());
        for (int i = 0; i < size(); ++i) g[i] = bodies[static_cast<std::size_t>(i)].circulation;
        return g;
    }

    // Smallest boundary-to-boundary gap; body-to-axis margin counts too.
    double min_gap() const {
        double gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i < size(); ++i) {
            gap = std::min(gap, bodies[static_cast<std::size_t>(i)].center.r - rho(i));
            for (int j = i + 1; j < size(); ++j) {
                const auto& a = bodies[static_cast<std::size_t>(i)].center;
                const auto& b = bodies[static_cast<std::size_t>(j)].center;
                const double d = std::hypot(a.r - b.r, a.z - b.z);
                gap = std::min(gap, d - rho(i) - rho(j));
            }
        }
        return gap;
    }

    double min_rho() const {
        double m = std::numeric_limits<double>::infinity();
        for (int i = 0; i < size(); ++i) m = std::min(m, rho(i));
        return m;
    }

    void validate() const {
        if (bodies.empty()) throw ConfigurationError("configuration has no bodies");
        for (int i = 0; i < size(); ++i) {
            const auto& b = bodies[static_cast<std::size_t>(i)];
            if (!(b.volume > 0.0))
                throw ConfigurationError("body " + std::to_string(i) + ": volume must be > 0");
            if (!(b.center.r > 0.0))
                throw ConfigurationError("body " + std::to_string(i) + ": center must have r > 0");
            if (!(b.center.r - rho(i) > 0.0))
                throw ConfigurationError("body " + std::to_string(i) +
                                         " touches the axis: R - rho = " +
                                         std::to_string(b.center.r - rho(i)));
        }
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j) {
                const auto& a = bodies[static_cast<std::size_t>(i)].center;
                const auto& b = bodies[static_cast<std::size_t>(j)].center;
                const double d = std::hypot(a.r - b.r, a.z - b.z);
                if (!(d > rho(i) + rho(j)))
                    throw ConfigurationError("bodies " + std::to_string(i) + " and " +
                                             std::to_string(j) + " overlap");
            }
    }
};

// Equispaced trigonometric nodes on every body boundary. Node m of body i sits
// at angle theta_m = m/N_i, position q_i + rho_i (cos 2 pi theta, sin 2 pi theta).
struct BoundaryGrid {
    struct BodyPatch {
        HalfPlanePoint center;
        double rho = 0.0;
        int node_count = 0;
        int offset = 0;      // index of the first node in the global vector
        double weight = 0.0; // arclength element, 2 pi rho / N
    };

    std::vector<BodyPatch> patches;
    std::vector<HalfPlanePoint> nodes;
    std::vector<Vec2> normals;
    std::vector<Vec2> tangents;

    int total_nodes() const { return static_cast<int>(nodes.size()); }
    int body_count() const { return static_cast<int>(patches.size()); }
    int body_of(int node) const {
        for (int b = 0; b < body_count(); ++b) {
            const auto& p = patches[static_cast<std::size_t>(b)];
            if (node >= p.offset && node < p.offset + p.node_count) return b;
        }
        throw std::out_of_range("BoundaryGrid::body_of");
    }
};

// Samples of a function on the union of body boundaries, blocked by body.
struct BoundaryDensity {
    Eigen::VectorXd values;

    BoundaryDensity() = default;
    explicit BoundaryDensity(int n) : values(Eigen::VectorXd::Zero(n)) {}
    explicit BoundaryDensity(Eigen::VectorXd v) : values(std::move(v)) {}
};

inline BoundaryGrid make_grid(const BodyConfiguration& config, int node_count = 128) {
    config.validate();
    if (node_count < 16 || node_count % 2 != 0)
        throw std::invalid_argument("make_grid: node_count must be even and >= 16");
    BoundaryGrid grid;
    int offset = 0;
    for (int i = 0; i < config.size(); ++i) {
        BoundaryGrid::BodyPatch p;
        p.center = config.bodies[static_cast<std::size_t>(i)].center;
        p.rho = config.rho(i);
        p.node_count = node_count;
        p.offset = offset;
        p.weight = 2.0 * pi * p.rho / node_count;
        grid.patches.push_back(p);
        for (int m = 0; m < node_count; ++m) {
            const double a = 2.0 * pi * m / node_count;
            const Vec2 n{std::cos(a), std::sin(a)};
            grid.nodes.push_back({p.center.r + p.rho * n[0], p.center.z + p.rho * n[1]});
            grid.normals.push_back(n);
            // tau = n^perp with e_r -> e_z, e_z -> -e_r
            grid.tangents.push_back({-n[1], n[0]});
        }
        offset += node_count;
    }
    return grid;
}

} // namespace ringflow
