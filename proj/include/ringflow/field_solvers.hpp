#pragma once

// Field solves at a fixed configuration: the constrained first-kind system
// for the stream densities and boundary constants, the exterior Neumann
// problem for the potentials via the ring single layer, and the interior
// Neumann energy f(R).

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ringflow/boundary_ops.hpp"
#include "ringflow/geometry.hpp"

namespace ringflow {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Normal velocity of body i moving with virtual velocity t = (t_r, t_z):
// t_z n.e_z + t_r n.e_r - t_r rho_i / (2 R_i) on its own boundary, zero
// elsewhere. The last term keeps the volume fixed while R changes.
inline BoundaryDensity normal_velocity(const BoundaryGrid& grid, int body, const Vec2& t) {
    if (body < 0 || body >= grid.body_count())
        throw std::invalid_argument("normal_velocity: invalid body index");
    const auto& p = grid.patches[static_cast<std::size_t>(body)];
    BoundaryDensity out(grid.total_nodes());
    for (int m = 0; m < p.node_count; ++m) {
        const int g = p.offset + m;
        const auto& n = grid.normals[static_cast<std::size_t>(g)];
        out.values[g] = t[1] * n[1] + t[0] * n[0] - t[0] * p.rho / (2.0 * p.center.r);
    }
    return out;
}

// mu_i and the constant boundary values C_ij of the i-th stream function.
// mu_i is a density against arclength on the union of all boundaries.
struct StreamSolution {
    std::vector<BoundaryDensity> mu;  // k densities, each over all nodes
    Eigen::MatrixXd C;                // k x k boundary constants
    double residual = 0.0;
};

// One augmented dense solve per configuration: unknowns are the node values
// of mu plus one constant per body; rows impose (K mu)(y) - c_{body(y)} = 0 at
// every node and unit/zero circulation per body. All k right-hand sides share
// the factorization.
inline StreamSolution solve_stream(const BoundaryGrid& grid) {
    const int n = grid.total_nodes();
    const int k = grid.body_count();
    const Eigen::MatrixXd W = assemble_logsplit_matrix(grid, KernelKind::stream);

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + k, n + k);
    A.topLeftCorner(n, n) = W;
    for (int i = 0; i < n; ++i) A(i, n + grid.body_of(i)) = -1.0;
    for (int b = 0; b < k; ++b) {
        const auto& p = grid.patches[static_cast<std::size_t>(b)];
        for (int m = 0; m < p.node_count; ++m) A(n + b, p.offset + m) = p.weight;
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    if (lu.rcond() < 1e-14)
        throw SolverError("solve_stream: system is near-singular, rcond = " +
                          std::to_string(lu.rcond()));

    StreamSolution sol;
    sol.C.resize(k, k);
    sol.mu.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + k);
        rhs[n + i] = 1.0;
        const Eigen::VectorXd x = lu.solve(rhs);
        sol.residual = std::max(sol.residual, (A * x - rhs).lpNorm<Eigen::Infinity>());
        sol.mu.emplace_back(x.head(n));
        for (int j = 0; j < k; ++j) sol.C(i, j) = x[n + j];
    }
    if (sol.residual > 1e-10)
        throw SolverError("solve_stream: residual " + std::to_string(sol.residual));
    return sol;
}

// psi(y) = sum_i gamma_i int K(x, y) mu_i(x) dl(x) at a point outside all bodies.
inline double eval_stream(const BoundaryGrid& grid, const StreamSolution& sol,
                          const Eigen::VectorXd& gamma, const HalfPlanePoint& y) {
    if (gamma.size() != grid.body_count())
        throw std::invalid_argument("eval_stream: gamma size mismatch");
    for (const auto& p : grid.patches) {
        const double d = std::hypot(y.r - p.center.r, y.z - p.center.z);
        if (d <= p.rho) throw std::domain_error("eval_stream: point lies inside a body");
    }
    double acc = 0.0;
    for (int i = 0; i < grid.body_count(); ++i) {
        double psi_i = 0.0;
        for (int b = 0; b < grid.body_count(); ++b) {
            const auto& p = grid.patches[static_cast<std::size_t>(b)];
            for (int m = 0; m < p.node_count; ++m) {
                const int g = p.offset + m;
                psi_i += stream_kernel(grid.nodes[static_cast<std::size_t>(g)], y) *
                         sol.mu[static_cast<std::size_t>(i)].values[g] * p.weight;
            }
        }
        acc += gamma[i] * psi_i;
    }
    return acc;
}

struct PotentialSolution {
    BoundaryDensity sigma;        // single-layer density
    BoundaryDensity trace;        // boundary values of phi
    BoundaryDensity tangential;   // d phi / d tau
    BoundaryDensity normal_data;  // the prescribed velocity u(t*)
    double residual = 0.0;
};

// Shared pieces of the exterior Neumann solves at one grid: the second-kind
// operator (-1/2 I + D) factorized once, plus the trace matrix.
class PotentialBasis {
  public:
    explicit PotentialBasis(const BoundaryGrid& grid)
        : grid_(&grid),
          trace_matrix_(assemble_logsplit_matrix(grid, KernelKind::single_layer)) {
        Eigen::MatrixXd A = assemble_ring_neumann_matrix(grid);
        A.diagonal().array() -= 0.5;
        lu_.compute(A);
        if (lu_.rcond() < 1e-14)
            throw SolverError("solve_potential: near-singular second-kind system, rcond = " +
                              std::to_string(lu_.rcond()));
        system_ = std::move(A);
    }

    PotentialSolution solve(const BoundaryDensity& data) const {
        const auto& grid = *grid_;
        // compatibility: the r-weighted flux through the union must vanish
        BoundaryDensity rb(grid.total_nodes());
        for (int g = 0; g < grid.total_nodes(); ++g)
            rb.values[g] = grid.nodes[static_cast<std::size_t>(g)].r * data.values[g];
        const double flux = boundary_integral(grid, rb).sum();
        const double scale = std::max(1.0, data.values.lpNorm<Eigen::Infinity>());
        if (std::abs(flux) > 1e-10 * scale)
            throw SolverError("solve_potential: Neumann data violates the r-weighted "
                              "compatibility condition, flux = " + std::to_string(flux));

        PotentialSolution sol;
        sol.normal_data = data;
        sol.sigma = BoundaryDensity(lu_.solve(data.values));
        sol.residual = (system_ * sol.sigma.values - data.values).lpNorm<Eigen::Infinity>();
        if (sol.residual > 1e-8)
            throw SolverError("solve_potential: residual " + std::to_string(sol.residual));
        sol.trace = BoundaryDensity(trace_matrix_ * sol.sigma.values);
        sol.tangential = tangential_derivative(grid, sol.trace);
        return sol;
    }

    const Eigen::MatrixXd& trace_matrix() const { return trace_matrix_; }

  private:
    const BoundaryGrid* grid_;
    Eigen::MatrixXd trace_matrix_;
    Eigen::MatrixXd system_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

inline PotentialSolution solve_potential(const BoundaryGrid& grid, int body, const Vec2& t) {
    return PotentialBasis(grid).solve(normal_velocity(grid, body, t));
}

// The flat (2D) dipole potential around a disk of radius rho at q:
// phi(x) = -rho^2 t.(x - q) / |x - q|^2; on the circle d_n phi = t.n.
inline double flat_potential(const Vec2& q, double rho, const Vec2& t, const Vec2& x) {
    const double dr = x[0] - q[0], dz = x[1] - q[1];
    const double d2 = dr * dr + dz * dz;
    if (d2 == 0.0) throw std::domain_error("flat_potential: singular at x = q");
    return -rho * rho * (t[0] * dr + t[1] * dz) / d2;
}

namespace detail {

// Finite-volume solve of div(r grad phi) = 0 on the disk B_rho((R,0)) with
// Neumann data g(theta) = cos(theta) - rho/(2R); returns the boundary energy
// integral r phi g dl. Cell centers (i + 1/2) h_r x j h_theta; the center
// face has zero length, so no axis special-casing is needed.
inline double interior_energy_once(double R, double rho, int nr, int ntheta) {
    const double hr = rho / nr;
    const double ht = 2.0 * pi / ntheta;
    const auto idx = [&](int i, int j) { return i * ntheta + ((j % ntheta + ntheta) % ntheta); };
    const int n = nr * ntheta;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(5 * n));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

    const auto add = [&](int row, int col, double v) { trip.emplace_back(row, col, v); };

    for (int i = 0; i < nr; ++i) {
        const double rc = (i + 0.5) * hr;  // cell-center polar radius
        for (int j = 0; j < ntheta; ++j) {
            const int row = idx(i, j);
            const double theta = j * ht;
            // radial faces at i*hr and (i+1)*hr
            if (i > 0) {
                const double rf = i * hr;
                const double coeff = (R + rf * std::cos(theta)) * rf * ht / hr;
                add(row, row, -coeff);
                add(row, idx(i - 1, j), coeff);
            }
            if (i < nr - 1) {
                const double rf = (i + 1) * hr;
                const double coeff = (R + rf * std::cos(theta)) * rf * ht / hr;
                add(row, row, -coeff);
                add(row, idx(i + 1, j), coeff);
            } else {
                const double g = std::cos(theta) - rho / (2.0 * R);
                rhs[row] -= (R + rho * std::cos(theta)) * g * rho * ht;
            }
            // angular faces at theta +- ht/2
            for (int s = -1; s <= 1; s += 2) {
                const double tf = theta + s * 0.5 * ht;
                const double coeff = (R + rc * std::cos(tf)) * hr / (rc * ht);
                add(row, row, -coeff);
                add(row, idx(i, j + s), coeff);
            }
        }
    }
    // The flux rows are rank n-1 with constant nullspace and consistent rhs
    // (the data is exactly mean-free on the grid), so pinning one unknown
    // yields the same solution as any other gauge.
    std::vector<Eigen::Triplet<double>> pinned;
    pinned.reserve(trip.size() + 1);
    for (const auto& t : trip)
        if (t.row() != 0) pinned.push_back(t);
    pinned.emplace_back(0, 0, 1.0);
    rhs[0] = 0.0;

    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(pinned.begin(), pinned.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver(A);
    if (solver.info() != Eigen::Success)
        throw SolverError("interior_energy_f: sparse factorization failed");
    const Eigen::VectorXd phi = solver.solve(rhs);

    // energy = contour integral of r phi d_n phi; extrapolate phi to the wall
    double energy = 0.0;
    for (int j = 0; j < ntheta; ++j) {
        const double theta = j * ht;
        const double g = std::cos(theta) - rho / (2.0 * R);
        double phi_wall = phi[idx(nr - 1, j)] + 0.5 * hr * g;
        energy += (R + rho * std::cos(theta)) * phi_wall * g * rho * ht;
    }
    return energy;
}

} // namespace detail

// Energy of the interior field for a unit radial virtual velocity,
// f(R) = int_B r |grad phi|^2 with d_n phi = n.e_r - rho/(2R). Richardson
// extrapolation of the second-order finite-volume solve.
inline double interior_energy_f(double R, double v, int nr = 64, int ntheta = 128) {
    if (!(R > 0.0) || !(v > 0.0))
        throw std::domain_error("interior_energy_f: need R > 0 and v > 0");
    const double rho = std::sqrt(v / (pi * R));
    if (!(R - rho > 0.0))
        throw std::domain_error("interior_energy_f: body leaves the half-plane");
    const double coarse = detail::interior_energy_once(R, rho, nr, ntheta);
    const double fine = detail::interior_energy_once(R, rho, 2 * nr, 2 * ntheta);
    return (4.0 * fine - coarse) / 3.0;
}

} // namespace ringflow
