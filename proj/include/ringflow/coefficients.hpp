#pragma once

// Assembly of the coefficients of the body ODE: interior energy E, added
// inertia M, gyroscopic coupling A, circulation force G, the boundary
// constants C, and the Christoffel contraction of M.

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ringflow/field_solvers.hpp"
#include "ringflow/geometry.hpp"

namespace ringflow {

struct AssemblyOptions {
    int node_count = 64;
    int interior_nr = 64;
    int interior_ntheta = 128;
    double fd_scale = 1e-3;  // Christoffel step = fd_scale * min(rho, gap)
};

// Chebyshev interpolant of R -> f(R; v) on a window, so the integrator can
// evaluate E and dE/dR without re-running the interior solve per stage.
class RadialEnergyModel {
  public:
    RadialEnergyModel() = default;

    RadialEnergyModel(double volume, double r_lo, double r_hi, int degree = 14, int nr = 64,
                      int ntheta = 128)
        : a_(r_lo), b_(r_hi), coef_(static_cast<std::size_t>(degree + 1), 0.0) {
        if (!(r_lo > 0.0) || !(r_hi > r_lo))
            throw std::invalid_argument("RadialEnergyModel: bad window");
        const int n = degree + 1;
        std::vector<double> fx(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double x = std::cos(pi * (j + 0.5) / n);
            const double R = 0.5 * (a_ + b_) + 0.5 * (b_ - a_) * x;
            fx[static_cast<std::size_t>(j)] = interior_energy_f(R, volume, nr, ntheta);
        }
        for (int c = 0; c < n; ++c) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j)
                acc += fx[static_cast<std::size_t>(j)] * std::cos(pi * c * (j + 0.5) / n);
            coef_[static_cast<std::size_t>(c)] = 2.0 / n * acc;
        }
        coef_[0] *= 0.5;
    }

    bool contains(double R) const { return R >= a_ && R <= b_; }
    double lo() const { return a_; }
    double hi() const { return b_; }

    double value(double R) const { return clenshaw(coef_, to_unit(R)); }

    double deriv(double R) const {
        // derivative of the Chebyshev series via the standard recurrence
        const int n = static_cast<int>(coef_.size());
        std::vector<double> d(static_cast<std::size_t>(n), 0.0);
        for (int c = n - 2; c >= 0; --c) {
            d[static_cast<std::size_t>(c)] =
                (c + 2 < n ? d[static_cast<std::size_t>(c + 2)] : 0.0) +
                2.0 * (c + 1) * coef_[static_cast<std::size_t>(c + 1)];
        }
        d[0] *= 0.5;
        return clenshaw(d, to_unit(R)) * 2.0 / (b_ - a_);
    }

  private:
    double to_unit(double R) const {
        if (!contains(R))
            throw std::domain_error("RadialEnergyModel: R outside fitted window");
        return (2.0 * R - a_ - b_) / (b_ - a_);
    }

    static double clenshaw(const std::vector<double>& c, double x) {
        double b1 = 0.0, b2 = 0.0;
        for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
            const double t = 2.0 * x * b1 - b2 + c[static_cast<std::size_t>(k)];
            b2 = b1;
            b1 = t;
        }
        return x * b1 - b2 + c[0];
    }

    double a_ = 0.0, b_ = 1.0;
    std::vector<double> coef_;
};

// E = blockdiag(f_i(R_i), v_i).
inline Eigen::MatrixXd energy_matrix_E(const BodyConfiguration& config,
                                       const AssemblyOptions& opt = {}) {
    config.validate();
    const int k = config.size();
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) {
        const auto& b = config.bodies[static_cast<std::size_t>(i)];
        E(2 * i, 2 * i) =
            interior_energy_f(b.center.r, b.volume, opt.interior_nr, opt.interior_ntheta);
        E(2 * i + 1, 2 * i + 1) = b.volume;
    }
    return E;
}

namespace detail {

struct PotentialBank {
    std::vector<PotentialSolution> basis;  // 2k solutions, index 2i + a
};

inline PotentialBank solve_potential_basis(const BoundaryGrid& grid) {
    PotentialBank bank;
    PotentialBasis fact(grid);
    for (int i = 0; i < grid.body_count(); ++i) {
        bank.basis.push_back(fact.solve(normal_velocity(grid, i, {1.0, 0.0})));
        bank.basis.push_back(fact.solve(normal_velocity(grid, i, {0.0, 1.0})));
    }
    return bank;
}

} // namespace detail

// Added-inertia matrix through the boundary form -int r u(t*) phi(s*) dl,
// symmetrized; the raw asymmetry is returned as a diagnostic.
inline Eigen::MatrixXd mass_matrix_M(const BoundaryGrid& grid, const detail::PotentialBank& bank,
                                     double* asymmetry = nullptr) {
    const int k = grid.body_count();
    Eigen::MatrixXd M(2 * k, 2 * k);
    for (int p = 0; p < 2 * k; ++p) {
        const auto& sp = bank.basis[static_cast<std::size_t>(p)];
        for (int q = 0; q < 2 * k; ++q) {
            const auto& sq = bank.basis[static_cast<std::size_t>(q)];
            double acc = 0.0;
            const auto& patch = grid.patches[static_cast<std::size_t>(p / 2)];
            for (int m = 0; m < patch.node_count; ++m) {
                const int g = patch.offset + m;
                acc += grid.nodes[static_cast<std::size_t>(g)].r * sp.normal_data.values[g] *
                       sq.trace.values[g];
            }
            M(p, q) = -acc * patch.weight;
        }
    }
    const double asym = (M - M.transpose()).norm();
    if (asymmetry) *asymmetry = asym;
    if (asym > 1e-6 * std::max(1.0, M.norm()))
        throw SolverError("mass_matrix_M: asymmetry " + std::to_string(asym));
    return 0.5 * (M + M.transpose());
}

// Gyroscopic matrix in the bilinear-form convention A(p,q) = (A e_p).e_q;
// the ODE applies its transpose. Antisymmetric by construction.
inline Eigen::MatrixXd gyro_A(const BoundaryGrid& grid, const detail::PotentialBank& bank,
                              const StreamSolution& stream, const Eigen::VectorXd& gamma) {
    const int k = grid.body_count();
    const int n = grid.total_nodes();
    Eigen::VectorXd dpsi = Eigen::VectorXd::Zero(n);  // d_n psi = r sum gamma_l mu_l
    for (int l = 0; l < k; ++l)
        for (int g = 0; g < n; ++g)
            dpsi[g] += gamma[l] * grid.nodes[static_cast<std::size_t>(g)].r *
                       stream.mu[static_cast<std::size_t>(l)].values[g];

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * k, 2 * k);
    for (int p = 0; p < 2 * k; ++p) {
        for (int q = p + 1; q < 2 * k; ++q) {
            const auto& sp = bank.basis[static_cast<std::size_t>(p)];
            const auto& sq = bank.basis[static_cast<std::size_t>(q)];
            double acc = 0.0;
            for (int b = 0; b < k; ++b) {
                const auto& patch = grid.patches[static_cast<std::size_t>(b)];
                double local = 0.0;
                for (int m = 0; m < patch.node_count; ++m) {
                    const int g = patch.offset + m;
                    local += dpsi[g] * (sp.tangential.values[g] * sq.normal_data.values[g] -
                                        sq.tangential.values[g] * sp.normal_data.values[g]);
                }
                acc += local * patch.weight;
            }
            A(p, q) = acc;
            A(q, p) = -acc;
        }
    }
    return A;
}

// G(q, gamma) tested against the 2k basis tangent vectors,
// G_p = int_{dB_i} (1/2r) (d_n psi)^2 u(e_p) dl.
inline Eigen::VectorXd force_G(const BoundaryGrid& grid, const StreamSolution& stream,
                               const Eigen::VectorXd& gamma) {
    const int k = grid.body_count();
    const int n = grid.total_nodes();
    Eigen::VectorXd dpsi = Eigen::VectorXd::Zero(n);
    for (int l = 0; l < k; ++l)
        for (int g = 0; g < n; ++g)
            dpsi[g] += gamma[l] * grid.nodes[static_cast<std::size_t>(g)].r *
                       stream.mu[static_cast<std::size_t>(l)].values[g];

    Eigen::VectorXd G = Eigen::VectorXd::Zero(2 * k);
    for (int i = 0; i < k; ++i) {
        const auto& patch = grid.patches[static_cast<std::size_t>(i)];
        for (int a = 0; a < 2; ++a) {
            const Vec2 t = (a == 0) ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
            const BoundaryDensity u = normal_velocity(grid, i, t);
            double acc = 0.0;
            for (int m = 0; m < patch.node_count; ++m) {
                const int g = patch.offset + m;
                acc += dpsi[g] * dpsi[g] * u.values[g] /
                       (2.0 * grid.nodes[static_cast<std::size_t>(g)].r);
            }
            G[2 * i + a] = acc * patch.weight;
        }
    }
    return G;
}

struct CoefficientSet {
    Eigen::MatrixXd E;  // 2k x 2k block diagonal
    Eigen::MatrixXd M;  // 2k x 2k symmetric
    Eigen::MatrixXd A;  // 2k x 2k antisymmetric (form convention)
    Eigen::VectorXd G;  // 2k
    Eigen::MatrixXd C;  // k x k
    Eigen::VectorXd gamma;
    double m_asymmetry = 0.0;
};

inline Eigen::MatrixXd mass_matrix_at(const BodyConfiguration& config,
                                      const AssemblyOptions& opt = {}) {
    const BoundaryGrid grid = make_grid(config, opt.node_count);
    return mass_matrix_M(grid, detail::solve_potential_basis(grid), nullptr);
}

inline CoefficientSet assemble_coefficients(const BodyConfiguration& config,
                                            const AssemblyOptions& opt = {},
                                            const std::vector<RadialEnergyModel>* emodel = nullptr) {
    config.validate();
    const BoundaryGrid grid = make_grid(config, opt.node_count);
    const auto bank = detail::solve_potential_basis(grid);
    const auto stream = solve_stream(grid);

    CoefficientSet out;
    out.gamma = config.circulations();
    const int k = config.size();
    if (emodel) {
        out.E = Eigen::MatrixXd::Zero(2 * k, 2 * k);
        for (int i = 0; i < k; ++i) {
            out.E(2 * i, 2 * i) = (*emodel)[static_cast<std::size_t>(i)].value(
                config.bodies[static_cast<std::size_t>(i)].center.r);
            out.E(2 * i + 1, 2 * i + 1) = config.bodies[static_cast<std::size_t>(i)].volume;
        }
    } else {
        out.E = energy_matrix_E(config, opt);
    }
    out.M = mass_matrix_M(grid, bank, &out.m_asymmetry);
    out.A = gyro_A(grid, bank, stream, out.gamma);
    out.G = force_G(grid, stream, out.gamma);
    out.C = stream.C;
    return out;
}

// Christoffel contraction <Gamma(q), a, b> against the basis covectors, built
// from central differences of the added inertia in each coordinate.
inline Eigen::VectorXd christoffel_Gamma(const BodyConfiguration& config,
                                         const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                         const AssemblyOptions& opt = {}) {
    config.validate();
    const int dim = 2 * config.size();
    if (a.size() != dim || b.size() != dim)
        throw std::invalid_argument("christoffel_Gamma: vector size mismatch");
    if (a.isZero(0.0) || b.isZero(0.0)) return Eigen::VectorXd::Zero(dim);

    const double h = opt.fd_scale * std::min(config.min_rho(), config.min_gap());
    if (!(h > 1e-300)) throw std::invalid_argument("christoffel_Gamma: degenerate step");
    const Eigen::VectorXd q0 = config.positions();

    std::vector<Eigen::MatrixXd> dM(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c) {
        Eigen::VectorXd qp = q0, qm = q0;
        qp[c] += h;
        qm[c] -= h;
        dM[static_cast<std::size_t>(c)] =
            (mass_matrix_at(config.displaced(qp), opt) - mass_matrix_at(config.displaced(qm), opt)) /
            (2.0 * h);
    }

    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
    for (int kk = 0; kk < dim; ++kk) {
        double acc = 0.0;
        for (int c = 0; c < dim; ++c) {
            acc += b[c] * (dM[static_cast<std::size_t>(c)].row(kk).dot(a));
            acc += a[c] * (dM[static_cast<std::size_t>(c)].row(kk).dot(b));
        }
        acc -= a.dot(dM[static_cast<std::size_t>(kk)] * b);
        out[kk] = 0.5 * acc;
    }
    return out;
}

// Conserved total energy (1/2) qdot^T (E + M) qdot - (1/2) gamma^T C gamma.
inline double total_energy(const Eigen::VectorXd& qdot, const CoefficientSet& coeffs) {
    return 0.5 * qdot.dot((coeffs.E + coeffs.M) * qdot) -
           0.5 * coeffs.gamma.dot(coeffs.C * coeffs.gamma);
}

inline std::string dump_coefficients(const CoefficientSet& c) {
    std::ostringstream os;
    os.precision(17);
    const auto mat = [&](const char* name, const Eigen::MatrixXd& m) {
        os << name << " " << m.rows() << "x" << m.cols() << "\n";
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
            os << "\n";
        }
    };
    mat("E", c.E);
    mat("M", c.M);
    mat("A", c.A);
    os << "G " << c.G.size() << "\n";
    for (Eigen::Index i = 0; i < c.G.size(); ++i) os << (i ? " " : "") << c.G[i];
    os << "\n";
    mat("C", c.C);
    os << "gamma " << c.gamma.size() << "\n";
    for (Eigen::Index i = 0; i < c.gamma.size(); ++i) os << (i ? " " : "") << c.gamma[i];
    os << "\n";
    os << "M_asymmetry " << c.m_asymmetry << "\n";
    return os.str();
}

} // namespace ringflow
