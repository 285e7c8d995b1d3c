#pragma once

// Boundary-integral operator assembly. Same-body blocks treat the log
// singularity with the trigonometric product quadrature (Kress weights on the
// log factor, trapezoid on the smooth remainder); cross-body blocks are plain
// trapezoid on the smooth kernel.

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ringflow/geometry.hpp"
#include "ringflow/kernels.hpp"

namespace ringflow {

enum class KernelKind { stream, single_layer, flat };

namespace detail {

// Weights for int_0^{2pi} log(4 sin^2((t - tau)/2)) f(tau) dtau on 2n
// equispaced nodes; exact for trigonometric polynomials of degree < n.
inline Eigen::VectorXd kress_log_weights(int N) {
    const int n = N / 2;
    Eigen::VectorXd R(N);
    for (int d = 0; d < N; ++d) {
        double acc = 0.0;
        for (int m = 1; m < n; ++m) acc += std::cos(m * d * pi / n) / m;
        R[d] = -2.0 * pi / n * acc - pi / (n * n) * ((d % 2 == 0) ? 1.0 : -1.0);
    }
    return R;
}

struct SplitKernel {
    // P and Q of kernel(x,y) = P(x,y) log|x-y| + Q(x,y); Q must admit x = y.
    double (*P)(const HalfPlanePoint&, const HalfPlanePoint&);
    double (*Q)(const HalfPlanePoint&, const HalfPlanePoint&);
    double (*value)(const HalfPlanePoint&, const HalfPlanePoint&);
};

} // namespace detail

// Matrix of f -> int kernel(x, .) f(x) dl(x) on the grid nodes (row = target).
// The flat kernel uses the source body's R.
inline Eigen::MatrixXd assemble_logsplit_matrix(const BoundaryGrid& grid, KernelKind kind) {
    const int n_total = grid.total_nodes();
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n_total, n_total);

    for (int bs = 0; bs < grid.body_count(); ++bs) {
        const auto& src = grid.patches[static_cast<std::size_t>(bs)];
        const Eigen::VectorXd kress = detail::kress_log_weights(src.node_count);
        const double trap = 2.0 * pi / src.node_count;
        const double logrho = std::log(src.rho);

        for (int bt = 0; bt < grid.body_count(); ++bt) {
            const auto& tgt = grid.patches[static_cast<std::size_t>(bt)];
            for (int it = 0; it < tgt.node_count; ++it) {
                const int gi = tgt.offset + it;
                const auto& y = grid.nodes[static_cast<std::size_t>(gi)];
                for (int js = 0; js < src.node_count; ++js) {
                    const int gj = src.offset + js;
                    const auto& x = grid.nodes[static_cast<std::size_t>(gj)];
                    double w;
                    if (bs != bt) {
                        double val;
                        switch (kind) {
                            case KernelKind::stream: val = stream_kernel(x, y); break;
                            case KernelKind::single_layer: val = laplace_ring_kernel(x, y); break;
                            case KernelKind::flat: val = flat_kernel(src.center.r, x, y); break;
                        }
                        w = val * src.weight;
                    } else {
                        double P, Q;
                        switch (kind) {
                            case KernelKind::stream:
                                P = stream_log_coeff(x, y);
                                Q = stream_smooth_part(x, y);
                                break;
                            case KernelKind::single_layer:
                                P = ring_log_coeff(x, y);
                                Q = ring_smooth_part(x, y);
                                break;
                            case KernelKind::flat:
                                P = src.center.r / (2.0 * pi);
                                Q = src.center.r / (2.0 * pi) *
                                    (2.0 - std::log(8.0) - std::log(src.center.r));
                                break;
                        }
                        const int d = std::abs(it - js);
                        w = src.rho * (0.5 * kress[d] * P + trap * (P * logrho + Q));
                    }
                    W(gi, gj) += w;
                }
            }
        }
    }
    return W;
}

// Matrix of sigma -> p.v. int n(y) . grad_y S(x, y) sigma(x) dl(x), the
// normal-derivative trace of the ring single layer. On the same circle the
// non-log part of the kernel is smooth; n(y).(y - x)/|x-y|^2 = 1/(2 rho)
// exactly there.
inline Eigen::MatrixXd assemble_ring_neumann_matrix(const BoundaryGrid& grid) {
    const int n_total = grid.total_nodes();
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n_total, n_total);

    for (int bs = 0; bs < grid.body_count(); ++bs) {
        const auto& src = grid.patches[static_cast<std::size_t>(bs)];
        const Eigen::VectorXd kress = detail::kress_log_weights(src.node_count);
        const double trap = 2.0 * pi / src.node_count;
        const double logrho = std::log(src.rho);

        for (int bt = 0; bt < grid.body_count(); ++bt) {
            const auto& tgt = grid.patches[static_cast<std::size_t>(bt)];
            for (int it = 0; it < tgt.node_count; ++it) {
                const int gi = tgt.offset + it;
                const auto& y = grid.nodes[static_cast<std::size_t>(gi)];
                const auto& ny = grid.normals[static_cast<std::size_t>(gi)];
                for (int js = 0; js < src.node_count; ++js) {
                    const int gj = src.offset + js;
                    const auto& x = grid.nodes[static_cast<std::size_t>(gj)];
                    double w;
                    if (bs != bt) {
                        const Vec2 g = laplace_ring_kernel_grad_y(x, y);
                        w = (ny[0] * g[0] + ny[1] * g[1]) * src.weight;
                    } else {
                        const Vec2 gP = ring_log_coeff_grad_y(x, y);
                        const Vec2 gQ = ring_smooth_part_grad_y(x, y);
                        const double P = ny[0] * gP[0] + ny[1] * gP[1];
                        const double Q = ring_log_coeff(x, y) / (2.0 * src.rho) +
                                         ny[0] * gQ[0] + ny[1] * gQ[1];
                        const int d = std::abs(it - js);
                        w = src.rho * (0.5 * kress[d] * P + trap * (P * logrho + Q));
                    }
                    D(gi, gj) += w;
                }
            }
        }
    }
    return D;
}

// Spectral tangential derivative per body block, d/dl = (1/(2 pi rho)) d/dtheta.
inline BoundaryDensity tangential_derivative(const BoundaryGrid& grid, const BoundaryDensity& f) {
    if (f.values.size() != grid.total_nodes())
        throw std::invalid_argument("tangential_derivative: density does not match grid");
    BoundaryDensity out(grid.total_nodes());
    for (const auto& p : grid.patches) {
        const int N = p.node_count;
        // real DFT, O(N^2); N <= 512 keeps this cheap
        std::vector<double> ak(static_cast<std::size_t>(N / 2 + 1), 0.0);
        std::vector<double> bk(static_cast<std::size_t>(N / 2 + 1), 0.0);
        for (int k = 0; k <= N / 2; ++k) {
            for (int m = 0; m < N; ++m) {
                const double ang = 2.0 * pi * k * m / N;
                const double v = f.values[p.offset + m];
                ak[static_cast<std::size_t>(k)] += v * std::cos(ang);
                bk[static_cast<std::size_t>(k)] += v * std::sin(ang);
            }
        }
        for (int m = 0; m < N; ++m) {
            double acc = 0.0;
            for (int k = 1; k < N / 2; ++k) {  // Nyquist derivative dropped
                const double ang = 2.0 * pi * k * m / N;
                acc += 2.0 * k *
                       (-ak[static_cast<std::size_t>(k)] * std::sin(ang) +
                        bk[static_cast<std::size_t>(k)] * std::cos(ang));
            }
            out.values[p.offset + m] = acc / (N * p.rho);
        }
    }
    return out;
}

enum class BoundaryWeight { one, r, one_over_r };

// Trapezoid of w(x) f(x) over each body boundary.
inline Eigen::VectorXd boundary_integral(const BoundaryGrid& grid, const BoundaryDensity& f,
                                         BoundaryWeight weight = BoundaryWeight::one) {
    if (f.values.size() != grid.total_nodes())
        throw std::invalid_argument("boundary_integral: density does not match grid");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(grid.body_count());
    for (int b = 0; b < grid.body_count(); ++b) {
        const auto& p = grid.patches[static_cast<std::size_t>(b)];
        double acc = 0.0;
        for (int m = 0; m < p.node_count; ++m) {
            const int g = p.offset + m;
            double w = 1.0;
            if (weight == BoundaryWeight::r) w = grid.nodes[static_cast<std::size_t>(g)].r;
            if (weight == BoundaryWeight::one_over_r) w = 1.0 / grid.nodes[static_cast<std::size_t>(g)].r;
            acc += w * f.values[g];
        }
        out[b] = acc * p.weight;
    }
    return out;
}

} // namespace ringflow
