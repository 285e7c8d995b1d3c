#pragma once

// The built-in validation suite behind `validate --level fast|full`: every
// module invariant executed with pinned tolerances. `fast` covers the exact
// identities and cheap residuals, `full` adds the asymptotic slope fits.

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ringflow/boundary_ops.hpp"
#include "ringflow/coefficients.hpp"
#include "ringflow/dynamics.hpp"
#include "ringflow/fitting.hpp"
#include "ringflow/harness.hpp"
#include "ringflow/pointvortex.hpp"
#include "ringflow/regimes.hpp"
#include "ringflow/special_functions.hpp"

namespace ringflow {

enum class ValidationLevel { fast, full };

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    int failures = 0;

    void add(const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({name, pass, detail});
        if (!pass) ++failures;
    }
};

namespace validation_detail {

inline std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

inline BodyConfiguration single_ring(double rho, double R = 1.0, double gamma = 1.0) {
    BodyConfiguration c;
    c.bodies.push_back({pi * rho * rho * R, gamma, {R, 0.0}});
    return c;
}

inline BodyConfiguration ring_pair(double rho, double separation, double R = 1.0,
                                   double g1 = 1.0, double g2 = 1.0) {
    BodyConfiguration c;
    c.bodies.push_back({pi * rho * rho * R, g1, {R, -0.5 * separation}});
    c.bodies.push_back({pi * rho * rho * R, g2, {R, 0.5 * separation}});
    return c;
}

// sup norm of mu - 1/(2 pi rho) on the body, normalized by 1/(2 pi rho)
inline double mu_flatness(double rho, int N) {
    const BoundaryGrid grid = make_grid(single_ring(rho), N);
    const StreamSolution sol = solve_stream(grid);
    const double target = 1.0 / (2.0 * pi * rho);
    double dev = 0.0;
    for (int m = 0; m < grid.total_nodes(); ++m)
        dev = std::max(dev, std::abs(sol.mu[0].values[m] - target));
    return dev / target;
}

inline double flat_kernel_gap(double rho) {
    // max |K - Kbar_1| over a circle of radius rho around (1, 0)
    const HalfPlanePoint x0{1.0, 0.0};
    double worst = 0.0;
    for (int m = 0; m < 64; ++m) {
        const double a = 2.0 * pi * (m + 0.37) / 64;  // avoid symmetry artifacts
        for (int mm = 0; mm < 8; ++mm) {
            const double b = 2.0 * pi * (mm + 0.11) / 8;
            const HalfPlanePoint x{1.0 + rho * std::cos(b), rho * std::sin(b)};
            const HalfPlanePoint y{1.0 + rho * std::cos(a), rho * std::sin(a)};
            if (std::hypot(x.r - y.r, x.z - y.z) < 1e-6 * rho) continue;
            worst = std::max(worst, std::abs(stream_kernel(x, y) - flat_kernel(1.0, x, y)));
        }
        (void)x0;
    }
    return worst;
}

} // namespace validation_detail

inline ValidationReport run_validation_suite(ValidationLevel level) {
    using namespace validation_detail;
    ValidationReport rep;
    std::mt19937 rng(20260810u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // --- special functions -------------------------------------------------

    rep.add("special.elliptic_endpoints",
            std::abs(elliptic_K(0.0) - pi / 2) < 1e-15 && std::abs(elliptic_E(0.0) - pi / 2) < 1e-15 &&
                elliptic_E(1.0) == 1.0,
            "K(0), E(0), E(1)");

    {
        bool mono = true;
        double prevK = elliptic_K(0.0), prevE = elliptic_E(0.0);
        for (int i = 1; i < 100; ++i) {
            const double m = 0.995 * i / 99.0;
            const double K = elliptic_K(m), E = elliptic_E(m);
            mono = mono && K > prevK && E < prevE;
            prevK = K;
            prevE = E;
        }
        rep.add("special.elliptic_monotone", mono, "100-point grid");
    }

    {
        double worst = 0.0;
        for (const double m : {0.1, 0.3, 0.5, 0.7, 0.9, 0.97}) {
            const double Kq = detail::adaptive_simpson(
                [m](double t) { const double s = std::sin(t); return 1.0 / std::sqrt(1.0 - m * m * s * s); },
                0.0, pi / 2, 1e-16);
            const double Eq = detail::adaptive_simpson(
                [m](double t) { const double s = std::sin(t); return std::sqrt(1.0 - m * m * s * s); },
                0.0, pi / 2, 1e-16);
            worst = std::max(worst, std::abs(elliptic_K(m) - Kq) / Kq);
            worst = std::max(worst, std::abs(elliptic_E(m) - Eq) / Eq);
        }
        rep.add("special.elliptic_vs_quadrature", worst < 1e-13, "max rel err " + num(worst));
    }

    {
        double worst = 0.0;
        for (double t = 0.05; t <= 0.5001; t += 0.05) {
            const double ref = elliptic_K(std::sqrt(1.0 - t * t));
            worst = std::max(worst, std::abs(elliptic_K_log_series(t, {60, 1e-30}) - ref));
        }
        rep.add("special.log_series_matches_K", worst < 1e-10, "max abs err " + num(worst));
    }

    {
        // E(m) = m(1-m^2)K'(m) + (1-m^2)K(m) with K' by central differences
        const double m = 0.7, h = 1e-6;
        const double Kp = (elliptic_K(m + h) - elliptic_K(m - h)) / (2.0 * h);
        const double резid = std::abs(elliptic_E(m) - (m * (1 - m * m) * Kp + (1 - m * m) * elliptic_K(m)));
        rep.add("special.E_identity", резid < 1e-8, "residual " + num(резid));
    }

    {
        double worst = 0.0;
        for (const double s : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0}) {
            const double q = F_eval(s, FMode::quadrature);
            const double e = F_eval(s, FMode::elliptic);
            worst = std::max(worst, std::abs(q - e) / std::abs(e));
        }
        rep.add("special.F_quadrature_vs_elliptic", worst < 1e-10, "max rel err " + num(worst));
    }

    {
        double worst = 0.0;
        for (const double s : {1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.25}) {
            const double nd = F_eval(s, FMode::near_diagonal);
            const double e = F_eval(s, FMode::elliptic);
            worst = std::max(worst, std::abs(nd - e) / std::abs(e));
        }
        bool domain_ok = false;
        try {
            F_eval(0.3, FMode::near_diagonal);
        } catch (const std::domain_error&) {
            domain_ok = true;
        }
        rep.add("special.F_near_diagonal", worst < 1e-10 && domain_ok,
                "max rel err " + num(worst) + ", switch radius enforced");
    }

    rep.add("special.F_log_limit",
            std::abs(F_eval(1e-6, FMode::near_diagonal) + 0.5 * std::log(1e-6) -
                     (std::log(8.0) - 2.0)) < 1e-4,
            "F(s) + log(s)/2 -> log 8 - 2");

    {
        bool ok = std::abs(h_remainder(1e-10)) < 1e-8;
        double bound = 0.0;
        for (double s = 1e-6; s <= 1e-2 * 1.0001; s *= 10.0)
            bound = std::max(bound, std::abs(h_remainder(s)) / (s * std::abs(std::log(s))));
        const double direct =
            F_eval(0.01, FMode::elliptic) + 0.5 * std::log(0.01) - std::log(8.0) + 2.0;
        ok = ok && std::abs(h_remainder(0.01) - direct) < 1e-12 && bound < 1.0;
        rep.add("special.h_remainder", ok, "|h|/(s|log s|) <= " + num(bound));
    }

    {
        // adaptive-quadrature oracle for the circle log multiplier
        double worst = 0.0;
        for (const double rho : {0.5, 1.3}) {
            for (int n = 0; n <= 8; ++n) {
                const double got = log_circle_multiplier(n, rho);
                const double ref = detail::adaptive_simpson(
                    [n, rho](double u) {
                        const double d = 2.0 * rho * std::abs(std::sin(pi * u));
                        return (d == 0.0 ? 0.0 : std::log(d)) * std::cos(2.0 * pi * n * u);
                    },
                    1e-12, 1.0 - 1e-12, 1e-12) * 2.0 * pi * rho;
                worst = std::max(worst, std::abs(got - ref));
            }
        }
        rep.add("special.log_circle_multiplier", worst < 1e-8, "max abs err " + num(worst));
    }

    // --- kernels ------------------------------------------------------------

    {
        bool ok = true;
        double fdworst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const HalfPlanePoint x{0.5 + 2.0 * unit(rng), 2.0 * unit(rng) - 1.0};
            HalfPlanePoint y{0.5 + 2.0 * unit(rng), 2.0 * unit(rng) - 1.0};
            if (std::hypot(x.r - y.r, x.z - y.z) < 0.3) y.r += 0.5;
            ok = ok && stream_kernel(x, y) == stream_kernel(y, x);

            const double h = 1e-6;
            const Vec2 g = stream_kernel_grad_y(x, y);
            const double fr = (stream_kernel(x, {y.r + h, y.z}) - stream_kernel(x, {y.r - h, y.z})) / (2 * h);
            const double fz = (stream_kernel(x, {y.r, y.z + h}) - stream_kernel(x, {y.r, y.z - h})) / (2 * h);
            fdworst = std::max(fdworst, std::abs(g[0] - fr) / std::max(1e-12, std::abs(fr)));
            fdworst = std::max(fdworst, std::abs(g[1] - fz) / std::max(1e-12, std::abs(fz)));

            const Vec2 gs = laplace_ring_kernel_grad_y(x, y);
            const double sr = (laplace_ring_kernel(x, {y.r + h, y.z}) -
                               laplace_ring_kernel(x, {y.r - h, y.z})) / (2 * h);
            const double sz = (laplace_ring_kernel(x, {y.r, y.z + h}) -
                               laplace_ring_kernel(x, {y.r, y.z - h})) / (2 * h);
            fdworst = std::max(fdworst, std::abs(gs[0] - sr) / std::max(1e-12, std::abs(sr)));
            fdworst = std::max(fdworst, std::abs(gs[1] - sz) / std::max(1e-12, std::abs(sz)));
        }
        rep.add("kernels.symmetry_and_grad_fd", ok && fdworst < 1e-6,
                "grad rel err " + num(fdworst));
    }

    {
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const HalfPlanePoint x{0.5 + unit(rng), unit(rng)};
            const HalfPlanePoint y{0.5 + unit(rng), unit(rng) + 1.2};
            const int nphi = 200;
            double acc = 0.0;
            for (int m = 0; m < nphi; ++m) {
                const double phi = 2.0 * pi * m / nphi;
                const double d = std::sqrt(x.r * x.r + y.r * y.r - 2 * x.r * y.r * std::cos(phi) +
                                           (x.z - y.z) * (x.z - y.z));
                acc += 1.0 / (4.0 * pi * d);
            }
            const double ref = acc / nphi * 2.0 * pi * x.r;
            worst = std::max(worst, std::abs(laplace_ring_kernel(x, y) - ref));
        }
        rep.add("kernels.ring_azimuthal_oracle", worst < 1e-9, "max abs err " + num(worst));
    }

    {
        const HalfPlanePoint x{1.4, 0.3}, y{0.8, -0.4};
        const double shift = 7.25;
        const double a = stream_kernel(x, y) - stream_kernel({x.r, x.z + shift}, {y.r, y.z + shift});
        const double b = laplace_ring_kernel(x, y) -
                         laplace_ring_kernel({x.r, x.z + shift}, {y.r, y.z + shift});
        rep.add("kernels.z_translation_invariance", std::abs(a) < 1e-15 && std::abs(b) < 1e-15,
                "exact to rounding");
    }

    rep.add("kernels.flat_kernel_zero",
            std::abs(flat_kernel(1.0, {1.0, 0.0}, {1.0, 8.0 * std::exp(-2.0)})) < 1e-15,
            "Kbar vanishes at |x-y| = 8/e^2");

    // --- boundary operators ---------------------------------------------------

    {
        // flat-kernel matrix must reproduce the circle multipliers to rounding
        const BoundaryGrid grid = make_grid(single_ring(0.25, 1.3), 64);
        const Eigen::MatrixXd W = assemble_logsplit_matrix(grid, KernelKind::flat);
        const double R = 1.3, rho = grid.patches[0].rho;
        double worst = 0.0;
        for (const int n : {0, 1, 3, 7}) {
            Eigen::VectorXd fc(64), fs(64);
            for (int m = 0; m < 64; ++m) {
                fc[m] = std::cos(2.0 * pi * n * m / 64.0);
                fs[m] = std::sin(2.0 * pi * n * m / 64.0);
            }
            const double mult = (n == 0)
                                    ? -R * rho * (-std::log(rho) + std::log(8.0) - 2.0 + std::log(R))
                                    : -R * rho / (2.0 * n);
            worst = std::max(worst, (W * fc - mult * fc).lpNorm<Eigen::Infinity>());
            if (n > 0) worst = std::max(worst, (W * fs - mult * fs).lpNorm<Eigen::Infinity>());
        }
        rep.add("boundary.flat_multiplier", worst < 1e-12, "max abs err " + num(worst));
    }

    {
        // same-body stream matrix is symmetric (uniform weights)
        const BoundaryGrid grid = make_grid(ring_pair(0.1, 0.8), 64);
        const Eigen::MatrixXd W = assemble_logsplit_matrix(grid, KernelKind::stream);
        const double asym = (W - W.transpose()).cwiseAbs().maxCoeff();
        rep.add("boundary.stream_matrix_symmetric", asym < 1e-8, "max |W - W^T| " + num(asym));
    }

    {
        // doubling N: matvec on a fixed smooth density changes below 1e-8
        const auto density = [](double theta) {
            return 1.0 + 0.4 * std::cos(2.0 * pi * theta) + 0.2 * std::sin(4.0 * pi * theta);
        };
        double worst = 0.0;
        for (const auto kind : {KernelKind::stream, KernelKind::single_layer}) {
            const BoundaryGrid g1 = make_grid(ring_pair(0.15, 0.9), 64);
            const BoundaryGrid g2 = make_grid(ring_pair(0.15, 0.9), 128);
            Eigen::VectorXd f1(g1.total_nodes()), f2(g2.total_nodes());
            for (int b = 0; b < 2; ++b)
                for (int m = 0; m < 64; ++m)
                    f1[g1.patches[b].offset + m] = density(static_cast<double>(m) / 64.0);
            for (int b = 0; b < 2; ++b)
                for (int m = 0; m < 128; ++m)
                    f2[g2.patches[b].offset + m] = density(static_cast<double>(m) / 128.0);
            const Eigen::VectorXd v1 = assemble_logsplit_matrix(g1, kind) * f1;
            const Eigen::VectorXd v2 = assemble_logsplit_matrix(g2, kind) * f2;
            for (int b = 0; b < 2; ++b)
                for (int m = 0; m < 64; ++m)
                    worst = std::max(worst, std::abs(v1[g1.patches[b].offset + m] -
                                                     v2[g2.patches[b].offset + 2 * m]));
        }
        rep.add("boundary.refinement_stable", worst < 1e-8, "matvec change " + num(worst));
    }

    {
        const BoundaryGrid grid = make_grid(single_ring(0.2), 64);
        BoundaryDensity f(grid.total_nodes());
        for (int m = 0; m < 64; ++m) f.values[m] = std::cos(2.0 * pi * m / 64.0);
        const BoundaryDensity df = tangential_derivative(grid, f);
        double worst = 0.0;
        for (int m = 0; m < 64; ++m)
            worst = std::max(worst, std::abs(df.values[m] +
                                             std::sin(2.0 * pi * m / 64.0) / grid.patches[0].rho));
        BoundaryDensity c(grid.total_nodes());
        c.values.setConstant(2.5);
        const double cmax = tangential_derivative(grid, c).values.cwiseAbs().maxCoeff();
        rep.add("boundary.tangential_derivative", worst < 1e-12 && cmax < 1e-12,
                "mode err " + num(worst));
    }

    {
        const BoundaryGrid grid = make_grid(single_ring(0.2, 1.1), 64);
        BoundaryDensity one(grid.total_nodes());
        one.values.setOnes();
        const double c0 = boundary_integral(grid, one, BoundaryWeight::one)[0];
        const double cr = boundary_integral(grid, one, BoundaryWeight::r)[0];
        BoundaryDensity nr(grid.total_nodes());
        for (int m = 0; m < 64; ++m) nr.values[m] = grid.normals[static_cast<std::size_t>(m)][0];
        const double cnr = boundary_integral(grid, nr, BoundaryWeight::r)[0];
        const double rho = grid.patches[0].rho;
        const bool ok = std::abs(c0 - 2 * pi * rho) < 1e-12 &&
                        std::abs(cr - 2 * pi * rho * 1.1) < 1e-12 &&
                        std::abs(cnr - pi * rho * rho) < 1e-12;
        rep.add("boundary.weighted_integrals", ok, "circumference and r-weighted moments");
    }

    {
        bool overlap_rejected = false, axis_rejected = false, ok_accepted = true;
        try {
            make_grid(ring_pair(0.3, 0.5));
        } catch (const ConfigurationError&) {
            overlap_rejected = true;
        }
        try {
            BodyConfiguration c;
            c.bodies.push_back({pi, 1.0, {1.0, 0.0}});  // rho = 1 touches the axis
            make_grid(c);
        } catch (const ConfigurationError&) {
            axis_rejected = true;
        }
        try {
            BodyConfiguration c;
            c.bodies.push_back({pi / 4.0, 1.0, {1.0, 0.0}});  // rho = 1/2 fits
            const BoundaryGrid g = make_grid(c, 32);
            for (int m = 0; m < 32; ++m) {
                const auto& x = g.nodes[static_cast<std::size_t>(m)];
                if (std::abs(std::hypot(x.r - 1.0, x.z) - 0.5) > 1e-14) ok_accepted = false;
            }
        } catch (...) {
            ok_accepted = false;
        }
        rep.add("boundary.grid_admissibility", overlap_rejected && axis_rejected && ok_accepted,
                "rejection and node placement");
    }

    // --- field solvers ---------------------------------------------------------

    {
        const BoundaryGrid grid = make_grid(ring_pair(0.1, 0.8), 32);
        const BoundaryDensity uz = normal_velocity(grid, 0, {0.0, 1.0});
        bool ok = true;
        for (int m = 0; m < 32; ++m)
            ok = ok && std::abs(uz.values[m] - grid.normals[static_cast<std::size_t>(m)][1]) < 1e-15;
        for (int m = 32; m < 64; ++m) ok = ok && uz.values[m] == 0.0;
        BoundaryDensity ur = normal_velocity(grid, 0, {1.0, 0.0});
        BoundaryDensity rur(grid.total_nodes());
        for (int g = 0; g < grid.total_nodes(); ++g)
            rur.values[g] = grid.nodes[static_cast<std::size_t>(g)].r * ur.values[g];
        const double flux = boundary_integral(grid, rur).sum();
        const BoundaryDensity zero = normal_velocity(grid, 1, {0.0, 0.0});
        rep.add("fields.normal_velocity",
                ok && std::abs(flux) < 1e-12 && zero.values.cwiseAbs().maxCoeff() == 0.0,
                "support, r-weighted flux " + num(flux));
    }

    {
        // three-body stream solve: constraints, residual, C symmetry
        BodyConfiguration c;
        c.bodies.push_back({pi * 0.01, 1.0, {0.9, -0.6}});
        c.bodies.push_back({pi * 0.015, -0.7, {1.2, 0.1}});
        c.bodies.push_back({pi * 0.008, 0.4, {0.8, 0.7}});
        const BoundaryGrid grid = make_grid(c, 48);
        const StreamSolution sol = solve_stream(grid);
        double circ_err = 0.0;
        for (int i = 0; i < 3; ++i) {
            const Eigen::VectorXd circ = boundary_integral(grid, sol.mu[static_cast<std::size_t>(i)]);
            for (int j = 0; j < 3; ++j)
                circ_err = std::max(circ_err, std::abs(circ[j] - (i == j ? 1.0 : 0.0)));
        }
        const double csym = (sol.C - sol.C.transpose()).cwiseAbs().maxCoeff();
        rep.add("fields.stream_constraints",
                circ_err < 1e-12 && sol.residual < 1e-10 && csym < 1e-8,
                "circ " + num(circ_err) + ", resid " + num(sol.residual) + ", C asym " + num(csym));
    }

    {
        const double rho = 0.05;
        const double dev = mu_flatness(rho, 64);
        rep.add("fields.stream_single_body_flat", dev < 0.5,
                "sup deviation (normalized) " + num(dev));
    }

    {
        const BodyConfiguration c = ring_pair(0.05, 0.8, 1.0, 1.0, -0.5);
        const BoundaryGrid grid = make_grid(c, 48);
        const StreamSolution sol = solve_stream(grid);
        const Eigen::VectorXd gamma = c.circulations();
        // continuity up to the boundary: psi a hair outside body j equals
        // sum_i gamma_i C_ij
        double worst = 0.0;
        for (int j = 0; j < 2; ++j) {
            const auto& p = grid.patches[static_cast<std::size_t>(j)];
            const HalfPlanePoint y{p.center.r + (1.0 + 1e-3) * p.rho, p.center.z};
            const double psi = eval_stream(grid, sol, gamma, y);
            double target = 0.0;
            for (int i = 0; i < 2; ++i) target += gamma[i] * sol.C(i, j);
            worst = std::max(worst, std::abs(psi - target));
        }
        bool domain_ok = false;
        try {
            eval_stream(grid, sol, gamma, grid.patches[0].center);
        } catch (const std::domain_error&) {
            domain_ok = true;
        }
        // far field decays like 1/|y|
        const double f25 = std::abs(eval_stream(grid, sol, gamma, {1.0, 25.0}));
        const double f50 = std::abs(eval_stream(grid, sol, gamma, {1.0, 50.0}));
        const double f100 = std::abs(eval_stream(grid, sol, gamma, {1.0, 100.0}));
        rep.add("fields.stream_boundary_and_far",
                worst < 1e-3 && domain_ok && f25 > f50 && f50 > f100 && f100 * 100.0 < 10.0,
                "boundary gap " + num(worst) + ", far trend " + num(f25) + ">" + num(f50));
    }

    {
        const BoundaryGrid grid = make_grid(single_ring(0.05), 64);
        const PotentialSolution sol = solve_potential(grid, 0, {0.0, 1.0});
        // odd data in z: trace must be antisymmetric under m -> N - m
        double worst = 0.0;
        for (int m = 1; m < 32; ++m)
            worst = std::max(worst, std::abs(sol.trace.values[m] + sol.trace.values[64 - m]));
        bool reject_ok = false;
        try {
            BoundaryDensity bad(grid.total_nodes());
            bad.values.setOnes();
            PotentialBasis(grid).solve(bad);
        } catch (const SolverError&) {
            reject_ok = true;
        }
        rep.add("fields.potential_symmetry_and_compat",
                sol.residual < 1e-8 && worst < 1e-8 && reject_ok,
                "antisym " + num(worst) + ", resid " + num(sol.residual));
    }

    {
        const Vec2 q{0.3, -0.2};
        const double rho = 0.45;
        const Vec2 t{0.8, -0.6};
        double worst = 0.0, circ = 0.0;
        const int N = 48;
        for (int m = 0; m < N; ++m) {
            const double a = 2.0 * pi * m / N;
            const Vec2 n{std::cos(a), std::sin(a)};
            const Vec2 x{q[0] + rho * n[0], q[1] + rho * n[1]};
            // five-point normal derivative
            const double h = 1e-3;
            double d = 0.0;
            const double w[4] = {1.0, -8.0, 8.0, -1.0};
            const double o[4] = {-2.0, -1.0, 1.0, 2.0};
            for (int s = 0; s < 4; ++s)
                d += w[s] * flat_potential(q, rho, t, {x[0] + o[s] * h * n[0], x[1] + o[s] * h * n[1]});
            d /= 12.0 * h;
            worst = std::max(worst, std::abs(d - (t[0] * n[0] + t[1] * n[1])));
            // tangential derivative for the circulation
            const Vec2 tau{-n[1], n[0]};
            double dt = 0.0;
            for (int s = 0; s < 4; ++s)
                dt += w[s] * flat_potential(q, rho, t, {x[0] + o[s] * h * tau[0], x[1] + o[s] * h * tau[1]});
            circ += dt / (12.0 * h) * (2.0 * pi * rho / N);
        }
        const double far = std::abs(flat_potential(q, rho, t, {q[0] + 40.0, q[1]}));
        rep.add("fields.flat_potential",
                worst < 1e-10 && std::abs(circ) < 1e-10 && far <= rho * rho * 1.0 / 40.0 + 1e-15,
                "d_n err " + num(worst) + ", circulation " + num(circ));
    }

    {
        const double rho = 0.08, R = 1.0;
        const double v = pi * rho * rho * R;
        const double f = interior_energy_f(R, v);
        const double rel = std::abs(f - pi * R * rho * rho) / (pi * R * rho * rho);
        const double h = 1e-3;
        const double lip = std::abs(interior_energy_f(R + h, v) - interior_energy_f(R - h, v)) / (2 * h);
        rep.add("fields.interior_energy", rel < 0.2 && lip < 10.0 * rho * rho * rho,
                "f/(pi R rho^2) - 1 = " + num(rel) + ", |df/dR| = " + num(lip));
    }

    // --- coefficients -----------------------------------------------------------

    {
        const BodyConfiguration c = ring_pair(0.05, 0.8);
        const Eigen::MatrixXd E = energy_matrix_E(c);
        bool ok = E(0, 1) == 0.0 && E(1, 0) == 0.0 &&
                  E(1, 1) == c.bodies[0].volume && E(3, 3) == c.bodies[1].volume;
        const CoefficientSet coeffs = assemble_coefficients(c, {48});
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(coeffs.E + coeffs.M);
        ok = ok && es.eigenvalues().minCoeff() > 0.0;
        ok = ok && (coeffs.A + coeffs.A.transpose()).cwiseAbs().maxCoeff() == 0.0;
        ok = ok && (coeffs.M - coeffs.M.transpose()).cwiseAbs().maxCoeff() <
                       1e-8 * std::max(1.0, coeffs.M.norm());
        rep.add("coeffs.structure", ok, "E blocks, E+M SPD, A antisымmetric, M symmetric");
    }

    {
        BodyConfiguration c = ring_pair(0.05, 0.8);
        const BoundaryGrid grid = make_grid(c, 48);
        const auto bank = detail::solve_potential_basis(grid);
        const auto stream = solve_stream(grid);
        const Eigen::VectorXd g1 = c.circulations();
        const Eigen::MatrixXd A1 = gyro_A(grid, bank, stream, g1);
        const Eigen::MatrixXd A0 = gyro_A(grid, bank, stream, Eigen::VectorXd::Zero(2));
        const Eigen::VectorXd G1 = force_G(grid, stream, g1);
        const Eigen::VectorXd G2 = force_G(grid, stream, 2.0 * g1);
        rep.add("coeffs.gamma_scaling",
                A0.cwiseAbs().maxCoeff() == 0.0 &&
                    (G2 - 4.0 * G1).cwiseAbs().maxCoeff() < 1e-14 * G1.cwiseAbs().maxCoeff() +
                        1e-300 &&
                    (2.0 * A1 - gyro_A(grid, bank, stream, 2.0 * g1)).cwiseAbs().maxCoeff() <
                        1e-14 * A1.cwiseAbs().maxCoeff(),
                "A linear in gamma, G quadratic");
    }

    {
        const BodyConfiguration c = ring_pair(0.06, 0.9);
        Eigen::VectorXd qdot(4), p(4);
        qdot << 0.3, -0.1, 0.05, 0.2;
        p << -0.2, 0.4, 0.1, -0.3;
        const Eigen::VectorXd gam = christoffel_Gamma(c, qdot, p);
        // <Gamma(q), qdot, p> . p == (1/2)((d_q M . qdot) p) . p
        const double h = 1e-4;
        const Eigen::VectorXd q0 = c.positions();
        const Eigen::MatrixXd dirM =
            (mass_matrix_at(c.displaced(q0 + h * qdot)) - mass_matrix_at(c.displaced(q0 - h * qdot))) /
            (2.0 * h);
        const double lhs = gam.dot(p);
        const double rhs = 0.5 * p.dot(dirM * p);
        const Eigen::VectorXd zero = christoffel_Gamma(c, Eigen::VectorXd::Zero(4), p);
        rep.add("coeffs.christoffel_identity",
                std::abs(lhs - rhs) < 1e-6 * std::max(1e-12, std::abs(rhs)) + 1e-12 &&
                    zero.cwiseAbs().maxCoeff() == 0.0,
                "lhs " + num(lhs) + " vs rhs " + num(rhs));
    }

    {
        const BodyConfiguration c = single_ring(0.05);
        const CoefficientSet coeffs = assemble_coefficients(c, {48});
        const double e0 = total_energy(Eigen::VectorXd::Zero(2), coeffs);
        bool ok = e0 > 0.0;  // -C11/2 > 0
        // z-translation leaves every coefficient unchanged
        BodyConfiguration shifted = c;
        shifted.bodies[0].center.z += 3.7;
        const CoefficientSet cs = assemble_coefficients(shifted, {48});
        const double gap = std::max({(coeffs.M - cs.M).cwiseAbs().maxCoeff(),
                                     (coeffs.A - cs.A).cwiseAbs().maxCoeff(),
                                     (coeffs.G - cs.G).cwiseAbs().maxCoeff(),
                                     (coeffs.C - cs.C).cwiseAbs().maxCoeff()});
        CoefficientSet zero_gamma = coeffs;
        zero_gamma.gamma.setZero();
        ok = ok && total_energy(Eigen::VectorXd::Zero(2), zero_gamma) == 0.0;
        rep.add("coeffs.energy_and_translation", ok && gap < 1e-11,
                "-C11/2 = " + num(e0) + ", shift gap " + num(gap));
    }

    // --- dynamics ----------------------------------------------------------------

    {
        Eigen::VectorXd gamma(1), q(2);
        gamma << 0.8;
        q << 0.4, -1.2;
        const Eigen::VectorXd v = pv_velocity(PvSystem::J1, gamma, q, 2.0);
        const bool j1_ok = std::abs(v[0]) == 0.0 && std::abs(v[1] + 0.8 / (4.0 * pi * 2.0)) < 1e-16;

        Eigen::VectorXd g2(2), q2(4);
        g2 << 1.0, 1.0;
        q2 << 0.3, 0.4, -0.3, -0.4;
        const Eigen::VectorXd w = pv_velocity(PvSystem::J2, g2, q2, 1.0);
        const bool sym_ok = std::abs(w[0] + w[2]) < 1e-15 && std::abs(w[1] + w[3]) < 1e-15;
        rep.add("dynamics.pv_velocity", j1_ok && sym_ok, "self-drift and pair symmetry");
    }

    {
        Eigen::VectorXd gamma(2), q0(4);
        gamma << 1.0, 0.6;
        q0 << 0.2, -0.4, -0.3, 0.5;
        bool ok = true;
        for (const auto sys : {PvSystem::J1, PvSystem::J2}) {
            const Trajectory traj = integrate_pv(sys, gamma, q0, 8.0, 1.0, {1e-11, 1e-13});
            const PvInvariants inv0 = pv_invariants(sys, gamma, q0, 1.0);
            double hdrift = 0.0, pdrift = 0.0;
            for (const auto& st : traj.states) {
                const PvInvariants inv = pv_invariants(sys, gamma, st.q, 1.0);
                hdrift = std::max(hdrift, std::abs(inv.H - inv0.H));
                pdrift = std::max(pdrift, std::abs(inv.P - inv0.P));
            }
            ok = ok && hdrift < 1e-8 && pdrift < 1e-10;
            // time reversal: flip circulations and integrate back
            const Eigen::VectorXd qT = traj.states.back().q;
            const Trajectory back = integrate_pv(sys, -gamma, qT, traj.times.back(), 1.0, {1e-11, 1e-13});
            ok = ok && (back.states.back().q - q0).norm() < 1e-7;
        }
        rep.add("dynamics.pv_invariants_and_reversal", ok, "H, P drifts and reversal");
    }

    {
        RegimeSpec spec{RegimeKind::log, 1e-3, 1.0, 0.0};
        std::vector<RingSpec> rings = {{pi, 1.0}, {pi, 0.5}};
        Eigen::VectorXd qt(4);
        qt << 0.2, -0.3, -0.1, 0.4;
        const BodyConfiguration lifted = regime_lift(spec, rings, qt);
        const Eigen::VectorXd round = regime_project(spec, lifted.positions());
        Eigen::VectorXd vt(4);
        vt << 0.1, 0.2, -0.3, 0.4;
        const Eigen::VectorXd vround = regime_project_velocity(spec, regime_lift_velocity(spec, vt));
        const double gap_expected =
            std::hypot(qt[0] - qt[2], qt[1] - qt[3]) / spec.L();
        const double gap_actual = std::hypot(lifted.positions()[0] - lifted.positions()[2],
                                             lifted.positions()[1] - lifted.positions()[3]);
        RegimeSpec sq{RegimeKind::sqrtlog, 1e-3, 2.0, 0.0};
        const double drift = regime_drift_velocity(sq, 1)[1];
        rep.add("dynamics.regime_maps",
                (round - qt).norm() < 1e-13 && (vround - vt).norm() < 1e-13 &&
                    std::abs(gap_actual - gap_expected) < 1e-14 &&
                    std::abs(drift - std::sqrt(sq.L()) / (4.0 * pi * 2.0)) < 1e-15,
                "round trip, gap scaling, drift magnitude");
    }

    {
        // determinism and z-equivariance of a short body integration
        const BodyConfiguration c = single_ring(0.05);
        BodyDynamicsOptions opt;
        opt.assembly.node_count = 32;
        const CoefficientSet coeffs = assemble_coefficients(c, opt.assembly);
        const Eigen::VectorXd v0 = quasi_steady_velocity(coeffs);
        const double horizon = 0.02;
        const Trajectory t1 = integrate_body(c, v0, horizon, opt);
        const Trajectory t2 = integrate_body(c, v0, horizon, opt);
        bool identical = t1.size() == t2.size();
        if (identical)
            for (std::size_t m = 0; m < t1.size(); ++m)
                identical = identical && t1.states[m].q == t2.states[m].q &&
                            t1.times[m] == t2.times[m];
        BodyConfiguration shifted = c;
        shifted.bodies[0].center.z += 0.8;
        const Trajectory t3 = integrate_body(shifted, v0, horizon, opt);
        double zgap = 0.0;
        const std::size_t n = std::min(t1.size(), t3.size());
        for (std::size_t m = 0; m < n; ++m) {
            zgap = std::max(zgap, std::abs(t3.states[m].q[0] - t1.states[m].q[0]));
            zgap = std::max(zgap, std::abs(t3.states[m].q[1] - 0.8 - t1.states[m].q[1]));
        }
        rep.add("dynamics.determinism_and_z_equivariance",
                identical && t1.size() == t3.size() && zgap < 1e-10,
                "bitwise repeat, z-shift gap " + num(zgap));
    }

    if (level == ValidationLevel::fast) return rep;

    // --- full level: asymptotic slope fits -----------------------------------------

    {
        const std::vector<double> rhos = {0.05, 0.02, 0.01, 0.005};
        std::vector<double> gaps;
        for (const double r : rhos) gaps.push_back(flat_kernel_gap(r));
        const double slope = fit_loglog_slope(rhos, gaps);
        rep.add("full.kernel_flat_slope", slope > 1.7 && slope < 2.1,
                "|K - Kbar| slope " + num(slope));
    }

    {
        const std::vector<double> rhos = {0.05, 0.02, 0.01, 0.005};
        std::vector<double> devs;
        for (const double r : rhos) devs.push_back(mu_flatness(r, 64));
        const double slope = fit_loglog_slope(rhos, devs);
        rep.add("full.stream_mu_slope", slope >= 0.9, "mu deviation order " + num(slope));
    }

    {
        // cross-body density against the kernel-gradient prediction
        const double rho = 0.005, d = 0.5;
        const BodyConfiguration c = ring_pair(rho, d);
        const BoundaryGrid grid = make_grid(c, 64);
        const StreamSolution sol = solve_stream(grid);
        const HalfPlanePoint qi = c.bodies[0].center, qj = c.bodies[1].center;
        const Vec2 gk = stream_kernel_grad_y(qi, qj);
        double num_err = 0.0, den = 0.0;
        const auto& p = grid.patches[1];
        for (int m = 0; m < p.node_count; ++m) {
            const int g = p.offset + m;
            const auto& n = grid.normals[static_cast<std::size_t>(g)];
            const double r = grid.nodes[static_cast<std::size_t>(g)].r;
            const double pred = 2.0 / r * (n[0] * gk[0] + n[1] * gk[1]);
            const double diff = sol.mu[0].values[g] - pred;
            num_err += diff * diff;
            den += pred * pred;
        }
        const double rel = std::sqrt(num_err / den);
        rep.add("full.stream_cross_density", rel <= 0.1, "relative L2 error " + num(rel));
    }

    {
        // M -> pi R rho^2 I and the cross-block suppression
        const std::vector<double> rhos = {0.04, 0.02, 0.01, 0.005};
        std::vector<double> devs;
        for (const double r : rhos) {
            const BodyConfiguration c = single_ring(r);
            const Eigen::MatrixXd M = mass_matrix_at(c, {64});
            devs.push_back((M - pi * r * r * Eigen::MatrixXd::Identity(2, 2)).norm() / (r * r));
        }
        const double slope = fit_loglog_slope(rhos, devs);
        const BodyConfiguration c2 = ring_pair(0.01, 0.5);
        const Eigen::MatrixXd M2 = mass_matrix_at(c2, {64});
        const double cross = M2.topRightCorner(2, 2).norm() / M2.topLeftCorner(2, 2).norm();
        rep.add("full.inertia_asymptotics", slope >= 0.9 && cross < 1e-2,
                "deviation order " + num(slope) + ", cross/diag " + num(cross));
    }

    {
        const double rho = 0.005, R = 1.0, gamma = 1.0;
        const BodyConfiguration c = single_ring(rho, R, gamma);
        const CoefficientSet coeffs = assemble_coefficients(c, {64});
        Eigen::MatrixXd limit(2, 2);
        limit << 0.0, R * gamma, -R * gamma, 0.0;
        const double gap = (coeffs.A - limit).norm();
        // invertibility margin of A at small rho
        const double inv_norm = coeffs.A.inverse().operatorNorm();
        rep.add("full.gyro_limit", gap <= 0.05 * R * gamma && inv_norm <= 2.0 / (R * gamma),
                "|A - limit| = " + num(gap) + ", |A^-1| = " + num(inv_norm));
    }

    {
        const std::vector<double> rhos = {0.04, 0.02, 0.01, 0.005};
        std::vector<double> logr, gr;
        double gz_worst = 0.0;
        for (const double r : rhos) {
            const BodyConfiguration c = single_ring(r);
            const CoefficientSet coeffs = assemble_coefficients(c, {64});
            logr.push_back(std::log(r));
            gr.push_back(coeffs.G[0]);
            gz_worst = std::max(gz_worst, std::abs(coeffs.G[1]));
        }
        const double slope = fit_line(logr, gr).slope;
        const double target = 1.0 / (4.0 * pi);
        rep.add("full.force_log_slope",
                std::abs(slope - target) <= 0.05 * target && gz_worst < 1e-8,
                "dG_R/dlog rho = " + num(slope) + " (target " + num(target) + ")");
    }

    {
        // polarization of G against the kernel-gradient cross terms
        const double rho = 0.01, d = 0.5;
        const BodyConfiguration c = ring_pair(rho, d);
        const BoundaryGrid grid = make_grid(c, 64);
        const auto stream = solve_stream(grid);
        Eigen::VectorXd e1(2), e2(2), both(2);
        e1 << 1.0, 0.0;
        e2 << 0.0, 1.0;
        both << 1.0, 1.0;
        const Eigen::VectorXd Gcross =
            force_G(grid, stream, both) - force_G(grid, stream, e1) - force_G(grid, stream, e2);
        const HalfPlanePoint qi = c.bodies[0].center, qj = c.bodies[1].center;
        const Vec2 gij = stream_kernel_grad_y(qi, qj);
        const Vec2 gji = stream_kernel_grad_y(qj, qi);
        Eigen::VectorXd pred(4);
        pred << gji[0], gji[1], gij[0], gij[1];
        const double err = (Gcross - pred).norm() / pred.norm();
        rep.add("full.force_cross_terms", err < 0.2, "relative error " + num(err));
    }

    {
        const std::vector<double> rhos = {0.02, 0.01};
        std::vector<double> mags;
        Eigen::VectorXd a(4), b(4);
        a << 0.7, -0.2, 0.1, 0.4;
        b = a;
        for (const double r : rhos) {
            const BodyConfiguration c = ring_pair(r, 0.6);
            mags.push_back(christoffel_Gamma(c, a, b, {48}).norm());
        }
        const double ratio = mags[0] / mags[1];
        // rho^3 scaling gives ~8 per halving, log factors allowed
        AssemblyOptions半 half;
        half.node_count = 48;
        half.fd_scale = 0.5e-3;
        const double refined =
            christoffel_Gamma(ring_pair(0.01, 0.6), a, b, half).norm();
        const double fd_change = std::abs(refined - mags[1]) / std::max(1e-300, mags[1]);
        rep.add("full.christoffel_magnitude",
                ratio > 4.0 && ratio < 16.0 && mags[1] / (0.01 * 0.01 * 0.01) < 100.0 &&
                    fd_change < 0.1,
                "halving ratio " + num(ratio) + ", fd refinement change " + num(fd_change));
    }

    {
        // E + M smallest eigenvalue scales like rho^2
        const std::vector<double> rhos = {0.04, 0.02, 0.01};
        std::vector<double> eigs;
        for (const double r : rhos) {
            const CoefficientSet coeffs = assemble_coefficients(single_ring(r), {48});
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(coeffs.E + coeffs.M);
            eigs.push_back(es.eigenvalues().minCoeff());
        }
        const double slope = fit_loglog_slope(rhos, eigs);
        rep.add("full.inertia_eigen_scaling", slope > 1.8 && slope < 2.2,
                "min eig slope " + num(slope));
    }

    {
        // potential trace converges to the flat dipole at the right order
        const std::vector<double> rhos = {0.04, 0.02, 0.01, 0.005};
        std::vector<double> devs;
        for (const double r : rhos) {
            const BoundaryGrid grid = make_grid(single_ring(r), 64);
            const PotentialSolution sol = solve_potential(grid, 0, {1.0, 0.0});
            double acc = 0.0, offs = 0.0;
            const auto& p = grid.patches[0];
            for (int m = 0; m < p.node_count; ++m) {
                const int g = p.offset + m;
                const auto& x = grid.nodes[static_cast<std::size_t>(g)];
                offs += sol.trace.values[g] -
                        flat_potential({p.center.r, p.center.z}, p.rho, {1.0, 0.0}, {x.r, x.z});
            }
            offs /= p.node_count;
            for (int m = 0; m < p.node_count; ++m) {
                const int g = p.offset + m;
                const auto& x = grid.nodes[static_cast<std::size_t>(g)];
                const double diff =
                    sol.trace.values[g] -
                    flat_potential({p.center.r, p.center.z}, p.rho, {1.0, 0.0}, {x.r, x.z}) - offs;
                acc += diff * diff * p.weight;
            }
            // L2 norm normalized by the boundary measure of the trace scale rho
            devs.push_back(std::sqrt(acc) / r);
        }
        const double slope = fit_loglog_slope(rhos, devs);

        const BoundaryGrid g2 = make_grid(ring_pair(0.01, 0.5), 64);
        const PotentialSolution s2 = solve_potential(g2, 0, {0.0, 1.0});
        double own = 0.0, other = 0.0;
        for (int m = 0; m < 64; ++m) {
            own = std::max(own, std::abs(s2.tangential.values[g2.patches[0].offset + m]));
            other = std::max(other, std::abs(s2.tangential.values[g2.patches[1].offset + m]));
        }
        rep.add("full.potential_flat_limit", slope >= 2.0 && own / other >= 100.0,
                "trace decay order " + num(slope) + ", own/other " + num(own / other));
    }

    {
        // steady translating ring
        const BodyConfiguration c = single_ring(0.03);
        BodyDynamicsOptions opt;
        opt.assembly.node_count = 48;
        const CoefficientSet coeffs = assemble_coefficients(c, opt.assembly);
        Eigen::VectorXd v0 = quasi_steady_velocity(coeffs);
        const double vr = std::abs(v0[0]);
        v0[0] = 0.0;  // enforce zero radial part
        const double horizon = 0.5 / std::abs(v0[1]);
        const Trajectory traj = integrate_body(c, v0, horizon, opt);
        double r_dev = 0.0, z_dev = 0.0;
        for (std::size_t m = 0; m < traj.size(); ++m) {
            r_dev = std::max(r_dev, std::abs(traj.states[m].q[0] - 1.0));
            z_dev = std::max(z_dev,
                             std::abs(traj.states[m].q[1] - v0[1] * traj.times[m]) /
                                 (std::abs(v0[1]) * horizon));
        }
        rep.add("full.steady_ring",
                vr < 1e-10 && traj.status == "horizon" && r_dev < 1e-5 && z_dev < 1e-5,
                "R dev " + num(r_dev) + ", Z affineness " + num(z_dev));
    }

    {
        // two-body energy conservation and the tolerance response
        RunConfig cfg;
        cfg.regime = RegimeKind::log;
        cfg.epsilons = {3e-2};
        cfg.horizon = 2.0;
        cfg.node_count = 32;
        cfg.rings = {{pi, 1.0}, {pi, 1.0}};
        cfg.qtilde0.resize(4);
        cfg.qtilde0 << 0.0, -0.25, 0.0, 0.25;
        const RegimeSpec spec = cfg.regime_spec(3e-2);
        const BodyConfiguration lifted = regime_lift(spec, cfg.rings, cfg.qtilde0);
        BodyDynamicsOptions opt = cfg.dynamics_options();
        const Eigen::VectorXd v0 = quasi_steady_start(lifted, opt.assembly);
        const double horizon = cfg.horizon / spec.time_factor();

        const auto drift_of = [&](const BodyDynamicsOptions& o) {
            const Trajectory t = integrate_body(lifted, v0, horizon, o);
            double d = 0.0;
            for (const double e : t.energy) d = std::max(d, std::abs(e - t.energy.front()));
            return d / std::abs(t.energy.front());
        };
        const double drift1 = drift_of(opt);
        const double drift2 = drift_of(opt.scaled_tolerance(0.5));
        rep.add("full.energy_conservation", drift1 <= 1e-5 && drift2 * 4.0 <= drift1,
                "drift " + num(drift1) + ", halved-tolerance drift " + num(drift2));
    }

    {
        // leapfrogging of the limiting pair system
        Eigen::VectorXd gamma(2), q0(4);
        gamma << 1.0, 1.0;
        q0 << 0.25, 0.0, -0.25, 0.0;
        const Trajectory traj = integrate_pv(PvSystem::J1, gamma, q0, 8.0, 1.0, {1e-11, 1e-13});
        const LeapfrogReport lf = detect_leapfrog(traj);
        const PvInvariants inv0 = pv_invariants(PvSystem::J1, gamma, q0, 1.0);
        double hdrift = 0.0, pdrift = 0.0;
        for (const auto& st : traj.states) {
            const PvInvariants inv = pv_invariants(PvSystem::J1, gamma, st.q, 1.0);
            hdrift = std::max(hdrift, std::abs(inv.H - inv0.H));
            pdrift = std::max(pdrift, std::abs(inv.P - inv0.P));
        }
        rep.add("full.pv_leapfrog",
                lf.exchange_count >= 1 && lf.period.has_value() && lf.return_error <= 1e-4 &&
                    hdrift <= 1e-8 && pdrift <= 1e-8,
                "period " + num(lf.period.value_or(-1.0)) + ", return err " + num(lf.return_error));
    }

    {
        // static limit checks decrease along epsilon in both regimes
        RunConfig cfg;
        cfg.regime = RegimeKind::log;
        cfg.rings = {{pi, 1.0}, {pi, 0.8}};
        cfg.qtilde0.resize(4);
        cfg.qtilde0 << 0.2, -0.4, -0.2, 0.4;
        cfg.node_count = 32;
        std::vector<double> errs_log, errs_sqrt;
        for (const double eps : {1e-2, 1e-3, 1e-4}) errs_log.push_back(static_limit_error(cfg, eps));
        RunConfig cfg2 = cfg;
        cfg2.regime = RegimeKind::sqrtlog;
        cfg2.rings = {{pi, 1.0}, {pi, 1.0}};
        for (const double eps : {1e-2, 1e-3, 1e-4}) errs_sqrt.push_back(static_limit_error(cfg2, eps));
        const bool mono_log = errs_log[0] > errs_log[1] && errs_log[1] > errs_log[2];
        const bool mono_sqrt = errs_sqrt[0] > errs_sqrt[1] && errs_sqrt[1] > errs_sqrt[2];
        rep.add("full.static_limit_checks", mono_log && mono_sqrt,
                "log: " + num(errs_log[0]) + " > " + num(errs_log[1]) + " > " + num(errs_log[2]) +
                    "; sqrtlog: " + num(errs_sqrt[0]) + " > " + num(errs_sqrt[1]) + " > " +
                    num(errs_sqrt[2]));
    }

    return rep;
}

} // namespace ringflow
