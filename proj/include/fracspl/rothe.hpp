#pragma once

// Rothe time stepping for the discrete weak SPL problem: one SPD tridiagonal
// solve per step, full-history discrete convolutions on the difference
// quotients, and the a-priori-estimate ledger filled as the run progresses.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fracspl/fem.hpp"
#include "fracspl/grid.hpp"
#include "fracspl/spl.hpp"

namespace fracspl {

/// Per-step monitor quantities of the a-priori estimates. All are chosen to
/// approach refinement-independent limits: the H^1 column carries the running
/// max (the estimate bounds the sup over steps) and the increment column is
/// normalised by tau (the raw increment sum shrinks linearly with the step).
struct EstimateLedger {
    std::vector<double> conv_energy;  // (g_a * ||delta u - V0||^2)^c_j
    std::vector<double> kinetic;      // sum_{i<=j} ||delta u_i||^2 tau
    std::vector<double> h1_norm;      // max_{i<=j} ||u_i||_{H^1}^2
    std::vector<double> increment;    // sum_{i<=j} ||u_i - u_{i-1}||_{H^1}^2 / tau
    std::vector<double> dy_sum;       // sum_{i<=j} ||(g_a * delta u)^c_i||^2 tau
    std::vector<double> dual_sum;     // sum_{i<=j} ||delta(g_a*(delta u-V0))^c_i||_dual^2 tau
};

struct RotheRun {
    ModelParams params;
    Mesh1D mesh;
    TimeGrid grid;
    FemSystem system;
    std::vector<std::vector<double>> u;        // interior nodal vectors, i = 0..n
    std::vector<std::vector<double>> delta_u;  // delta u_i, with delta u_0 = V0
    EstimateLedger ledger;
};

/// Scalar coefficient in front of the mass matrix of the per-step form.
inline double step_mass_coefficient(const ModelParams& p, double tau) {
    const double g_tau = rl_kernel(p.alpha, tau);
    return p.rho_c() * p.tau_q_alpha / tau * g_tau + p.a * p.tau_q_alpha * g_tau + p.rho_c() / tau;
}

/// A = (rho c tau_q^a / tau * g_a(tau) + a tau_q^a g_a(tau) + rho c / tau) M + (K + a M).
inline TriDiag step_matrix(const FemSystem& system, const ModelParams& p, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("step_matrix: tau must be positive");
    return system.elliptic + system.mass.scaled(step_mass_coefficient(p, tau));
}

namespace detail {

/// History functional F_i as an interior load vector. Expects u, delta_u
/// complete through step i-1; delta2_u[k] = (delta u_k - delta u_{k-1})/tau.
inline std::vector<double> step_rhs_impl(const FemSystem& system, const ModelParams& p,
                                         const TimeGrid& grid, const KernelSamples& kernel,
                                         const std::vector<std::vector<double>>& u,
                                         const std::vector<std::vector<double>>& delta_u,
                                         const std::vector<double>& load_i, std::size_t i) {
    const double tau = grid.tau();
    const double g_tau = kernel.at(1);
    const std::size_t dim = system.mesh.interior_count();

    std::vector<double> nodal(dim, 0.0);
    // rho c tau_q^a g_a(tau) (u_{i-1}/tau + delta u_{i-1}) + rho c / tau u_{i-1}
    //   + a tau_q^a g_a(tau) u_{i-1}
    const double c1 = p.rho_c() * p.tau_q_alpha * g_tau;
    axpy(c1 / tau + p.rho_c() / tau + p.a * p.tau_q_alpha * g_tau, u[i - 1], nodal);
    axpy(c1, delta_u[i - 1], nodal);
    // - rho c tau_q^a sum_{k<i} g_a(t_{i+1-k}) delta^2 u_k tau
    // - a tau_q^a sum_{k<i} g_a(t_{i+1-k}) delta u_k tau
    for (std::size_t k = 1; k < i; ++k) {
        const double g = kernel.at(i + 1 - k);
        for (std::size_t j = 0; j < dim; ++j) {
            const double d2 = (delta_u[k][j] - delta_u[k - 1][j]) / tau;
            nodal[j] -= p.rho_c() * p.tau_q_alpha * g * d2 * tau;
            nodal[j] -= p.a * p.tau_q_alpha * g * delta_u[k][j] * tau;
        }
    }

    std::vector<double> rhs = system.mass.apply(nodal);
    const std::vector<double> f = system.mass.apply(load_i);
    for (std::size_t j = 0; j < dim; ++j) rhs[j] += f[j];
    return rhs;
}

}  // namespace detail

/// Load vector for step i of an in-progress run. F_i enters by nodal interpolation.
inline std::vector<double> step_rhs(const RotheRun& run, const std::vector<double>& load_i,
                                    std::size_t i) {
    if (i < 1 || i > run.grid.step_count) throw std::out_of_range("step_rhs: index outside 1..n");
    if (run.u.size() < i || run.delta_u.size() < i)
        throw std::logic_error("step_rhs: history incomplete");
    KernelSamples kernel(run.params.alpha, run.grid);
    return detail::step_rhs_impl(run.system, run.params, run.grid, kernel, run.u, run.delta_u,
                                 load_i, i);
}

/// Sequential Rothe solve. U0, V0 are interior nodal vectors; source(i) yields
/// the interior nodal samples of F(., t_i).
inline RotheRun run_solver(const ModelParams& params, const Mesh1D& mesh, const TimeGrid& grid,
                           const std::vector<double>& U0, const std::vector<double>& V0,
                           const std::function<std::vector<double>(std::size_t)>& source) {
    params.validate();
    const std::size_t dim = mesh.interior_count();
    if (U0.size() != dim || V0.size() != dim)
        throw std::invalid_argument("run_solver: initial data must live on interior nodes");

    RotheRun run{params, mesh, grid, assemble(mesh, params.a), {}, {}, {}};
    const double tau = grid.tau();
    const std::size_t n = grid.step_count;
    KernelSamples kernel(params.alpha, grid);

    const TriDiag A = step_matrix(run.system, params, tau);
    const TriDiagFactor A_fac(A);
    const TriDiagFactor riesz(run.system.laplacian + run.system.mass);  // discrete H^-1 Gram

    run.u.reserve(n + 1);
    run.delta_u.reserve(n + 1);
    run.u.push_back(U0);
    run.delta_u.push_back(V0);

    EstimateLedger& led = run.ledger;
    std::vector<double> dv0_l2_sq;  // ||delta u_i - V0||^2, i = 0..n
    dv0_l2_sq.push_back(0.0);
    double kinetic = 0.0, increment = 0.0, dy = 0.0, dual = 0.0;
    double h1_max = run.system.h1_sq(U0);

    for (std::size_t i = 1; i <= n; ++i) {
        const std::vector<double> rhs = detail::step_rhs_impl(run.system, params, grid, kernel,
                                                              run.u, run.delta_u, source(i), i);
        std::vector<double> ui = A_fac.solve(rhs);

        std::vector<double> dui(dim);
        for (std::size_t j = 0; j < dim; ++j) dui[j] = (ui[j] - run.u[i - 1][j]) / tau;
        run.u.push_back(std::move(ui));
        run.delta_u.push_back(std::move(dui));

        // ledger
        std::vector<double> diff(dim), conv_du(dim, 0.0), conv_d2u(dim, 0.0);
        for (std::size_t j = 0; j < dim; ++j) diff[j] = run.delta_u[i][j] - V0[j];
        dv0_l2_sq.push_back(run.system.l2_sq(diff));

        double conv_energy = 0.0;
        for (std::size_t l = 1; l <= i; ++l) conv_energy += kernel.at(i + 1 - l) * dv0_l2_sq[l] * tau;

        for (std::size_t l = 1; l <= i; ++l) {
            const double g = kernel.at(i + 1 - l);
            for (std::size_t j = 0; j < dim; ++j) {
                conv_du[j] += g * run.delta_u[l][j] * tau;
                conv_d2u[j] += g * (run.delta_u[l][j] - run.delta_u[l - 1][j]) / tau * tau;
            }
        }
        kinetic += run.system.l2_sq(run.delta_u[i]) * tau;
        std::vector<double> ustep(dim);
        for (std::size_t j = 0; j < dim; ++j) ustep[j] = run.u[i][j] - run.u[i - 1][j];
        increment += run.system.h1_sq(ustep) / tau;
        dy += run.system.l2_sq(conv_du) * tau;
        const std::vector<double> dual_load = run.system.mass.apply(conv_d2u);
        const std::vector<double> w = riesz.solve(dual_load);
        dual += dot(dual_load, w) * tau;

        led.conv_energy.push_back(conv_energy);
        led.kinetic.push_back(kinetic);
        h1_max = std::max(h1_max, run.system.h1_sq(run.u[i]));
        led.h1_norm.push_back(h1_max);
        led.increment.push_back(increment);
        led.dy_sum.push_back(dy);
        led.dual_sum.push_back(dual);
    }
    return run;
}

/// Rothe interpolants at time t: piecewise-linear v_n, piecewise-constant
/// vbar_n (value u_i on (t_{i-1}, t_i]) and wbar_n (value delta u_i).
struct RotheInterpolants {
    std::vector<double> linear;          // v_n(t)
    std::vector<double> piecewise;       // vbar_n(t)
    std::vector<double> rate_piecewise;  // wbar_n(t)
};

inline RotheInterpolants rothe_interpolants(const RotheRun& run, double t) {
    if (t < 0.0 || t > run.grid.final_time * (1.0 + 1e-12))
        throw std::domain_error("rothe_interpolants: t outside [0,T]");
    if (t == 0.0) return {run.u[0], run.u[0], run.delta_u[0]};
    const double tau = run.grid.tau();
    std::size_t i = static_cast<std::size_t>(std::ceil(t / tau - 1e-12));
    i = std::min(std::max<std::size_t>(i, 1), run.grid.step_count);
    const double t_prev = static_cast<double>(i - 1) * tau;
    std::vector<double> lin = run.u[i - 1];
    axpy(t - t_prev, run.delta_u[i], lin);
    return {std::move(lin), run.u[i], run.delta_u[i]};
}

/// Residual of the discrete weak form at step i against all interior basis
/// vectors, using the solved history. Zero up to rounding for a correct solve.
inline std::vector<double> step_residual(const RotheRun& run,
                                         const std::vector<double>& load_i, std::size_t i) {
    const double tau = run.grid.tau();
    const std::size_t dim = run.mesh.interior_count();
    KernelSamples kernel(run.params.alpha, run.grid);

    std::vector<double> conv_d2u(dim, 0.0), conv_du(dim, 0.0);
    for (std::size_t l = 1; l <= i; ++l) {
        const double g = kernel.at(i + 1 - l);
        for (std::size_t j = 0; j < dim; ++j) {
            conv_d2u[j] += g * (run.delta_u[l][j] - run.delta_u[l - 1][j]) / tau * tau;
            conv_du[j] += g * run.delta_u[l][j] * tau;
        }
    }
    std::vector<double> nodal(dim, 0.0);
    axpy(run.params.rho_c() * run.params.tau_q_alpha, conv_d2u, nodal);
    axpy(run.params.a * run.params.tau_q_alpha, conv_du, nodal);
    axpy(run.params.rho_c(), run.delta_u[i], nodal);
    axpy(-1.0, load_i, nodal);
    std::vector<double> res = run.system.mass.apply(nodal);
    const std::vector<double> lu = run.system.elliptic.apply(run.u[i]);
    for (std::size_t j = 0; j < dim; ++j) res[j] += lu[j];
    return res;
}

}  // namespace fracspl
