// fracspl: scenario runner and verification front-end.
//
// Subcommands: ml-eval, spectral, rothe, cross-validate, verify.
// Exit codes: 0 ok, 1 usage/config error, 2 numerical convergence failure,
// 3 validation regression, 4 property failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracspl/config.hpp"
#include "fracspl/csv.hpp"
#include "fracspl/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConvergence = 2;
constexpr int kExitRegression = 3;
constexpr int kExitProperty = 4;

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw fracspl::ConfigError("empty element in list '" + s + "'");
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw fracspl::ConfigError("bad number '" + item + "'");
    }
    if (out.empty()) throw fracspl::ConfigError("empty list");
    return out;
}

/// Optional worker cap from the environment; everything currently runs on one
/// thread, so this only validates and reports.
std::optional<long> thread_cap() {
    const char* env = std::getenv("FRACSPL_THREADS");
    if (!env) return std::nullopt;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) return std::nullopt;
    return v;
}

fracspl::ScenarioConfig load(const std::string& config_path, const std::string& out_override) {
    if (config_path.empty()) throw fracspl::ConfigError("--config is required");
    fracspl::ScenarioConfig cfg = fracspl::load_config(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

int cmd_ml_eval(const std::string& alphas, const std::string& beta, const std::string& zs) {
    fracspl::MLQuery q;
    q.alphas = parse_list(alphas);
    q.beta = parse_list(beta).at(0);
    q.zs = parse_list(zs);
    q.validate();
    const fracspl::MLResult r = fracspl::mml_eval_auto(q);
    std::cout << fracspl::format_sig(r.value) << " terms=" << r.terms_used
              << " tail=" << fracspl::format_sig(r.tail_estimate, 3)
              << (r.high_precision ? " route=mpfr" : " route=double") << "\n";
    return kExitOk;
}

/// Spatial output nodes: the mesh nodes of the first refinement entry.
std::vector<double> output_x(const fracspl::ScenarioConfig& cfg) {
    const std::size_t M = cfg.element_counts.front();
    std::vector<double> x(M + 1);
    for (std::size_t j = 0; j <= M; ++j)
        x[j] = cfg.L * static_cast<double>(j) / static_cast<double>(M);
    return x;
}

std::vector<double> output_t(const fracspl::ScenarioConfig& cfg) {
    const std::size_t n = cfg.step_counts.front();
    std::vector<double> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        t[i] = cfg.T * static_cast<double>(i) / static_cast<double>(n);
    return t;
}

int cmd_spectral(const fracspl::ScenarioConfig& cfg) {
    if (!cfg.F.is_zero())
        throw fracspl::ConfigError("the spectral solver handles homogeneous sources only; set F to \"zero\"");
    const fracspl::SpectralConfig scfg = cfg.spectral_config();
    const std::size_t q = scfg.effective_quad_points();
    const std::vector<double> x = output_x(cfg);
    const std::vector<double> t = output_t(cfg);
    const fracspl::SpectralField field = fracspl::spectral_solve(
        scfg, cfg.U0.sample_uniform(cfg.L, q), cfg.V0.sample_uniform(cfg.L, q), x, t);

    fracspl::CsvWriter u_csv(cfg.out_dir / "u.csv", {"x", "t", "u"}, cfg.precision);
    fracspl::CsvWriter du_csv(cfg.out_dir / "dtu.csv", {"x", "t", "dtu"}, cfg.precision);
    for (std::size_t it = 0; it < t.size(); ++it) {
        for (std::size_t ix = 0; ix < x.size(); ++ix) {
            u_csv.row({x[ix], t[it], field.u[it][ix]});
            du_csv.row({x[ix], t[it], field.dtu[it][ix]});
        }
    }
    return kExitOk;
}

fracspl::RotheRun run_rothe(const fracspl::ScenarioConfig& cfg, std::size_t n, std::size_t M) {
    const fracspl::Mesh1D mesh = cfg.mesh(M);
    const fracspl::TimeGrid grid(cfg.T, n);
    const std::vector<double> f = cfg.F.sample_interior(mesh);
    return fracspl::run_solver(cfg.params, mesh, grid, cfg.U0.sample_interior(mesh),
                               cfg.V0.sample_interior(mesh),
                               [&f](std::size_t) { return f; });
}

int cmd_rothe(const fracspl::ScenarioConfig& cfg) {
    const std::size_t n = cfg.step_counts.front();
    const std::size_t M = cfg.element_counts.front();
    const fracspl::RotheRun run = run_rothe(cfg, n, M);

    fracspl::CsvWriter traj(cfg.out_dir / "trajectory.csv", {"t", "x", "u", "delta_u"}, cfg.precision);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = run.grid.node(i);
        traj.row({t, 0.0, 0.0, 0.0});
        for (std::size_t j = 0; j < run.mesh.interior_count(); ++j)
            traj.row({t, run.mesh.node(j + 1), run.u[i][j], run.delta_u[i][j]});
        traj.row({t, cfg.L, 0.0, 0.0});
    }
    fracspl::CsvWriter ledger(cfg.out_dir / "ledger.csv",
                              {"j", "conv_energy", "kinetic", "h1_norm", "increment", "dy_sum",
                               "dual_sum"},
                              cfg.precision);
    const fracspl::EstimateLedger& l = run.ledger;
    for (std::size_t j = 0; j < l.kinetic.size(); ++j)
        ledger.row({static_cast<double>(j + 1), l.conv_energy[j], l.kinetic[j], l.h1_norm[j],
                    l.increment[j], l.dy_sum[j], l.dual_sum[j]});
    return kExitOk;
}

int cmd_cross_validate(const fracspl::ScenarioConfig& cfg) {
    if (!cfg.k_constant)
        throw fracspl::ConfigError("spectral ground truth requires constant conductivity");
    if (!cfg.F.is_zero())
        throw fracspl::ConfigError("cross-validate requires F = \"zero\" (homogeneous spectral solution)");
    const fracspl::SpectralConfig scfg = cfg.spectral_config();
    const std::size_t q = scfg.effective_quad_points();
    const std::vector<double> U0q = cfg.U0.sample_uniform(cfg.L, q);
    const std::vector<double> V0q = cfg.V0.sample_uniform(cfg.L, q);
    const double u0_norm = std::sqrt(fracspl::dot(
        fracspl::build_spectral_model(scfg, U0q, V0q).c,
        fracspl::build_spectral_model(scfg, U0q, V0q).c));

    fracspl::CsvWriter table(cfg.out_dir / "error_table.csv", {"n", "M", "max_l2_error"},
                             cfg.precision);
    std::vector<double> errors;
    for (const auto& [n, M] : cfg.refinement_pairs()) {
        const fracspl::RotheRun run = run_rothe(cfg, n, M);
        std::vector<double> x_int(run.mesh.interior_count());
        for (std::size_t j = 0; j < x_int.size(); ++j) x_int[j] = run.mesh.node(j + 1);
        std::vector<double> t_nodes(n + 1);
        for (std::size_t i = 0; i <= n; ++i) t_nodes[i] = run.grid.node(i);
        const fracspl::SpectralField field = fracspl::spectral_solve(scfg, U0q, V0q, x_int, t_nodes);
        double err = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            std::vector<double> diff(run.u[i]);
            for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= field.u[i][j];
            err = std::max(err, std::sqrt(run.system.l2_sq(diff)));
        }
        errors.push_back(err);
        table.row({static_cast<double>(n), static_cast<double>(M), err});
    }
    for (std::size_t i = 1; i < errors.size(); ++i) {
        const bool negligible = errors[i] <= 1e-12 * std::max(u0_norm, 1e-300);
        if (!(errors[i] < errors[i - 1] || negligible)) {
            std::cerr << "cross-validate: error did not decrease at refinement step " << i << "\n";
            return kExitRegression;
        }
    }
    return kExitOk;
}

int cmd_verify(const std::string& selector, std::uint64_t seed, bool inject_fault) {
    const fracspl::KernelFault fault =
        inject_fault ? fracspl::KernelFault::increasing : fracspl::KernelFault::none;
    fracspl::Suite suite;
    if (selector == "fracops" || selector == "all") {
        const fracspl::Suite s = fracspl::verify_fracops(seed, fault);
        suite.insert(suite.end(), s.begin(), s.end());
    }
    if (selector == "mittag" || selector == "all") {
        const fracspl::Suite s = fracspl::verify_mittag(seed);
        suite.insert(suite.end(), s.begin(), s.end());
    }
    if (selector == "spectral" || selector == "all") {
        const fracspl::Suite s = fracspl::verify_spectral(seed);
        suite.insert(suite.end(), s.begin(), s.end());
    }
    if (selector == "rothe" || selector == "all") {
        const fracspl::Suite s = fracspl::verify_rothe(seed);
        suite.insert(suite.end(), s.begin(), s.end());
    }
    if (suite.empty())
        throw fracspl::ConfigError("unknown suite selector '" + selector +
                                   "' (expected fracops, mittag, spectral, rothe or all)");
    std::cout << "TAP version 13\n1.." << suite.size() << "\n";
    bool all_pass = true;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const fracspl::PropertyCheck& c = suite[i];
        all_pass = all_pass && c.pass;
        std::cout << (c.pass ? "ok " : "not ok ") << (i + 1) << " - " << c.name
                  << " # residual=" << fracspl::format_sig(c.residual, 6) << "\n";
    }
    return all_pass ? kExitOk : kExitProperty;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional single-phase-lag heat equation toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 42;
    std::string alphas, beta = "1", zs, selector = "all";
    bool inject_fault = false;

    CLI::App* ml = app.add_subcommand("ml-eval", "evaluate a multinomial Mittag-Leffler function");
    ml->add_option("--alphas", alphas, "comma-separated exponents")->required();
    ml->add_option("--beta", beta, "second parameter");
    ml->add_option("--zs", zs, "comma-separated arguments")->required();

    CLI::App* sp = app.add_subcommand("spectral", "run the spectral solver, write u.csv / dtu.csv");
    sp->add_option("--config", config_path, "scenario JSON")->required();
    sp->add_option("--out", out_dir, "output directory override");

    CLI::App* ro = app.add_subcommand("rothe", "run the Rothe solver, write trajectory.csv / ledger.csv");
    ro->add_option("--config", config_path, "scenario JSON")->required();
    ro->add_option("--out", out_dir, "output directory override");

    CLI::App* cv = app.add_subcommand("cross-validate", "Rothe against spectral ground truth");
    cv->add_option("--config", config_path, "scenario JSON")->required();
    cv->add_option("--out", out_dir, "output directory override");

    CLI::App* ve = app.add_subcommand("verify", "run property suites (TAP output)");
    ve->add_option("suite", selector, "fracops, mittag, spectral, rothe or all");
    ve->add_option("--seed", seed, "RNG seed for randomized trials");
    ve->add_flag("--inject-increasing-kernel", inject_fault,
                 "replace the decreasing kernels with increasing ones (must fail)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    if (const std::optional<long> cap = thread_cap())
        std::cerr << "note: FRACSPL_THREADS=" << *cap << " (single worker in use)\n";

    try {
        if (ml->parsed()) return cmd_ml_eval(alphas, beta, zs);
        if (sp->parsed()) return cmd_spectral(load(config_path, out_dir));
        if (ro->parsed()) return cmd_rothe(load(config_path, out_dir));
        if (cv->parsed()) return cmd_cross_validate(load(config_path, out_dir));
        if (ve->parsed()) return cmd_verify(selector, seed, inject_fault);
    } catch (const fracspl::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
