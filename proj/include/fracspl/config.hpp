#pragma once

// Scenario configuration: one JSON document describing the problem data, the
// spectral and Rothe discretizations and the output location.

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracspl/fem.hpp"
#include "fracspl/spectral.hpp"

namespace fracspl {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Named analytic preset or tabulated samples on a uniform grid over [0, L].
struct DataSpec {
    std::string preset;           // "sin_pi_over_L", "bump", "zero", "const"; empty if tabulated
    std::vector<double> samples;  // uniform samples incl. endpoints; empty if preset
    double amplitude = 1.0;

    bool is_zero() const { return preset == "zero"; }

    double eval(double x, double L) const {
        if (!preset.empty()) {
            if (preset == "zero") return 0.0;
            if (preset == "const") return amplitude;
            if (preset == "sin_pi_over_L") return amplitude * std::sin(std::numbers::pi * x / L);
            if (preset == "bump") {
                const double s = 2.0 * x / L - 1.0;  // [-1, 1]
                if (std::abs(s) >= 1.0) return 0.0;
                return amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s));
            }
            throw ConfigError("unknown preset '" + preset + "'");
        }
        // linear interpolation of the tabulated samples
        const std::size_t q = samples.size() - 1;
        const double pos = x / L * static_cast<double>(q);
        const std::size_t i = std::min(static_cast<std::size_t>(pos), q - 1);
        const double w = pos - static_cast<double>(i);
        return amplitude * ((1.0 - w) * samples[i] + w * samples[i + 1]);
    }

    std::vector<double> sample_uniform(double L, std::size_t intervals) const {
        std::vector<double> v(intervals + 1);
        for (std::size_t i = 0; i <= intervals; ++i)
            v[i] = eval(L * static_cast<double>(i) / static_cast<double>(intervals), L);
        return v;
    }

    std::vector<double> sample_interior(const Mesh1D& mesh) const {
        std::vector<double> v(mesh.interior_count());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = eval(mesh.node(j + 1), mesh.length);
        return v;
    }
};

struct ScenarioConfig {
    // problem block
    ModelParams params{0.5, 1.0, 1.0, 1.0, 0.0};
    double L = 1.0;
    double T = 1.0;
    bool k_constant = true;
    double k_bar = 1.0;
    std::vector<double> k_elements;  // used when !k_constant (per Rothe element)
    DataSpec U0{"zero", {}, 1.0}, V0{"zero", {}, 1.0}, F{"zero", {}, 1.0};

    // spectral block
    std::size_t n_modes = 20;
    std::size_t quad_points = 2048;

    // rothe block
    std::vector<std::size_t> element_counts = {32};
    std::vector<std::size_t> step_counts = {32};

    // output block
    std::filesystem::path out_dir = "out";
    int precision = 17;

    SpectralConfig spectral_config() const {
        if (!k_constant)
            throw ConfigError("spectral ground truth requires constant conductivity");
        return SpectralConfig{L, k_bar, params, n_modes, quad_points};
    }

    Mesh1D mesh(std::size_t elements) const {
        if (k_constant) return Mesh1D::uniform(L, elements, k_bar);
        if (k_elements.size() != elements)
            throw ConfigError("per-element conductivity list must match element_count");
        return Mesh1D(L, elements, k_elements);
    }

    void validate() const {
        try {
            params.validate();
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        if (!(L > 0.0) || !(T > 0.0)) throw ConfigError("L and T must be positive");
        if (!k_constant && k_elements.empty()) throw ConfigError("empty conductivity list");
        for (std::size_t i = 1; i < step_counts.size(); ++i)
            if (step_counts[i] <= step_counts[i - 1])
                throw ConfigError("step_counts must be strictly increasing");
        for (const DataSpec* d : {&U0, &V0, &F}) {
            if (d->preset.empty() && d->samples.size() < 2)
                throw ConfigError("tabulated data needs at least two samples");
            if (!d->preset.empty()) d->eval(0.0, L);  // rejects unknown presets
        }
        if (element_counts.empty() || step_counts.empty())
            throw ConfigError("refinement lists must be nonempty");
        if (element_counts.size() != 1 && element_counts.size() != step_counts.size())
            throw ConfigError("element_counts must be scalar or match step_counts");
    }

    /// Diagonal refinement pairs (n_steps, elements).
    std::vector<std::pair<std::size_t, std::size_t>> refinement_pairs() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < step_counts.size(); ++i) {
            const std::size_t M =
                element_counts.size() == 1 ? element_counts[0] : element_counts[i];
            out.emplace_back(step_counts[i], M);
        }
        return out;
    }
};

namespace detail {

inline DataSpec parse_data(const nlohmann::json& j, const std::string& name) {
    DataSpec d;
    if (j.is_string()) {
        d.preset = j.get<std::string>();
        return d;
    }
    if (!j.is_object()) throw ConfigError(name + ": expected preset name or object");
    if (j.contains("preset")) d.preset = j.at("preset").get<std::string>();
    if (j.contains("samples")) d.samples = j.at("samples").get<std::vector<double>>();
    if (j.contains("amplitude")) d.amplitude = j.at("amplitude").get<double>();
    if (d.preset.empty() == d.samples.empty())
        throw ConfigError(name + ": give exactly one of preset / samples");
    return d;
}

}  // namespace detail

inline ScenarioConfig parse_config(const nlohmann::json& j) {
    ScenarioConfig cfg;
    try {
        const auto& p = j.at("problem");
        cfg.params.alpha = p.at("alpha").get<double>();
        cfg.params.tau_q_alpha = p.at("tau_q_alpha").get<double>();
        cfg.params.rho = p.value("rho", 1.0);
        cfg.params.c = p.value("c", 1.0);
        cfg.params.a = p.value("a", 0.0);
        cfg.L = p.value("L", 1.0);
        cfg.T = p.value("T", 1.0);
        if (p.contains("k")) {
            if (p.at("k").is_number()) {
                cfg.k_constant = true;
                cfg.k_bar = p.at("k").get<double>();
            } else {
                cfg.k_constant = false;
                cfg.k_elements = p.at("k").get<std::vector<double>>();
            }
        }
        if (p.contains("U0")) cfg.U0 = detail::parse_data(p.at("U0"), "U0");
        if (p.contains("V0")) cfg.V0 = detail::parse_data(p.at("V0"), "V0");
        if (p.contains("F")) cfg.F = detail::parse_data(p.at("F"), "F");
        if (j.contains("spectral")) {
            const auto& s = j.at("spectral");
            cfg.n_modes = s.value("n_modes", cfg.n_modes);
            cfg.quad_points = s.value("quad_points", cfg.quad_points);
        }
        if (j.contains("rothe")) {
            const auto& r = j.at("rothe");
            if (r.contains("element_count"))
                cfg.element_counts = {r.at("element_count").get<std::size_t>()};
            if (r.contains("element_counts"))
                cfg.element_counts = r.at("element_counts").get<std::vector<std::size_t>>();
            if (r.contains("step_count"))
                cfg.step_counts = {r.at("step_count").get<std::size_t>()};
            if (r.contains("step_counts"))
                cfg.step_counts = r.at("step_counts").get<std::vector<std::size_t>>();
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            cfg.out_dir = o.value("directory", cfg.out_dir.string());
            cfg.precision = o.value("precision", cfg.precision);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

inline ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path.string() + ": " + e.what());
    }
    return parse_config(j);
}

}  // namespace fracspl
