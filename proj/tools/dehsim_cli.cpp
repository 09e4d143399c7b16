// Copyright 2026 The dehsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dehsim command-line runner. Builds a scenario from an optional JSON config
// plus flag overrides and executes it through the C interface.

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dehsim/dehsim.h"
#include "json.hpp"

namespace {

using json = nlohmann::json;

struct Overrides {
    std::string config;
    std::string out;
    std::optional<std::string> name;
    std::optional<std::string> source;
    std::optional<std::string> alpha;
    std::optional<double> alpha_mag;
    std::optional<std::vector<double>> phases;
    std::optional<std::string> parity;
    std::optional<double> n_bar;
    std::optional<int> n;
    std::optional<int> n_max;
    std::optional<std::string> kind;
    std::optional<double> omega0;
    std::optional<double> omega_c;
    std::optional<double> g;
    std::optional<double> drive_amplitude;
    std::optional<double> t_start;
    std::optional<double> t_end;
    std::optional<int> samples;
    std::optional<int> substeps;
    std::optional<double> tau;
    std::optional<double> tolerance;
    std::optional<int> points;
    std::optional<double> extent;
    std::optional<double> eta;
    std::optional<double> quarter_periods;
    bool report_mixture = false;
};

void add_flags(CLI::App* app, Overrides& o, bool config_required) {
    auto* cfg = app->add_option("--config", o.config, "Scenario JSON file");
    if (config_required) {
        cfg->required();
    }
    app->add_option("--out", o.out, "Output directory")->required();
    app->add_option("--name", o.name, "Scenario name recorded in reports");
    app->add_option("--source", o.source,
                    "Replace the source: coherent, cat, cat_ensemble, fock, thermal");
    app->add_option("--alpha", o.alpha, "Cat amplitude, 're' or 're,im'");
    app->add_option("--alpha-mag", o.alpha_mag, "Coherent amplitude |alpha|");
    app->add_option("--phases", o.phases, "Coherent phases in radians")->delimiter(',');
    app->add_option("--parity", o.parity, "Cat parity: even or odd");
    app->add_option("--n-bar", o.n_bar, "Thermal mean photon number");
    app->add_option("--n", o.n, "Fock level");
    app->add_option("--n-max", o.n_max, "Fock truncation");
    app->add_option("--kind", o.kind, "Hamiltonian: jc_rwa, rabi_full, semiclassical");
    app->add_option("--omega0", o.omega0, "Qubit frequency");
    app->add_option("--omega-c", o.omega_c, "Field (or drive) frequency");
    app->add_option("--g", o.g, "Coupling");
    app->add_option("--drive-amplitude", o.drive_amplitude, "Semiclassical drive amplitude");
    app->add_option("--t-start", o.t_start, "Grid start");
    app->add_option("--t-end", o.t_end, "Grid end");
    app->add_option("--samples", o.samples, "Grid samples");
    app->add_option("--substeps", o.substeps, "Integrator substeps per grid interval");
    app->add_option("--tau", o.tau, "Stopping time (default: optimized over the grid)");
    app->add_option("--tolerance", o.tolerance, "DEH fidelity tolerance");
    app->add_option("--points", o.points, "Wigner points per axis");
    app->add_option("--extent", o.extent, "Wigner grid half-width in q and p");
    app->add_option("--eta", o.eta, "Smoothing weight for relative entropies");
    app->add_option("--quarter-periods", o.quarter_periods, "Semiclassical window length");
    app->add_flag("--report-mixture", o.report_mixture, "Add the mixture's fidelity column");
}

json parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        return std::stod(text);
    }
    return json::array({std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))});
}

template <typename T>
void put(json& node, const char* key, const std::optional<T>& value) {
    if (value) {
        node[key] = *value;
    }
}

json build_patch(const Overrides& o, const std::string& command) {
    json patch = json::object();
    if (!command.empty()) {
        patch["command"] = command;
    }
    put(patch, "name", o.name);
    put(patch, "n_max", o.n_max);
    put(patch, "tau", o.tau);
    put(patch, "tolerance", o.tolerance);
    put(patch, "substeps", o.substeps);
    if (o.report_mixture) {
        patch["report_mixture"] = true;
    }

    json ham = json::object();
    put(ham, "kind", o.kind);
    put(ham, "omega0", o.omega0);
    put(ham, "omega_c", o.omega_c);
    put(ham, "g", o.g);
    put(ham, "drive_amplitude", o.drive_amplitude);
    if (!ham.empty()) {
        patch["hamiltonian"] = ham;
    }

    json grid = json::object();
    put(grid, "t_start", o.t_start);
    put(grid, "t_end", o.t_end);
    put(grid, "samples", o.samples);
    if (!grid.empty()) {
        patch["grid"] = grid;
    }

    json wigner = json::object();
    put(wigner, "points", o.points);
    if (o.extent) {
        wigner["q_min"] = -*o.extent;
        wigner["q_max"] = *o.extent;
        wigner["p_min"] = -*o.extent;
        wigner["p_max"] = *o.extent;
    }
    if (!wigner.empty()) {
        patch["wigner"] = wigner;
    }

    json robustness = json::object();
    put(robustness, "eta", o.eta);
    if (!robustness.empty()) {
        patch["robustness"] = robustness;
    }

    json semi = json::object();
    put(semi, "quarter_periods", o.quarter_periods);
    if (command == "semiclassical") {
        put(semi, "alpha_mag", o.alpha_mag);
    }
    if (!semi.empty()) {
        patch["semiclassical"] = semi;
    }

    json source = json::object();
    put(source, "type", o.source);
    if (o.alpha) {
        source["alpha"] = parse_complex(*o.alpha);
    }
    if (command != "semiclassical") {
        put(source, "alpha_mag", o.alpha_mag);
    }
    put(source, "phases", o.phases);
    put(source, "parity", o.parity);
    put(source, "n_bar", o.n_bar);
    put(source, "n", o.n);
    if (!source.empty()) {
        patch["source"] = source;
    }
    return patch;
}

json default_config(const std::string& command) {
    json doc = {{"name", command}, {"command", command}};
    if (command != "semiclassical") {
        doc["source"] = {{"type", "coherent"}, {"alpha_mag", 1.0}};
    }
    return doc;
}

int report(dehsim_status status) {
    if (status != DEHSIM_OK) {
        std::fprintf(stderr, "dehsim: error: %s\n", dehsim_last_error());
    }
    return static_cast<int>(status);
}

struct ScenarioDeleter {
    void operator()(dehsim_scenario* s) const { dehsim_scenario_free(s); }
};

int execute(const Overrides& o, const std::string& command) {
    dehsim_scenario* raw = nullptr;
    dehsim_status st = o.config.empty()
                           ? dehsim_scenario_parse(default_config(command).dump().c_str(), &raw)
                           : dehsim_scenario_load(o.config.c_str(), &raw);
    if (st != DEHSIM_OK) {
        return report(st);
    }
    std::unique_ptr<dehsim_scenario, ScenarioDeleter> scenario(raw);

    json patch;
    try {
        patch = build_patch(o, command);
    } catch (const std::exception&) {
        std::fprintf(stderr, "dehsim: parse error: --alpha expects 're' or 're,im'\n");
        return DEHSIM_ERR_PARSE;
    }
    if (o.source) {
        // A new source type replaces the configured source instead of merging into it.
        st = dehsim_scenario_patch(scenario.get(), R"({"source": null})");
        if (st != DEHSIM_OK) {
            return report(st);
        }
    }
    st = dehsim_scenario_patch(scenario.get(), patch.dump().c_str());
    if (st != DEHSIM_OK) {
        return report(st);
    }
    return report(dehsim_scenario_run(scenario.get(), o.out.c_str()));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic energy harvesting simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", dehsim_version());

    Overrides run_opts;
    auto* run = app.add_subcommand("run", "Run a scenario config as written");
    add_flags(run, run_opts, false);
    std::string run_config;
    run->add_option("config_file", run_config, "Scenario JSON file");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"fidelity", "Excited-state fidelity per source member"},
        {"entropy", "Subsystem and joint entropies over time"},
        {"wigner", "Wigner function of the source on a grid"},
        {"verify", "Check harvesting at tau (or the optimal tau)"},
        {"robustness", "Distances and relative entropies under source perturbations"},
        {"semiclassical", "Coherent-source JCM against sin^2(g|alpha|t)"},
    };
    std::vector<Overrides> opts(commands.size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        subs.push_back(app.add_subcommand(commands[i].first, commands[i].second));
        add_flags(subs.back(), opts[i], false);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : DEHSIM_ERR_PARSE;
    }

    if (run->parsed()) {
        if (run_opts.config.empty()) {
            run_opts.config = run_config;
        }
        if (run_opts.config.empty()) {
            std::fprintf(stderr, "dehsim: parse error: run needs a config file\n");
            return DEHSIM_ERR_PARSE;
        }
        return execute(run_opts, "");
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i]->parsed()) {
            return execute(opts[i], commands[i].first);
        }
    }
    return DEHSIM_ERR_PARSE;
}
