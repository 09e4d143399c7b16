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

#include "dehsim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "dehsim/deh.hpp"
#include "dehsim/dynamics.hpp"
#include "dehsim/error.hpp"
#include "dehsim/fock.hpp"
#include "dehsim/phase_space.hpp"
#include "output.hpp"

namespace dehsim {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const char* to_string(Command command) noexcept {
    switch (command) {
    case Command::Fidelity: return "fidelity";
    case Command::Entropy: return "entropy";
    case Command::Wigner: return "wigner";
    case Command::Verify: return "verify";
    case Command::Robustness: return "robustness";
    case Command::Semiclassical: return "semiclassical";
    }
    return "unknown";
}

Command command_from_string(const std::string& name) {
    for (Command c : {Command::Fidelity, Command::Entropy, Command::Wigner, Command::Verify,
                      Command::Robustness, Command::Semiclassical}) {
        if (name == to_string(c)) {
            return c;
        }
    }
    fail(ErrorKind::Validation, "unknown command '" + name + "'");
}

namespace {

// Typed access to one JSON object with the key path used in diagnostics.
class Fields {
public:
    Fields(const json& obj, std::string where, std::initializer_list<const char*> allowed)
        : obj_(obj), where_(std::move(where)) {
        if (!obj_.is_object()) {
            fail(ErrorKind::Parse, where_ + ": expected an object");
        }
        const std::set<std::string> known(allowed.begin(), allowed.end());
        for (const auto& item : obj_.items()) {
            if (known.count(item.key()) == 0) {
                fail(ErrorKind::Parse, where_ + ": unknown key '" + item.key() + "'");
            }
        }
    }

    bool has(const char* key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }
    std::string path(const char* key) const { return where_ + "." + key; }

    const json& at(const char* key) const {
        if (!has(key)) {
            fail(ErrorKind::Parse, path(key) + ": required");
        }
        return obj_.at(key);
    }

    double number(const char* key) const { return as_number(at(key), path(key)); }
    double number(const char* key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    Index integer(const char* key, Index fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const json& v = obj_.at(key);
        if (!v.is_number_integer()) {
            fail(ErrorKind::Parse, path(key) + ": expected an integer");
        }
        return v.get<Index>();
    }

    std::string text(const char* key) const {
        const json& v = at(key);
        if (!v.is_string()) {
            fail(ErrorKind::Parse, path(key) + ": expected a string");
        }
        return v.get<std::string>();
    }
    std::string text(const char* key, const std::string& fallback) const {
        return has(key) ? text(key) : fallback;
    }

    bool flag(const char* key, bool fallback) const {
        if (!has(key)) {
            return fallback;
        }
        if (!obj_.at(key).is_boolean()) {
            fail(ErrorKind::Parse, path(key) + ": expected true or false");
        }
        return obj_.at(key).get<bool>();
    }

    Complex complex(const char* key) const { return as_complex(at(key), path(key)); }

    const json& array(const char* key) const {
        const json& v = at(key);
        if (!v.is_array()) {
            fail(ErrorKind::Parse, path(key) + ": expected an array");
        }
        return v;
    }

    static double as_number(const json& v, const std::string& where) {
        if (!v.is_number()) {
            fail(ErrorKind::Parse, where + ": expected a number");
        }
        return v.get<double>();
    }

    // A number, or [re, im].
    static Complex as_complex(const json& v, const std::string& where) {
        if (v.is_number()) {
            return {v.get<double>(), 0.0};
        }
        if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
            return {v[0].get<double>(), v[1].get<double>()};
        }
        fail(ErrorKind::Parse, where + ": expected a number or [re, im]");
    }

private:
    const json& obj_;
    std::string where_;
};

void require(bool ok, const std::string& what) {
    if (!ok) {
        fail(ErrorKind::Validation, what);
    }
}

struct BuiltSource {
    std::optional<SourceEnsemble> ensemble;
    /// One entry per member when every member is pure, else empty.
    std::vector<StateVector> pure;
    /// Superposition inputs, kept for the closure check.
    std::vector<StateVector> superposed;
    std::vector<Complex> amplitudes;

    const SourceEnsemble& get() const { return *ensemble; }
};

BuiltSource build_source(const json& node, const std::string& where, FockSpace space);

StateVector build_pure(const json& node, const std::string& where, FockSpace space) {
    BuiltSource s = build_source(node, where, space);
    if (s.pure.size() != 1) {
        fail(ErrorKind::Validation, where + ": expected a single pure state");
    }
    return s.pure.front();
}

BuiltSource from_pure(std::vector<StateVector> states, std::vector<double> weights,
                      const std::string& label) {
    std::vector<SourceEnsemble::Member> members;
    for (std::size_t i = 0; i < states.size(); ++i) {
        members.push_back({weights[i], DensityMatrix::pure(states[i])});
    }
    BuiltSource out;
    out.ensemble.emplace(std::move(members), label);
    out.pure = std::move(states);
    return out;
}

Parity parse_parity(const std::string& text, const std::string& where) {
    if (text == "even") return Parity::Even;
    if (text == "odd") return Parity::Odd;
    fail(ErrorKind::Validation, where + ": parity must be \"even\" or \"odd\"");
}

BuiltSource build_source(const json& node, const std::string& where, FockSpace space) {
    if (!node.is_object()) {
        fail(ErrorKind::Parse, where + ": expected an object");
    }
    if (!node.contains("type") || !node.at("type").is_string()) {
        fail(ErrorKind::Parse, where + ".type: required string");
    }
    const std::string type = node.at("type").get<std::string>();

    if (type == "coherent") {
        Fields f(node, where, {"type", "alpha_mag", "phases"});
        const double mag = f.number("alpha_mag");
        require(mag >= 0.0 && std::isfinite(mag), f.path("alpha_mag") + ": must be >= 0");
        std::vector<double> phases{0.0};
        if (f.has("phases")) {
            phases.clear();
            const json& arr = f.array("phases");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                phases.push_back(Fields::as_number(arr[i], f.path("phases")));
            }
            require(!phases.empty(), f.path("phases") + ": must not be empty");
        }
        std::vector<StateVector> states;
        for (double phi : phases) {
            states.push_back(coherent_state(std::polar(mag, phi), space));
        }
        return from_pure(std::move(states),
                         std::vector<double>(phases.size(), 1.0 / static_cast<double>(phases.size())),
                         "coherent");
    }
    if (type == "cat") {
        Fields f(node, where, {"type", "alpha", "parity"});
        const Parity parity = parse_parity(f.text("parity", "even"), f.path("parity"));
        return from_pure({cat_state(f.complex("alpha"), parity, space)}, {1.0}, "cat");
    }
    if (type == "cat_ensemble") {
        // The even/odd cat pair realizing the +-alpha coherent mixture.
        Fields f(node, where, {"type", "alpha"});
        const Complex alpha = f.complex("alpha");
        require(std::abs(alpha) > 0.0, f.path("alpha") + ": must be nonzero");
        return from_pure({cat_state(alpha, Parity::Even, space), cat_state(alpha, Parity::Odd, space)},
                         {cat_mixture_weight(alpha, Parity::Even), cat_mixture_weight(alpha, Parity::Odd)},
                         "cat_ensemble");
    }
    if (type == "fock") {
        Fields f(node, where, {"type", "n"});
        const Index n = f.integer("n", 0);
        require(n >= 0 && n <= space.n_max(), f.path("n") + ": must lie in [0, n_max]");
        return from_pure({fock_state(n, space)}, {1.0}, "fock");
    }
    if (type == "thermal") {
        Fields f(node, where, {"type", "n_bar"});
        const double n_bar = f.number("n_bar");
        require(n_bar >= 0.0 && std::isfinite(n_bar), f.path("n_bar") + ": must be >= 0");
        BuiltSource out;
        out.ensemble.emplace(SourceEnsemble::single(thermal_state(n_bar, space), "thermal"));
        return out;
    }
    if (type == "mixture") {
        Fields f(node, where, {"type", "members", "weights"});
        const json& arr = f.array("members");
        require(!arr.empty(), f.path("members") + ": must not be empty");
        std::vector<double> weights(arr.size(), 1.0 / static_cast<double>(arr.size()));
        if (f.has("weights")) {
            const json& w = f.array("weights");
            require(w.size() == arr.size(), f.path("weights") + ": one weight per member");
            for (std::size_t i = 0; i < w.size(); ++i) {
                weights[i] = Fields::as_number(w[i], f.path("weights"));
            }
        }
        std::vector<SourceEnsemble::Member> members;
        std::vector<StateVector> pure;
        bool all_pure = true;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string sub = f.path("members") + "[" + std::to_string(i) + "]";
            BuiltSource m = build_source(arr[i], sub, space);
            if (m.pure.size() == 1) {
                pure.push_back(m.pure.front());
            } else {
                all_pure = false;
            }
            members.push_back({weights[i], mix(m.get())});
        }
        BuiltSource out;
        try {
            out.ensemble.emplace(std::move(members), "mixture");
        } catch (const Error& e) {
            fail(ErrorKind::Validation, where + ": " + e.what());
        }
        if (all_pure) {
            out.pure = std::move(pure);
        }
        return out;
    }
    if (type == "superposition") {
        Fields f(node, where, {"type", "states", "amplitudes"});
        const json& states = f.array("states");
        const json& amps = f.array("amplitudes");
        require(states.size() == amps.size(), where + ": one amplitude per state");
        BuiltSource out;
        for (std::size_t i = 0; i < states.size(); ++i) {
            const std::string idx = "[" + std::to_string(i) + "]";
            out.superposed.push_back(build_pure(states[i], f.path("states") + idx, space));
            out.amplitudes.push_back(Fields::as_complex(amps[i], f.path("amplitudes") + idx));
        }
        try {
            out.ensemble.emplace(superposition_ensemble(out.superposed, out.amplitudes));
        } catch (const Error& e) {
            fail(e.kind() == ErrorKind::InvalidArgument ? ErrorKind::Validation : e.kind(),
                 where + ": " + e.what());
        }
        for (const auto& m : out.ensemble->members()) {
            // Members are pure by construction; recover their vectors.
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.state.matrix());
            out.pure.push_back(StateVector::normalized(es.eigenvectors().col(es.eigenvalues().size() - 1)));
        }
        return out;
    }
    fail(ErrorKind::Validation, where + ".type: unknown source type '" + type + "'");
}

struct OutputSpec {
    std::string channel;
    std::filesystem::path path;
};

struct Plan {
    std::string name;
    Command command = Command::Fidelity;
    HamiltonianSpec hamiltonian;
    TimeGrid grid;
    bool t_end_given = false;
    std::optional<BuiltSource> source;
    double tolerance = kDefaultDehTolerance;
    std::optional<double> tau;
    WignerConfig wigner;
    std::vector<DensityMatrix> perturbations;
    double eta = kDefaultSmoothing;
    double alpha_mag = 0.0;
    double quarter_periods = 2.0;
    Index substeps = 64;
    bool report_mixture = false;
    std::vector<OutputSpec> outputs;
};

std::vector<std::string> channels_for(Command c) {
    switch (c) {
    case Command::Fidelity: return {"fidelity"};
    case Command::Entropy: return {"entropy", "summary"};
    case Command::Wigner: return {"wigner", "summary"};
    case Command::Verify: return {"report"};
    case Command::Robustness: return {"report"};
    case Command::Semiclassical: return {"report", "populations"};
    }
    return {};
}

std::vector<OutputSpec> default_outputs(Command c) {
    switch (c) {
    case Command::Fidelity: return {{"fidelity", "fidelity.csv"}};
    case Command::Entropy: return {{"entropy", "entropy.csv"}, {"summary", "summary.json"}};
    case Command::Wigner: return {{"wigner", "wigner.csv"}, {"summary", "summary.json"}};
    case Command::Verify: return {{"report", "report.json"}};
    case Command::Robustness: return {{"report", "report.json"}};
    case Command::Semiclassical: return {{"report", "report.json"}, {"populations", "populations.csv"}};
    }
    return {};
}

Plan resolve(const json& doc) {
    Fields top(doc, "config",
               {"name", "command", "hamiltonian", "source", "grid", "outputs", "n_max", "tolerance",
                "tau", "wigner", "robustness", "semiclassical", "substeps", "report_mixture"});
    Plan plan;
    plan.name = top.text("name", "scenario");
    plan.command = command_from_string(top.text("command"));

    if (top.has("hamiltonian")) {
        Fields h(top.at("hamiltonian"), "config.hamiltonian",
                 {"kind", "omega0", "omega_c", "g", "drive_amplitude", "phase"});
        HamiltonianSpec& s = plan.hamiltonian;
        s.kind = hamiltonian_kind_from_string(h.text("kind", "jc_rwa"));
        s.omega0 = h.number("omega0", s.omega0);
        s.omega_c = h.number("omega_c", s.omega_c);
        s.g = h.number("g", s.g);
        s.drive_amplitude = h.number("drive_amplitude", s.drive_amplitude);
        s.phase = h.number("phase", s.phase);
    }
    plan.substeps = top.integer("substeps", plan.substeps);
    require(plan.substeps >= 1, "config.substeps: must be at least 1");

    if (top.has("semiclassical")) {
        Fields sc(top.at("semiclassical"), "config.semiclassical", {"alpha_mag", "quarter_periods"});
        plan.alpha_mag = sc.number("alpha_mag", 0.0);
        plan.quarter_periods = sc.number("quarter_periods", plan.quarter_periods);
    }
    if (plan.command == Command::Semiclassical) {
        require(plan.alpha_mag > 0.0 && std::isfinite(plan.alpha_mag),
                "config.semiclassical.alpha_mag: must be positive");
        require(plan.quarter_periods > 0.0 && std::isfinite(plan.quarter_periods),
                "config.semiclassical.quarter_periods: must be positive");
        // Default truncation follows the Poisson support of the source.
        plan.hamiltonian.n_max = static_cast<Index>(
            std::ceil(plan.alpha_mag * plan.alpha_mag + 10.0 * plan.alpha_mag));
    }
    plan.hamiltonian.n_max = top.integer("n_max", plan.hamiltonian.n_max);
    plan.hamiltonian.validate();

    if (top.has("grid")) {
        Fields g(top.at("grid"), "config.grid", {"t_start", "t_end", "samples"});
        plan.grid.t_start = g.number("t_start", plan.grid.t_start);
        plan.t_end_given = g.has("t_end");
        plan.grid.t_end = g.number("t_end", plan.grid.t_end);
        plan.grid.samples = g.integer("samples", plan.grid.samples);
    }
    if (plan.command == Command::Semiclassical && !plan.t_end_given) {
        plan.grid.t_start = 0.0;
        plan.grid.t_end = plan.quarter_periods * std::numbers::pi /
                          (2.0 * plan.hamiltonian.g * plan.alpha_mag);
    }
    plan.grid.validate();

    plan.tolerance = top.number("tolerance", plan.tolerance);
    require(plan.tolerance >= 0.0 && plan.tolerance < 1.0, "config.tolerance: must lie in [0, 1)");
    if (top.has("tau")) {
        plan.tau = top.number("tau");
        require(std::isfinite(*plan.tau), "config.tau: must be finite");
    }
    plan.report_mixture = top.flag("report_mixture", false);

    if (top.has("wigner")) {
        Fields w(top.at("wigner"), "config.wigner", {"q_min", "q_max", "p_min", "p_max", "points"});
        WignerConfig& c = plan.wigner;
        c.q_min = w.number("q_min", c.q_min);
        c.q_max = w.number("q_max", c.q_max);
        c.p_min = w.number("p_min", c.p_min);
        c.p_max = w.number("p_max", c.p_max);
        c.points = w.integer("points", c.points);
    }
    plan.wigner.validate();

    const FockSpace space = plan.hamiltonian.field_space();
    const bool needs_source = plan.command != Command::Semiclassical &&
                              !(plan.command == Command::Fidelity &&
                                plan.hamiltonian.kind == HamiltonianKind::Semiclassical);
    if (needs_source) {
        require(plan.hamiltonian.has_field(),
                std::string("command '") + to_string(plan.command) + "' needs a field Hamiltonian");
        plan.source = build_source(top.at("source"), "config.source", space);
    }

    if (top.has("robustness")) {
        Fields r(top.at("robustness"), "config.robustness", {"perturbations", "eta"});
        plan.eta = r.number("eta", plan.eta);
        require(plan.eta >= 0.0 && plan.eta <= 1.0, "config.robustness.eta: must lie in [0, 1]");
        if (r.has("perturbations")) {
            const json& arr = r.array("perturbations");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string sub = "config.robustness.perturbations[" + std::to_string(i) + "]";
                plan.perturbations.push_back(mix(build_source(arr[i], sub, space).get()));
            }
        }
    }
    if (plan.command == Command::Robustness) {
        require(!plan.perturbations.empty(), "config.robustness.perturbations: required");
    }

    const auto allowed = channels_for(plan.command);
    if (top.has("outputs")) {
        const json& arr = top.array("outputs");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            Fields o(arr[i], "config.outputs[" + std::to_string(i) + "]", {"channel", "path"});
            OutputSpec spec{o.text("channel"), o.text("path")};
            require(std::find(allowed.begin(), allowed.end(), spec.channel) != allowed.end(),
                    o.path("channel") + ": '" + spec.channel + "' is not produced by '" +
                        to_string(plan.command) + "'");
            require(!spec.path.empty(), o.path("path") + ": must not be empty");
            plan.outputs.push_back(std::move(spec));
        }
    } else {
        plan.outputs = default_outputs(plan.command);
    }
    return plan;
}

// ---- serialization ----

ordered_json number_or_null(double v) {
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

std::string dump(const ordered_json& j) {
    return j.dump(2) + "\n";
}

std::string csv(const std::vector<std::string>& header,
                const std::vector<const std::vector<double>*>& columns) {
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        out += (c ? "," : "") + header[c];
    }
    out += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front()->size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) {
                out += ',';
            }
            out += detail::format_number((*columns[c])[r]);
        }
        out += '\n';
    }
    return out;
}

void put_report(ordered_json& j, const DehReport& r) {
    j["tau"] = r.tau;
    j["tolerance"] = r.tolerance;
    j["achieved"] = r.achieved;
    j["min_fidelity"] = r.min_fidelity;
    j["mixture_fidelity"] = r.mixture_fidelity;
    j["weights"] = r.weights;
    j["per_member_fidelity"] = r.per_member_fidelity;
}

using Products = std::map<std::string, std::string>;

const DensityMatrix& harvester_ground() {
    static const DensityMatrix g = DensityMatrix::pure(qubit::ground());
    return g;
}

Products run_fidelity(const Plan& plan) {
    std::vector<std::string> header{"t"};
    std::vector<std::vector<double>> data;
    const std::vector<double> times = plan.grid.times();
    if (plan.hamiltonian.kind == HamiltonianKind::Semiclassical) {
        TimeSeries ts = propagate_semiclassical(harvester_ground(), plan.hamiltonian, plan.grid,
                                                plan.substeps);
        header.push_back("fidelity_0");
        data.push_back(ts.channel("fidelity"));
    } else {
        const BipartitePropagator propagator(plan.hamiltonian);
        const PropagationOptions opts{false, true};
        const auto& members = plan.source->get().members();
        for (std::size_t i = 0; i < members.size(); ++i) {
            header.push_back("fidelity_" + std::to_string(i));
            data.push_back(propagator.propagate(harvester_ground(), members[i].state, plan.grid, opts)
                               .channel("fidelity"));
        }
        if (plan.report_mixture) {
            header.push_back("fidelity_mix");
            data.push_back(propagator.propagate(harvester_ground(), mix(plan.source->get()), plan.grid, opts)
                               .channel("fidelity"));
        }
    }
    std::vector<const std::vector<double>*> cols{&times};
    for (const auto& d : data) {
        cols.push_back(&d);
    }
    return {{"fidelity", csv(header, cols)}};
}

Products run_entropy(const Plan& plan) {
    const EntropyCycle cycle = entropy_cycle(mix(plan.source->get()), plan.hamiltonian, plan.grid);
    const std::vector<double> times = plan.grid.times();
    Products out;
    out["entropy"] = csv({"t", "S_A", "S_B", "S_AB"},
                         {&times, &cycle.series.channel("S_A"), &cycle.series.channel("S_B"),
                          &cycle.series.channel("S_AB")});
    ordered_json j;
    j["name"] = plan.name;
    j["command"] = "entropy";
    j["s_ab_initial"] = cycle.series.channel("S_AB").front();
    j["s_ab_drift"] = cycle.s_ab_drift;
    j["min_s_a"] = cycle.min_s_a;
    j["min_s_a_time"] = cycle.min_s_a_time;
    out["summary"] = dump(j);
    return out;
}

Products run_wigner(const Plan& plan) {
    const DensityMatrix rho = mix(plan.source->get());
    const WignerGrid grid = wigner(rho, plan.wigner);
    std::vector<double> q, p, w;
    const auto n = grid.q_axis.size() * grid.p_axis.size();
    q.reserve(n);
    p.reserve(n);
    w.reserve(n);
    for (std::size_t i = 0; i < grid.q_axis.size(); ++i) {
        for (std::size_t j = 0; j < grid.p_axis.size(); ++j) {
            q.push_back(grid.q_axis[i]);
            p.push_back(grid.p_axis[j]);
            w.push_back(grid.values(static_cast<Index>(i), static_cast<Index>(j)));
        }
    }
    Products out;
    out["wigner"] = csv({"q", "p", "W"}, {&q, &p, &w});
    const BoundReport purity = purity_identity_check(rho, grid);
    ordered_json j;
    j["name"] = plan.name;
    j["command"] = "wigner";
    j["w_origin"] = wigner_at(rho, 0.0, 0.0);
    j["normalization"] = grid.normalization();
    j["l2_norm"] = grid.l2_norm();
    j["purity_from_grid"] = purity.lhs;
    j["purity"] = purity.rhs;
    j["purity_identity_holds"] = purity.holds;
    out["summary"] = dump(j);
    return out;
}

Products run_verify(const Plan& plan) {
    const SourceEnsemble& ens = plan.source->get();
    double tau = 0.0;
    std::string tau_source = "configured";
    if (plan.tau) {
        tau = *plan.tau;
    } else {
        tau = find_optimal_tau(ens, plan.hamiltonian, plan.grid).tau;
        tau_source = "optimized";
    }
    const DehReport r = verify_deh(ens, plan.hamiltonian, tau, plan.tolerance);
    ordered_json j;
    j["name"] = plan.name;
    j["command"] = "verify";
    j["source"] = ens.label();
    j["tau_source"] = tau_source;
    put_report(j, r);
    if (!plan.source->superposed.empty()) {
        const SuperpositionReport s = superposition_closure_check(
            plan.source->superposed, plan.source->amplitudes, plan.hamiltonian, tau, plan.tolerance);
        ordered_json sj;
        sj["reconstruction_error"] = s.reconstruction_error;
        sj["exactness_checked"] = s.exactness_checked;
        ordered_json base;
        put_report(base, s.base);
        sj["base"] = std::move(base);
        j["superposition"] = sj;
    }
    return {{"report", dump(j)}};
}

Products run_robustness(const Plan& plan) {
    const auto entries = robustness_sweep(mix(plan.source->get()), plan.perturbations,
                                          plan.hamiltonian, plan.grid, plan.wigner, plan.eta);
    ordered_json j;
    j["name"] = plan.name;
    j["command"] = "robustness";
    j["eta"] = plan.eta;
    j["t_end"] = plan.grid.t_end;
    ordered_json arr = ordered_json::array();
    for (const auto& e : entries) {
        ordered_json x;
        x["hs_in"] = e.hs_in;
        x["hs_out_max"] = e.hs_out_max;
        x["rel_entropy_in"] = number_or_null(e.rel_entropy_in);
        x["rel_entropy_out_max"] = number_or_null(e.rel_entropy_out_max);
        x["dpi_holds"] = e.rel_entropy_out_max <= e.rel_entropy_in + kBoundSlack;
        x["wigner_lhs"] = e.wigner_lhs;
        x["wigner_rhs"] = e.wigner_rhs;
        x["wigner_holds"] = e.wigner_holds;
        x["joint_hs_drift"] = e.joint_hs_drift;
        arr.push_back(std::move(x));
    }
    j["entries"] = std::move(arr);
    return {{"report", dump(j)}};
}

Products run_semiclassical(const Plan& plan) {
    HamiltonianSpec spec = plan.hamiltonian;
    const SemiclassicalComparison c =
        semiclassical_limit_compare(plan.alpha_mag, spec, plan.grid, plan.quarter_periods);
    ordered_json j;
    j["name"] = plan.name;
    j["command"] = "semiclassical";
    j["alpha_mag"] = c.alpha_mag;
    j["n_max"] = spec.n_max;
    j["window_end"] = plan.grid.t_end;
    j["max_deviation"] = c.max_deviation;
    j["max_deviation_time"] = c.max_deviation_time;
    j["collapse_time_estimate"] = c.collapse_time_estimate;
    Products out;
    out["report"] = dump(j);
    out["populations"] = csv({"t", "P_e_jcm", "P_e_semiclassical"},
                             {&c.times, &c.jcm_population, &c.semiclassical_population});
    return out;
}

}  // namespace

Scenario Scenario::parse(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Parse, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        fail(ErrorKind::Parse, "config must be a JSON object");
    }
    return Scenario(std::move(doc));
}

Scenario Scenario::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::Io, "cannot read config " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void Scenario::apply_patch(std::string_view patch) {
    json p;
    try {
        p = json::parse(patch);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Parse, std::string("override is not valid JSON: ") + e.what());
    }
    merge_patch(p);
}

void Scenario::merge_patch(const json& patch) {
    doc_.merge_patch(patch);
    if (!doc_.is_object()) {
        fail(ErrorKind::Parse, "config must be a JSON object");
    }
}

std::string Scenario::to_json() const {
    return doc_.dump(2);
}

void Scenario::validate() const {
    (void)resolve(doc_);
}

std::vector<std::filesystem::path> Scenario::run(const std::filesystem::path& out_dir) const {
    const Plan plan = resolve(doc_);
    Products products;
    switch (plan.command) {
    case Command::Fidelity: products = run_fidelity(plan); break;
    case Command::Entropy: products = run_entropy(plan); break;
    case Command::Wigner: products = run_wigner(plan); break;
    case Command::Verify: products = run_verify(plan); break;
    case Command::Robustness: products = run_robustness(plan); break;
    case Command::Semiclassical: products = run_semiclassical(plan); break;
    }
    std::vector<std::filesystem::path> written;
    for (const auto& o : plan.outputs) {
        const std::filesystem::path target = o.path.is_absolute() ? o.path : out_dir / o.path;
        detail::write_atomic(target, products.at(o.channel));
        written.push_back(target);
    }
    return written;
}

}  // namespace dehsim
