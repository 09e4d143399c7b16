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

#include "dehsim/dehsim.h"

#include <cstring>
#include <new>
#include <string>

#include "dehsim/dynamics.hpp"
#include "dehsim/error.hpp"
#include "dehsim/fock.hpp"
#include "dehsim/measures.hpp"
#include "dehsim/phase_space.hpp"
#include "dehsim/scenario.hpp"

struct dehsim_state {
    dehsim::DensityMatrix rho;
};

struct dehsim_series {
    std::vector<double> times;
    dehsim::TimeSeries series;
};

struct dehsim_wigner_grid {
    dehsim::WignerGrid grid;
};

struct dehsim_scenario {
    dehsim::Scenario scenario;
};

namespace {

thread_local std::string last_error;

dehsim_status status_for(dehsim::ErrorKind kind) {
    using dehsim::ErrorKind;
    switch (kind) {
    case ErrorKind::Parse: return DEHSIM_ERR_PARSE;
    case ErrorKind::Validation:
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NonHermitian:
    case ErrorKind::DegenerateState: return DEHSIM_ERR_VALIDATION;
    case ErrorKind::Truncation:
    case ErrorKind::Convergence:
    case ErrorKind::InvariantViolation: return DEHSIM_ERR_PHYSICS;
    case ErrorKind::Io: return DEHSIM_ERR_IO;
    }
    return DEHSIM_ERR_INTERNAL;
}

dehsim_status set_error(dehsim_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

template <typename Fn>
dehsim_status guarded(Fn&& fn) {
    try {
        fn();
        last_error.clear();
        return DEHSIM_OK;
    } catch (const dehsim::Error& e) {
        return set_error(status_for(e.kind()), std::string(dehsim::to_string(e.kind())) + ": " + e.what());
    } catch (const std::bad_alloc&) {
        return set_error(DEHSIM_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(DEHSIM_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(DEHSIM_ERR_INTERNAL, "unknown error");
    }
}

#define DEHSIM_REQUIRE(cond, what)                                            \
    do {                                                                      \
        if (!(cond)) {                                                        \
            return set_error(DEHSIM_ERR_INVALID_ARGUMENT, what);              \
        }                                                                     \
    } while (0)

dehsim_status make_state(dehsim::DensityMatrix rho, dehsim_state** out) {
    *out = new dehsim_state{std::move(rho)};
    return DEHSIM_OK;
}

}  // namespace

extern "C" {

const char* dehsim_version(void) {
    return "1.0.0";
}

const char* dehsim_last_error(void) {
    return last_error.c_str();
}

const char* dehsim_status_name(dehsim_status status) {
    switch (status) {
    case DEHSIM_OK: return "ok";
    case DEHSIM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DEHSIM_ERR_PARSE: return "parse error";
    case DEHSIM_ERR_VALIDATION: return "validation error";
    case DEHSIM_ERR_PHYSICS: return "physics error";
    case DEHSIM_ERR_IO: return "i/o error";
    case DEHSIM_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

dehsim_status dehsim_state_fock(int n_max, int n, dehsim_state** out) {
    DEHSIM_REQUIRE(out, "out is NULL");
    return guarded([&] {
        make_state(dehsim::DensityMatrix::pure(dehsim::fock_state(n, dehsim::FockSpace(n_max))), out);
    });
}

dehsim_status dehsim_state_coherent(int n_max, double alpha_re, double alpha_im, dehsim_state** out) {
    DEHSIM_REQUIRE(out, "out is NULL");
    return guarded([&] {
        make_state(dehsim::DensityMatrix::pure(dehsim::coherent_state(
                       {alpha_re, alpha_im}, dehsim::FockSpace(n_max))),
                   out);
    });
}

dehsim_status dehsim_state_cat(int n_max, double alpha_re, double alpha_im, int odd,
                               dehsim_state** out) {
    DEHSIM_REQUIRE(out, "out is NULL");
    return guarded([&] {
        const auto parity = odd ? dehsim::Parity::Odd : dehsim::Parity::Even;
        make_state(dehsim::DensityMatrix::pure(
                       dehsim::cat_state({alpha_re, alpha_im}, parity, dehsim::FockSpace(n_max))),
                   out);
    });
}

dehsim_status dehsim_state_thermal(int n_max, double n_bar, dehsim_state** out) {
    DEHSIM_REQUIRE(out, "out is NULL");
    return guarded([&] { make_state(dehsim::thermal_state(n_bar, dehsim::FockSpace(n_max)), out); });
}

dehsim_status dehsim_state_from_matrix(size_t dim, const double* re_im, dehsim_state** out) {
    DEHSIM_REQUIRE(out && re_im, "NULL pointer argument");
    DEHSIM_REQUIRE(dim > 0, "dimension must be positive");
    return guarded([&] {
        const auto d = static_cast<dehsim::Index>(dim);
        dehsim::ComplexMatrix m(d, d);
        for (dehsim::Index i = 0; i < d; ++i) {
            for (dehsim::Index j = 0; j < d; ++j) {
                const auto k = static_cast<std::size_t>(2 * (i * d + j));
                m(i, j) = {re_im[k], re_im[k + 1]};
            }
        }
        make_state(dehsim::DensityMatrix::from_matrix(m), out);
    });
}

dehsim_status dehsim_state_mix(const dehsim_state* a, const dehsim_state* b, double weight_a,
                               dehsim_state** out) {
    DEHSIM_REQUIRE(a && b && out, "NULL pointer argument");
    return guarded([&] {
        const dehsim::SourceEnsemble ens({{weight_a, a->rho}, {1.0 - weight_a, b->rho}}, "mix");
        make_state(dehsim::mix(ens), out);
    });
}

size_t dehsim_state_dim(const dehsim_state* state) {
    return state ? static_cast<size_t>(state->rho.dim()) : 0;
}

dehsim_status dehsim_state_purity(const dehsim_state* state, double* out) {
    DEHSIM_REQUIRE(state && out, "NULL pointer argument");
    *out = state->rho.purity();
    return DEHSIM_OK;
}

dehsim_status dehsim_state_entropy(const dehsim_state* state, double* out) {
    DEHSIM_REQUIRE(state && out, "NULL pointer argument");
    return guarded([&] { *out = dehsim::von_neumann_entropy(state->rho); });
}

void dehsim_state_free(dehsim_state* state) {
    delete state;
}

dehsim_status dehsim_propagate(const dehsim_state* source, const char* kind, double omega0,
                               double omega_c, double g, double t_end, size_t samples,
                               dehsim_series** out) {
    DEHSIM_REQUIRE(source && kind && out, "NULL pointer argument");
    return guarded([&] {
        dehsim::HamiltonianSpec spec;
        spec.kind = dehsim::hamiltonian_kind_from_string(kind);
        spec.omega0 = omega0;
        spec.omega_c = omega_c;
        spec.g = g;
        spec.n_max = source->rho.dim() - 1;
        const dehsim::TimeGrid grid{0.0, t_end, static_cast<dehsim::Index>(samples)};
        auto series = dehsim::propagate_bipartite(
            dehsim::DensityMatrix::pure(dehsim::qubit::ground()), source->rho, spec, grid);
        *out = new dehsim_series{grid.times(), std::move(series)};
    });
}

size_t dehsim_series_length(const dehsim_series* series) {
    return series ? series->times.size() : 0;
}

dehsim_status dehsim_series_channel(const dehsim_series* series, const char* name, double* buffer,
                                    size_t length) {
    DEHSIM_REQUIRE(series && name && buffer, "NULL pointer argument");
    DEHSIM_REQUIRE(length == series->times.size(), "buffer length must equal the series length");
    return guarded([&] {
        const std::vector<double>& src =
            std::strcmp(name, "t") == 0 ? series->times : series->series.channel(name);
        std::copy(src.begin(), src.end(), buffer);
    });
}

void dehsim_series_free(dehsim_series* series) {
    delete series;
}

dehsim_status dehsim_wigner_at(const dehsim_state* state, double q, double p, double* out) {
    DEHSIM_REQUIRE(state && out, "NULL pointer argument");
    return guarded([&] { *out = dehsim::wigner_at(state->rho, q, p); });
}

dehsim_status dehsim_wigner_compute(const dehsim_state* state, double q_min, double q_max,
                                    double p_min, double p_max, size_t points,
                                    dehsim_wigner_grid** out) {
    DEHSIM_REQUIRE(state && out, "NULL pointer argument");
    return guarded([&] {
        const dehsim::WignerConfig cfg{q_min, q_max, p_min, p_max, static_cast<dehsim::Index>(points)};
        *out = new dehsim_wigner_grid{dehsim::wigner(state->rho, cfg)};
    });
}

size_t dehsim_wigner_points(const dehsim_wigner_grid* grid) {
    return grid ? grid->grid.q_axis.size() : 0;
}

dehsim_status dehsim_wigner_values(const dehsim_wigner_grid* grid, double* buffer, size_t length) {
    DEHSIM_REQUIRE(grid && buffer, "NULL pointer argument");
    const auto& v = grid->grid.values;
    DEHSIM_REQUIRE(length == static_cast<size_t>(v.size()), "buffer length must be points*points");
    for (dehsim::Index i = 0; i < v.rows(); ++i) {
        for (dehsim::Index j = 0; j < v.cols(); ++j) {
            buffer[i * v.cols() + j] = v(i, j);
        }
    }
    return DEHSIM_OK;
}

double dehsim_wigner_normalization(const dehsim_wigner_grid* grid) {
    return grid ? grid->grid.normalization() : 0.0;
}

void dehsim_wigner_free(dehsim_wigner_grid* grid) {
    delete grid;
}

dehsim_status dehsim_scenario_parse(const char* json, dehsim_scenario** out) {
    DEHSIM_REQUIRE(json && out, "NULL pointer argument");
    return guarded([&] { *out = new dehsim_scenario{dehsim::Scenario::parse(json)}; });
}

dehsim_status dehsim_scenario_load(const char* path, dehsim_scenario** out) {
    DEHSIM_REQUIRE(path && out, "NULL pointer argument");
    return guarded([&] { *out = new dehsim_scenario{dehsim::Scenario::load(path)}; });
}

dehsim_status dehsim_scenario_patch(dehsim_scenario* scenario, const char* json_patch) {
    DEHSIM_REQUIRE(scenario && json_patch, "NULL pointer argument");
    return guarded([&] { scenario->scenario.apply_patch(std::string_view(json_patch)); });
}

dehsim_status dehsim_scenario_validate(const dehsim_scenario* scenario) {
    DEHSIM_REQUIRE(scenario, "scenario is NULL");
    return guarded([&] { scenario->scenario.validate(); });
}

dehsim_status dehsim_scenario_run(const dehsim_scenario* scenario, const char* out_dir) {
    DEHSIM_REQUIRE(scenario && out_dir, "NULL pointer argument");
    return guarded([&] { scenario->scenario.run(out_dir); });
}

dehsim_status dehsim_scenario_to_json(const dehsim_scenario* scenario, char** out) {
    DEHSIM_REQUIRE(scenario && out, "NULL pointer argument");
    return guarded([&] {
        const std::string text = scenario->scenario.to_json();
        char* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out = buf;
    });
}

void dehsim_scenario_free(dehsim_scenario* scenario) {
    delete scenario;
}

void dehsim_string_free(char* text) {
    delete[] text;
}

}  // extern "C"
