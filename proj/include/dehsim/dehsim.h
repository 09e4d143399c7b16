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

#ifndef DEHSIM_DEHSIM_H
#define DEHSIM_DEHSIM_H

/* C interface to the dehsim library. Every function returns a status code;
 * on failure dehsim_last_error() describes the most recent error raised on
 * the calling thread. Objects are opaque and released with their _free
 * function (passing NULL is allowed). */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(DEHSIM_BUILDING_LIBRARY)
#    define DEHSIM_API __declspec(dllexport)
#  else
#    define DEHSIM_API __declspec(dllimport)
#  endif
#else
#  define DEHSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dehsim_status {
    DEHSIM_OK = 0,
    DEHSIM_ERR_INVALID_ARGUMENT = 1,
    DEHSIM_ERR_PARSE = 2,
    DEHSIM_ERR_VALIDATION = 3,
    DEHSIM_ERR_PHYSICS = 4,
    DEHSIM_ERR_IO = 5,
    DEHSIM_ERR_INTERNAL = 6
} dehsim_status;

typedef struct dehsim_state dehsim_state;
typedef struct dehsim_series dehsim_series;
typedef struct dehsim_wigner_grid dehsim_wigner_grid;
typedef struct dehsim_scenario dehsim_scenario;

DEHSIM_API const char* dehsim_version(void);
/* Empty string when no error has been recorded on this thread. */
DEHSIM_API const char* dehsim_last_error(void);
DEHSIM_API const char* dehsim_status_name(dehsim_status status);

/* ---- field states on Fock levels 0..n_max ---- */
DEHSIM_API dehsim_status dehsim_state_fock(int n_max, int n, dehsim_state** out);
DEHSIM_API dehsim_status dehsim_state_coherent(int n_max, double alpha_re, double alpha_im,
                                               dehsim_state** out);
/* odd != 0 selects the odd cat. */
DEHSIM_API dehsim_status dehsim_state_cat(int n_max, double alpha_re, double alpha_im, int odd,
                                          dehsim_state** out);
DEHSIM_API dehsim_status dehsim_state_thermal(int n_max, double n_bar, dehsim_state** out);
/* Row-major dim*dim interleaved (re, im) pairs; validated as a density matrix. */
DEHSIM_API dehsim_status dehsim_state_from_matrix(size_t dim, const double* re_im,
                                                  dehsim_state** out);
DEHSIM_API dehsim_status dehsim_state_mix(const dehsim_state* a, const dehsim_state* b,
                                          double weight_a, dehsim_state** out);
DEHSIM_API size_t dehsim_state_dim(const dehsim_state* state);
DEHSIM_API dehsim_status dehsim_state_purity(const dehsim_state* state, double* out);
DEHSIM_API dehsim_status dehsim_state_entropy(const dehsim_state* state, double* out);
DEHSIM_API void dehsim_state_free(dehsim_state* state);

/* ---- propagation: qubit starts in |g>, field in `source` ---- */
/* kind: "jc_rwa" or "rabi_full"; the source dimension fixes n_max. */
DEHSIM_API dehsim_status dehsim_propagate(const dehsim_state* source, const char* kind,
                                          double omega0, double omega_c, double g,
                                          double t_end, size_t samples, dehsim_series** out);
DEHSIM_API size_t dehsim_series_length(const dehsim_series* series);
/* Channels: "t", "fidelity", "P_e", "S_A", "S_B", "S_AB". */
DEHSIM_API dehsim_status dehsim_series_channel(const dehsim_series* series, const char* name,
                                               double* buffer, size_t length);
DEHSIM_API void dehsim_series_free(dehsim_series* series);

/* ---- Wigner functions ---- */
DEHSIM_API dehsim_status dehsim_wigner_at(const dehsim_state* state, double q, double p,
                                          double* out);
DEHSIM_API dehsim_status dehsim_wigner_compute(const dehsim_state* state, double q_min,
                                               double q_max, double p_min, double p_max,
                                               size_t points, dehsim_wigner_grid** out);
DEHSIM_API size_t dehsim_wigner_points(const dehsim_wigner_grid* grid);
/* points*points values, row-major with q as the row index. */
DEHSIM_API dehsim_status dehsim_wigner_values(const dehsim_wigner_grid* grid, double* buffer,
                                              size_t length);
DEHSIM_API double dehsim_wigner_normalization(const dehsim_wigner_grid* grid);
DEHSIM_API void dehsim_wigner_free(dehsim_wigner_grid* grid);

/* ---- scenarios ---- */
DEHSIM_API dehsim_status dehsim_scenario_parse(const char* json, dehsim_scenario** out);
DEHSIM_API dehsim_status dehsim_scenario_load(const char* path, dehsim_scenario** out);
/* JSON merge patch; a null value deletes the key. */
DEHSIM_API dehsim_status dehsim_scenario_patch(dehsim_scenario* scenario, const char* json_patch);
DEHSIM_API dehsim_status dehsim_scenario_validate(const dehsim_scenario* scenario);
DEHSIM_API dehsim_status dehsim_scenario_run(const dehsim_scenario* scenario, const char* out_dir);
/* Caller releases the string with dehsim_string_free. */
DEHSIM_API dehsim_status dehsim_scenario_to_json(const dehsim_scenario* scenario, char** out);
DEHSIM_API void dehsim_scenario_free(dehsim_scenario* scenario);
DEHSIM_API void dehsim_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* DEHSIM_DEHSIM_H */
