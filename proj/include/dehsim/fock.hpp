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

#pragma once

// Field states on a truncated Fock space and weighted ensembles of them.

#include <span>
#include <string>
#include <vector>

#include "dehsim/linalg.hpp"

namespace dehsim {

/// Fock levels 0..n_max.
class FockSpace {
public:
    explicit FockSpace(Index n_max);

    Index n_max() const { return n_max_; }
    Index dim() const { return n_max_ + 1; }

    friend bool operator==(const FockSpace&, const FockSpace&) = default;

private:
    Index n_max_;
};

enum class Parity { Even, Odd };

/// Largest tail weight sum_{n > n_max} |c_n|^2 accepted by state constructors.
inline constexpr double kConstructorLeakageLimit = 1e-8;
/// Top-of-ladder population above which propagation aborts.
inline constexpr double kRunnerLeakageLimit = 1e-6;

/// a|n> = sqrt(n)|n-1>, truncated.
ComplexMatrix annihilation(FockSpace space);
ComplexMatrix creation(FockSpace space);
ComplexMatrix number_operator(FockSpace space);

StateVector fock_state(Index n, FockSpace space);

/// Poisson tail weight sum_{n > n_max} e^{-|alpha|^2} |alpha|^{2n} / n!.
double coherent_leakage(Complex alpha, FockSpace space);

/// c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), renormalized after truncation.
/// Throws TruncationError when coherent_leakage exceeds 1e-8.
StateVector coherent_state(Complex alpha, FockSpace space);

/// 1 / sqrt(2 (1 +- e^{-2|alpha|^2}))
double cat_normalization(Complex alpha, Parity parity);
/// (1 +- e^{-2|alpha|^2}) / 2, the weight of each cat in the +-alpha coherent mixture.
double cat_mixture_weight(Complex alpha, Parity parity);

/// (|alpha> +- |-alpha>) normalized exactly (renormalized after truncation).
/// The odd cat at alpha = 0 is the zero vector and raises DegenerateState.
StateVector cat_state(Complex alpha, Parity parity, FockSpace space);

/// Mean occupation 1 / (e^{beta omega} - 1) of a mode at inverse temperature beta.
double thermal_occupation(double beta_omega);

/// Geometric populations p_n = n_bar^n / (1 + n_bar)^{n+1}, renormalized.
/// Throws TruncationError when (n_bar / (1 + n_bar))^{n_max+1} > 1e-8.
DensityMatrix thermal_state(double n_bar, FockSpace space);

/// Population of the two highest levels of `space` held by `state`. The state
/// may live on a larger space than `space`, in which case every level at or
/// above n_max - 1 counts.
double truncation_check(const DensityMatrix& state, FockSpace space);

/// Weighted list of field states realizing a mixed source.
class SourceEnsemble {
public:
    struct Member {
        double weight;
        DensityMatrix state;
    };

    /// Weights must be non-negative and sum to 1 within 1e-12; all members
    /// must share one dimension.
    SourceEnsemble(std::vector<Member> members, std::string label);

    static SourceEnsemble single(DensityMatrix state, std::string label);
    static SourceEnsemble uniform(std::vector<DensityMatrix> states, std::string label);

    const std::vector<Member>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    Index dim() const { return members_.front().state.dim(); }
    const std::string& label() const { return label_; }

private:
    std::vector<Member> members_;
    std::string label_;
};

/// sum_i p_i rho_i
DensityMatrix mix(const SourceEnsemble& ensemble);

inline constexpr std::size_t kMaxSuperpositionStates = 12;

/// Sign-pattern ensemble {|psi_r>} with |psi_r> proportional to
/// sum_k (-1)^{r_k} a_k |phi_k>. Patterns related by a global sign give the
/// same state, so only patterns with r_1 = 0 are kept, each with weight
/// N_r / 2^{m-1}. The mixture reproduces sum_k |a_k|^2 |phi_k><phi_k| for any
/// (not necessarily orthogonal) inputs. Members with N_r <= 1e-14 are dropped.
SourceEnsemble superposition_ensemble(std::span<const StateVector> states,
                                      std::span<const Complex> amplitudes,
                                      std::string label = "superposition");

}  // namespace dehsim
