// Copyright 2026 The nboson-contextuality Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NBC_CONTEXTUALITY_HPP
#define NBC_CONTEXTUALITY_HPP

#include "nbc/fock.hpp"
#include "nbc/spin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nbc {

inline constexpr double kCommuteTolerance = 1e-12;
inline constexpr double kImaginaryTolerance = 1e-12;
inline constexpr double kSpectrumTolerance = 1e-12;

/// (|n_1- = 1> + |n_2+ = 1>) / sqrt(2). The basis must hold both Fock states.
StateVector single_boson_state(const BasisPtr& basis);

/// (|n_1- = N> + |n_2+ = N>) / sqrt(2). Throws for N < 1.
StateVector noon_state(int n, const BasisPtr& basis);

/// <s|op|s> for a Hermitian op; throws std::domain_error when the imaginary
/// part is not negligible.
double expectation(const StateVector& s, const LinearOperator& op);

/// expectation(s, a*b) after checking [a, b] = 0.
double correlator(const StateVector& s, const LinearOperator& a, const LinearOperator& b);

/// Largest eigenvalue magnitude of a Hermitian operator (dense solve).
double spectral_radius(const LinearOperator& op);

/// The four observables of a CHSH test.
///
/// Construction verifies that all four are Hermitian, that {A, A'} commute
/// with {B, B'} and that every spectrum lies in [-1, 1].
class ObservableSet {
 public:
  ObservableSet(LinearOperator a, LinearOperator a_prime, LinearOperator b,
                LinearOperator b_prime);

  const LinearOperator& a() const { return a_; }
  const LinearOperator& a_prime() const { return a_prime_; }
  const LinearOperator& b() const { return b_; }
  const LinearOperator& b_prime() const { return b_prime_; }
  const BasisPtr& basis_ptr() const { return a_.basis_ptr(); }

 private:
  LinearOperator a_, a_prime_, b_, b_prime_;
};

enum class SetKind { SingleBoson, SingleBosonRescaled, Collective };

std::string to_string(SetKind k);

/// A = s J_z, A' = s J_x, B = s S_z(pi/4), B' = s S_z(-pi/4) on SECTOR(N).
///
/// SingleBoson uses s = 2 (a valid set only for N = 1), SingleBosonRescaled
/// s = 2/N, Collective the order-N observables with s = 2.
ObservableSet standard_observable_set(int n, SetKind kind);

struct Correlators {
  double ab = 0.0;
  double ab_prime = 0.0;
  double a_prime_b = 0.0;
  double a_prime_b_prime = 0.0;
};

/// |<AB> + <AB'> + <A'B> - <A'B'>|.
double chsh_value(const Correlators& c);

enum class Method { Exact, Sampled };

struct ChshReport {
  Correlators correlators;
  double e = 0.0;
  bool violated = false;
  Method method = Method::Exact;
  std::optional<Correlators> standard_errors;  // sampled only
  std::optional<double> e_standard_error;      // sampled only
};

ChshReport make_exact_report(const Correlators& c);

ChshReport chsh(const StateVector& s, const ObservableSet& set);

/// Independent dense route: every operator is materialized densely, spectra are
/// verified by diagonalization and E is formed as |<A(B+B')> + <A'(B-B')>|.
ChshReport oracle_chsh(const StateVector& s, const ObservableSet& set);

/// One joint outcome of a commuting pair with its Born probability.
struct JointOutcome {
  double a = 0.0;
  double b = 0.0;
  double probability = 0.0;
};

/// Distribution of joint eigenvalues (a, b) of commuting Hermitian a, b in
/// state s. Outcomes whose eigenvalues agree within 1e-9 are merged.
std::vector<JointOutcome> joint_spectral_distribution(const StateVector& s,
                                                      const LinearOperator& a,
                                                      const LinearOperator& b);

/// Total variation distance between two joint distributions, matching
/// outcomes whose eigenvalues agree within 1e-9.
double total_variation(const std::vector<JointOutcome>& p, const std::vector<JointOutcome>& q);

}  // namespace nbc

#endif  // NBC_CONTEXTUALITY_HPP
