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

#ifndef NBC_OPTICS_HPP
#define NBC_OPTICS_HPP

#include "nbc/contextuality.hpp"
#include "nbc/fock.hpp"
#include "nbc/rational.hpp"

#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nbc {

inline constexpr double kBalancedMixing = std::numbers::pi / 4;

/// Quantum beam splitter between paths 1 and 2 for one polarization.
///
/// On span{|n_1=N>, |n_2=N>} (all photons in that polarization) it acts as
///   |n_1=N> -> cos(t) |n_1=N> + sin(t) |n_2=N>
///   |n_2=N> -> cos(t) |n_2=N> - sin(t) |n_1=N>
/// and as the identity on the orthogonal complement. t = pi/4 is the balanced
/// device, |n_k=N> -> (|n_k=N> + (-1)^l |n_l=N>) / sqrt(2).
struct Qbs {
  Polarization pol = Polarization::Minus;
  double mixing = kBalancedMixing;
  friend bool operator==(const Qbs&, const Qbs&) = default;
};

/// Collective mixer between the two polarizations of one path, same matrix
/// as Qbs with - in the role of path 1. At pi/4 it is the effective action of
/// the HWP + QBS polarization interferometer; other angles form the
/// programmable rotation stage used for S_z(theta).
struct PolarizationQbs {
  int path = 1;
  double mixing = kBalancedMixing;
  friend bool operator==(const PolarizationQbs&, const PolarizationQbs&) = default;
};

/// Half-wave plate: swaps the two polarizations on one path.
struct Hwp {
  int path = 1;
  friend bool operator==(const Hwp&, const Hwp&) = default;
};

/// Mirror pair: swaps paths 1 and 2 for both polarizations.
struct Mirror {
  friend bool operator==(const Mirror&, const Mirror&) = default;
};

/// Polarizing beam splitter on one path: the two polarizations of that path
/// end in distinct detection channels. Acts as the identity on the state.
struct Pbs {
  int path = 1;
  friend bool operator==(const Pbs&, const Pbs&) = default;
};

using CircuitElement = std::variant<Qbs, PolarizationQbs, Hwp, Mirror, Pbs>;

std::string describe(const CircuitElement& e);

enum class PathAnalysis { Jz, Jx };

/// Polarization analysis: S_z(theta) with theta = angle * pi, or S_x.
struct PolarizationAnalysis {
  enum class Kind { Sz, Sx };
  Kind kind = Kind::Sz;
  Rational angle_over_pi{0};

  static PolarizationAnalysis sz(Rational angle_over_pi = Rational(0)) {
    return {Kind::Sz, angle_over_pi};
  }
  static PolarizationAnalysis sx() { return {Kind::Sx, Rational(0)}; }

  /// theta for Sz, pi/2 for Sx.
  double effective_angle() const;
  friend bool operator==(const PolarizationAnalysis&, const PolarizationAnalysis&) = default;
};

/// One co-measured pair: a path observable and a polarization observable.
struct Setting {
  PathAnalysis path = PathAnalysis::Jz;
  PolarizationAnalysis pol;
  friend bool operator==(const Setting&, const Setting&) = default;
};

/// "Jz x Sz(pi/4)" style label; angles print as rational multiples of pi.
std::string label(const Setting& s);
std::string format_angle(Rational angle_over_pi);

/// The four settings of the collective CHSH test, in the order
/// (A,B), (A,B'), (A',B), (A',B') with A = Jz, A' = Jx, B = Sz(pi/4), B' = Sz(-pi/4).
std::vector<Setting> chsh_settings();

struct Circuit {
  int photons = 1;
  Mode prepared{};  // all photons start in this mode
  std::vector<CircuitElement> elements;
  /// Index of the first element of the measurement stage; equals
  /// elements.size() when the circuit has no setting.
  std::size_t measurement_begin = 0;
  std::optional<Setting> setting;
};

struct Channel {
  std::string label;
  std::vector<Mode> modes;
};

/// Detector channels covering all four output modes.
///
/// A path without a PBS ends in one counter; a path with a PBS in two.
/// Counters are labelled M_k with k the path before any mirror (mirrors
/// exchange the physical paths), with -H / -V suffixes behind a PBS.
struct DetectionLayout {
  std::vector<Channel> channels;
};

// Element unitaries on SECTOR(n).
LinearOperator qbs_unitary(Polarization pol, int n, const BasisPtr& basis,
                           double mixing = kBalancedMixing);
LinearOperator polarization_qbs_unitary(int path, int n, const BasisPtr& basis,
                                        double mixing = kBalancedMixing);
LinearOperator hwp_unitary(int path, const BasisPtr& basis);
LinearOperator mirror_unitary(const BasisPtr& basis);
LinearOperator element_unitary(const CircuitElement& e, int n, const BasisPtr& basis);

BasisPtr circuit_basis(const Circuit& c);

/// Product of the element unitaries in [begin, end), applied left to right.
LinearOperator stage_unitary(const Circuit& c, std::size_t begin, std::size_t end);

DetectionLayout detection_layout(const Circuit& c);

/// |n_1-=N>, QBS on polarization -, HWP on path 2.
Circuit build_noon_prep(int n);

/// Elements realizing one setting: an optional second QBS pair (Jx), the
/// mirrors, the polarization stage (rotation by -theta/2 for Sz(theta), the
/// balanced polarization interferometer for Sx) and a PBS on both paths.
std::vector<CircuitElement> measurement_stage(const Setting& s);

/// prep followed by the measurement stage of s.
Circuit with_measurement(const Circuit& prep, const Setting& s);

Circuit measurement_setting_circuit(const Setting& s, int n);

StateVector prepared_state(const Circuit& c);

/// State entering the measurement stage.
StateVector pre_measurement_state(const Circuit& c);

StateVector run_circuit(const Circuit& c);

using Pattern = std::vector<int>;  // photons per detector channel

struct OutcomeDistribution {
  std::vector<std::string> channels;
  std::vector<std::pair<Pattern, double>> outcomes;  // lexicographic by pattern

  double total() const;
  /// Every outcome with probability above tol puts all n photons in one channel.
  bool one_counter(int n, double tol = 1e-12) const;
  double probability(const Pattern& p) const;
};

OutcomeDistribution detection_distribution(const StateVector& s, const DetectionLayout& layout);

/// (2 J, 2 S) for the setting, order-n collective observables on SECTOR(n).
std::pair<LinearOperator, LinearOperator> setting_observables(const Setting& s, int n,
                                                              const BasisPtr& basis);

/// Joint eigenvalues attached to a detector outcome.
struct OutcomeValue {
  double a = 0.0;
  double b = 0.0;
};

/// Outcome -> (a, b) table for the one-counter patterns of a setting circuit,
/// obtained by pulling each detected Fock state back through the measurement
/// stage and reading off its eigenvalues under the setting observables.
struct AssignmentTable {
  std::vector<std::string> channels;
  std::vector<std::optional<OutcomeValue>> all_in_channel;

  std::optional<OutcomeValue> value_of(const Pattern& p) const;
};

AssignmentTable derive_assignment(const Circuit& setting_circuit);

/// Detection distribution pushed through an assignment table.
std::vector<JointOutcome> assigned_distribution(const OutcomeDistribution& d,
                                                const AssignmentTable& t);

}  // namespace nbc

#endif  // NBC_OPTICS_HPP
