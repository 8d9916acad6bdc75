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

#ifndef NBC_SPIN_HPP
#define NBC_SPIN_HPP

#include "nbc/boson_algebra.hpp"
#include "nbc/fock.hpp"
#include "nbc/rational.hpp"

#include <optional>

namespace nbc {

enum class Axis { X, Y, Z };

/// Path observables (J) pair the two paths at fixed polarization; polarization
/// observables (S) pair the two polarizations on a fixed path.
enum class DegreeOfFreedom { Path, Polarization };

/// Schwinger-type spin built from a_l^dagger a_k.
///
///   path:         J_x = 1/2 sum_a (a_1a^+ a_2a + a_2a^+ a_1a)
///                 J_y = i/2 sum_a (a_2a^+ a_1a - a_1a^+ a_2a)
///                 J_z = 1/2 sum_a (n_1a - n_2a)
///   polarization: same with path 1 -> polarization -, path 2 -> polarization +.
///
/// The result is Hermitian and conserves the total boson number.
LinearOperator single_spin(Axis axis, DegreeOfFreedom dof, const BasisPtr& basis);

/// The collective analogue of single_spin with a -> A of the given order.
/// On SECTOR(N) with order N the spectrum is within {-1/2, 0, 1/2}.
LinearOperator collective_spin(Axis axis, DegreeOfFreedom dof, MultibosonOrder order,
                               const BasisPtr& basis);

/// cos(theta) S_z + sin(theta) S_x, single-boson (no order) or collective.
LinearOperator rotated_sz(double theta, std::optional<MultibosonOrder> order,
                          const BasisPtr& basis);

/// Same rotation in the path degree of freedom: cos(phi) J_z + sin(phi) J_x.
LinearOperator rotated_jz(double phi, std::optional<MultibosonOrder> order,
                          const BasisPtr& basis);

inline LinearOperator rescale(const LinearOperator& op, double factor) { return factor * op; }

/// Declarative form of one observable.
struct ObservableSpec {
  Axis axis = Axis::Z;
  DegreeOfFreedom dof = DegreeOfFreedom::Path;
  bool collective = false;
  int order = 1;        // used when collective
  double theta = 0.0;   // rotation towards x, only for Z
  Rational scale{1};
};

LinearOperator build_observable(const ObservableSpec& spec, const BasisPtr& basis);

}  // namespace nbc

#endif  // NBC_SPIN_HPP
