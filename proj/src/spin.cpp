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

#include "nbc/spin.hpp"

#include <array>
#include <cmath>

namespace nbc {

namespace {

struct ModePair {
  Mode up;    // +1/2 under the z component
  Mode down;  // -1/2
};

std::array<ModePair, 2> pairs_for(DegreeOfFreedom dof) {
  using P = Polarization;
  if (dof == DegreeOfFreedom::Path) {
    return {ModePair{Mode{1, P::Minus}, Mode{2, P::Minus}},
            ModePair{Mode{1, P::Plus}, Mode{2, P::Plus}}};
  }
  return {ModePair{Mode{1, P::Minus}, Mode{1, P::Plus}},
          ModePair{Mode{2, P::Minus}, Mode{2, P::Plus}}};
}

// `hop(to, from)` returns the bilinear X_to^dagger X_from for the chosen ladder.
template <typename Hop>
LinearOperator schwinger(Axis axis, DegreeOfFreedom dof, const BasisPtr& basis, Hop&& hop) {
  LinearOperator acc = LinearOperator::zero(basis);
  for (const ModePair& p : pairs_for(dof)) {
    switch (axis) {
      case Axis::X:
        acc = acc + 0.5 * (hop(p.up, p.down) + hop(p.down, p.up));
        break;
      case Axis::Y:
        acc = acc + Complex(0.0, 0.5) * (hop(p.down, p.up) - hop(p.up, p.down));
        break;
      case Axis::Z:
        acc = acc + 0.5 * (hop(p.up, p.up) - hop(p.down, p.down));
        break;
    }
  }
  return acc.as_hermitian();
}

}  // namespace

LinearOperator single_spin(Axis axis, DegreeOfFreedom dof, const BasisPtr& basis) {
  return schwinger(axis, dof, basis,
                   [&](Mode to, Mode from) { return transfer(to, from, basis); });
}

LinearOperator collective_spin(Axis axis, DegreeOfFreedom dof, MultibosonOrder order,
                               const BasisPtr& basis) {
  return schwinger(axis, dof, basis, [&](Mode to, Mode from) {
    return multiboson_transfer(to, from, order, basis);
  });
}

namespace {

LinearOperator rotated(DegreeOfFreedom dof, double angle, std::optional<MultibosonOrder> order,
                       const BasisPtr& basis) {
  auto component = [&](Axis a) {
    return order ? collective_spin(a, dof, *order, basis) : single_spin(a, dof, basis);
  };
  return (std::cos(angle) * component(Axis::Z) + std::sin(angle) * component(Axis::X))
      .as_hermitian();
}

}  // namespace

LinearOperator rotated_sz(double theta, std::optional<MultibosonOrder> order,
                          const BasisPtr& basis) {
  return rotated(DegreeOfFreedom::Polarization, theta, order, basis);
}

LinearOperator rotated_jz(double phi, std::optional<MultibosonOrder> order,
                          const BasisPtr& basis) {
  return rotated(DegreeOfFreedom::Path, phi, order, basis);
}

LinearOperator build_observable(const ObservableSpec& spec, const BasisPtr& basis) {
  std::optional<MultibosonOrder> order;
  if (spec.collective) order = MultibosonOrder(spec.order);
  LinearOperator base = [&] {
    if (spec.axis == Axis::Z && spec.theta != 0.0) return rotated(spec.dof, spec.theta, order, basis);
    return order ? collective_spin(spec.axis, spec.dof, *order, basis)
                 : single_spin(spec.axis, spec.dof, basis);
  }();
  return rescale(base, spec.scale.value());
}

}  // namespace nbc
