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

#ifndef NBC_BOSON_ALGEBRA_HPP
#define NBC_BOSON_ALGEBRA_HPP

#include "nbc/fock.hpp"

namespace nbc {

/// Order N of the collective ladder operators; always >= 1.
class MultibosonOrder {
 public:
  explicit MultibosonOrder(int n);
  int value() const { return n_; }
  friend bool operator==(MultibosonOrder, MultibosonOrder) = default;

 private:
  int n_;
};

/// Integer part of n / order for n >= 0.
inline int floor_div(int n, MultibosonOrder order) { return n / order.value(); }

/// F_N(n) = sqrt( floor((n+N)/N) * n! / (n+N)! ), evaluated as a sum of logs.
double normalizer_f(int n, MultibosonOrder order);

/// Same value with the factorial ratio formed in exact integer arithmetic.
/// Slower; this is the cross-check route.
double normalizer_f_exact(int n, MultibosonOrder order);

// Single-boson ladder operators. Number-changing operators cannot live on a
// single SECTOR basis: use a CUTOFF basis or a sector stack. Images that
// leave the basis (the truncation boundary) are dropped.
LinearOperator annihilation(Mode m, const BasisPtr& basis);
LinearOperator creation(Mode m, const BasisPtr& basis);
LinearOperator number(Mode m, const BasisPtr& basis);

/// Total boson number, sum over the four modes.
LinearOperator total_number(const BasisPtr& basis);

/// A|n> = sqrt(floor(n/N)) |n-N>, built from its matrix elements.
LinearOperator multiboson_annihilation(Mode m, MultibosonOrder order, const BasisPtr& basis);

/// A^dagger|n> = sqrt(floor(n/N)+1) |n+N>, built from its matrix elements.
LinearOperator multiboson_creation(Mode m, MultibosonOrder order, const BasisPtr& basis);

/// F_N(n) a^N as a product of the normalizer diagonal and N annihilators.
LinearOperator multiboson_annihilation_compositional(Mode m, MultibosonOrder order,
                                                     const BasisPtr& basis);

/// (a^dagger)^N F_N(n), the adjoint of the compositional annihilator.
LinearOperator multiboson_creation_compositional(Mode m, MultibosonOrder order,
                                                 const BasisPtr& basis);

/// Diagonal F_N(n) on the mode, with the exact-integer route.
LinearOperator normalizer_operator(Mode m, MultibosonOrder order, const BasisPtr& basis);

/// Diagonal floor(n/N) on the mode.
LinearOperator floor_number(Mode m, MultibosonOrder order, const BasisPtr& basis);

/// Basis that additionally holds every sector reachable by shifting the
/// totals of `basis` by `shift`. CUTOFF bases are returned unchanged.
BasisPtr companion_basis(const BasisPtr& basis, int shift);

/// a_to^dagger a_from, composed on the companion stack and restricted back,
/// so it is exact on a SECTOR basis.
LinearOperator transfer(Mode to, Mode from, const BasisPtr& basis);

/// A_to^dagger A_from for the collective ladder operators of the given order.
LinearOperator multiboson_transfer(Mode to, Mode from, MultibosonOrder order,
                                   const BasisPtr& basis);

}  // namespace nbc

#endif  // NBC_BOSON_ALGEBRA_HPP
