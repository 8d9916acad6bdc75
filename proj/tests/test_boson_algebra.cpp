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

#include "nbc/boson_algebra.hpp"

#include "support/dense_oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace nbc {
namespace {

const Mode k1m = make_mode(1, Polarization::Minus);
const Mode k2m = make_mode(2, Polarization::Minus);
const Mode k1p = make_mode(1, Polarization::Plus);
const Mode k2p = make_mode(2, Polarization::Plus);

Complex entry(const LinearOperator& op, const Occupation& row, const Occupation& col) {
  const auto& b = op.basis();
  return op.dense()(static_cast<Eigen::Index>(b.require_index(row)),
                    static_cast<Eigen::Index>(b.require_index(col)));
}

TEST(Ladder, HandMatrixElements) {
  const auto b = enumerate_basis(BasisPolicy::cutoff_per_mode(4));
  const auto a = annihilation(k2m, b);
  const auto ad = creation(k2m, b);
  EXPECT_NEAR(std::abs(entry(a, {1, 2, 0, 0}, {1, 3, 0, 0}) - std::sqrt(3.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(entry(ad, {0, 4, 2, 1}, {0, 3, 2, 1}) - 2.0), 0.0, 1e-15);
  EXPECT_EQ(a.number_change(), -1);
  EXPECT_EQ(ad.number_change(), 1);
  EXPECT_EQ(max_abs_diff(adjoint(a), ad), 0.0);
}

TEST(Ladder, NumberChangingOnSectorThrows) {
  const auto s = enumerate_basis(BasisPolicy::sector(3));
  EXPECT_THROW(annihilation(k1m, s), std::invalid_argument);
  EXPECT_THROW(multiboson_creation(k1p, MultibosonOrder(2), s), std::invalid_argument);
  EXPECT_NO_THROW(number(k1m, s));
}

TEST(Ladder, SingleBosonCcrInsideCutoff) {
  const int c = 4;
  const auto b = enumerate_basis(BasisPolicy::cutoff_per_mode(c));
  const auto guard = enumerate_basis(BasisPolicy::cutoff_per_mode(c - 1));
  for (Mode m : kAllModes) {
    const auto comm = restrict_to(commutator(annihilation(m, b), creation(m, b)), guard);
    EXPECT_LT(max_abs_diff(comm, LinearOperator::identity(guard)), 1e-12);
  }
}

TEST(Multiboson, OrderMustBePositive) {
  EXPECT_THROW(MultibosonOrder(0), std::invalid_argument);
  EXPECT_EQ(floor_div(7, MultibosonOrder(3)), 2);
}

TEST(Multiboson, HandMatrixElements) {
  const auto b = enumerate_basis(BasisPolicy::cutoff_per_mode(7));
  const MultibosonOrder two(2);
  // A|5> = sqrt(floor(5/2)) |3>, A^dagger|5> = sqrt(floor(5/2)+1) |7>.
  EXPECT_NEAR(std::abs(entry(multiboson_annihilation(k1p, two, b), {0, 0, 3, 1}, {0, 0, 5, 1}) -
                       std::sqrt(2.0)),
              0.0, 1e-15);
  EXPECT_NEAR(std::abs(entry(multiboson_creation(k1p, two, b), {0, 0, 7, 1}, {0, 0, 5, 1}) -
                       std::sqrt(3.0)),
              0.0, 1e-15);
  // Fewer than N bosons: annihilated.
  const auto a3 = multiboson_annihilation(k2p, MultibosonOrder(3), b);
  EXPECT_EQ(entry(a3, {0, 0, 0, 0}, {0, 0, 0, 2}), Complex(0));
  EXPECT_NEAR(std::abs(entry(a3, {0, 0, 0, 0}, {0, 0, 0, 3}) - 1.0), 0.0, 1e-15);
}

TEST(Multiboson, NormalizerRoutesAgree) {
  for (int order = 1; order <= 8; ++order) {
    for (int n = 0; n <= 40; ++n) {
      const MultibosonOrder q(order);
      const double fast = normalizer_f(n, q);
      const double exact = normalizer_f_exact(n, q);
      EXPECT_NEAR(fast, exact, 1e-13 * exact) << "N=" << order << " n=" << n;
    }
  }
  // F_1(n) = 1/sqrt(n+1) * sqrt(n+1) = 1.
  EXPECT_NEAR(normalizer_f_exact(5, MultibosonOrder(1)), 1.0, 1e-15);
  // F_2(0) = sqrt(1 * 0!/2!) = 1/sqrt(2).
  EXPECT_NEAR(normalizer_f_exact(0, MultibosonOrder(2)), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Multiboson, MatchesOracleOnCutoff) {
  for (int order = 1; order <= 3; ++order) {
    const int c = 3 * order;
    const auto b = enumerate_basis(BasisPolicy::cutoff_per_mode(c));
    const auto ref = oracle::cutoff(c);
    for (Mode m : kAllModes) {
      const int slot = static_cast<int>(m.index());
      EXPECT_LT(oracle::diff(multiboson_annihilation(m, MultibosonOrder(order), b), ref,
                             oracle::lowering(ref, slot, order)),
                1e-14);
      EXPECT_LT(oracle::diff(multiboson_creation(m, MultibosonOrder(order), b), ref,
                             oracle::raising(ref, slot, order)),
                1e-14);
    }
  }
}

TEST(Multiboson, CompositionalRouteAgrees) {
  for (int order = 1; order <= 4; ++order) {
    const MultibosonOrder q(order);
    const auto b = enumerate_basis(BasisPolicy::cutoff_per_mode(3 * order));
    for (Mode m : {k1m, k2p}) {
      EXPECT_LT(max_abs_diff(multiboson_annihilation(m, q, b),
                             multiboson_annihilation_compositional(m, q, b)),
                1e-12);
      EXPECT_LT(max_abs_diff(multiboson_creation(m, q, b),
                             multiboson_creation_compositional(m, q, b)),
                1e-12);
    }
  }
}

TEST(Multiboson, CcrHoldsOnGuardBandOnly) {
  const int order = 2;
  const int c = 6;
  const MultibosonOrder q(order);
  const auto b = enumerate_basis(BasisPolicy::cutoff_per_mode(c));
  const auto guard = enumerate_basis(BasisPolicy::cutoff_per_mode(c - order));
  for (Mode k : kAllModes) {
    for (Mode l : kAllModes) {
      const auto comm =
          commutator(multiboson_annihilation(k, q, b), multiboson_creation(l, q, b));
      const auto expected = k == l ? LinearOperator::identity(guard) : LinearOperator::zero(guard);
      EXPECT_LT(max_abs_diff(restrict_to(comm, guard), expected), 1e-12);
    }
  }
  // At the boundary A^dagger truncates, so [A, A^dagger] = 1 - (floor(C/N)+1) there.
  const auto comm = commutator(multiboson_annihilation(k1m, q, b), multiboson_creation(k1m, q, b));
  EXPECT_NEAR(std::abs(entry(comm, {6, 0, 0, 0}, {6, 0, 0, 0}) - Complex(-3.0)), 0.0, 1e-12);
}

TEST(Multiboson, FloorNumberIsAdaggerAExactly) {
  for (int order = 1; order <= 6; ++order) {
    const MultibosonOrder q(order);
    const auto s = enumerate_basis(BasisPolicy::sector(order));
    for (Mode m : kAllModes) {
      EXPECT_EQ(max_abs_diff(floor_number(m, q, s), multiboson_transfer(m, m, q, s)), 0.0);
    }
    const auto f = floor_number(k1m, q, s);
    EXPECT_EQ(entry(f, all_in(k1m, order), all_in(k1m, order)), Complex(1));
  }
}

TEST(Multiboson, TransferOnSectorMatchesOracle) {
  for (int order = 1; order <= 4; ++order) {
    const auto s = enumerate_basis(BasisPolicy::sector(order + 1));
    const auto ref = oracle::sector(order + 1);
    for (Mode to : kAllModes) {
      for (Mode from : kAllModes) {
        EXPECT_LT(oracle::diff(multiboson_transfer(to, from, MultibosonOrder(order), s), ref,
                               oracle::hop(ref, static_cast<int>(to.index()),
                                           static_cast<int>(from.index()), order)),
                  1e-14);
      }
    }
  }
}

TEST(Multiboson, CompanionBasis) {
  const auto s = enumerate_basis(BasisPolicy::sector(3));
  const auto c = companion_basis(s, 3);
  EXPECT_EQ(c->policy().kind, BasisPolicy::Kind::SectorStack);
  EXPECT_TRUE(c->contains({6, 0, 0, 0}));
  EXPECT_TRUE(c->contains({1, 1, 1, 0}));
  EXPECT_FALSE(c->contains({0, 0, 0, 0}));
  EXPECT_TRUE(companion_basis(s, -3)->contains({0, 0, 0, 0}));
  const auto cut = enumerate_basis(BasisPolicy::cutoff_per_mode(2));
  EXPECT_EQ(companion_basis(cut, 2).get(), cut.get());
}

}  // namespace
}  // namespace nbc
