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

#include "nbc/optics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace nbc {
namespace {

using P = Polarization;
const double kR = 1.0 / std::numbers::sqrt2;

double unitarity_defect(const LinearOperator& u) {
  return max_abs_diff(adjoint(u) * u, LinearOperator::identity(u.basis_ptr()));
}

TEST(Elements, QbsActionWithSign) {
  const int n = 3;
  const auto b = enumerate_basis(BasisPolicy::sector(n));
  const auto u = qbs_unitary(P::Minus, n, b);
  const auto from1 = nbc::apply(u, fock_state(b, all_in(Mode{1, P::Minus}, n)));
  EXPECT_NEAR(from1.amplitude(all_in(Mode{1, P::Minus}, n)).real(), kR, 1e-15);
  EXPECT_NEAR(from1.amplitude(all_in(Mode{2, P::Minus}, n)).real(), kR, 1e-15);
  const auto from2 = nbc::apply(u, fock_state(b, all_in(Mode{2, P::Minus}, n)));
  EXPECT_NEAR(from2.amplitude(all_in(Mode{2, P::Minus}, n)).real(), kR, 1e-15);
  EXPECT_NEAR(from2.amplitude(all_in(Mode{1, P::Minus}, n)).real(), -kR, 1e-15);
  // Identity on states with photons shared between modes.
  const Occupation mixed{1, 2, 0, 0};
  EXPECT_NEAR(nbc::apply(u, fock_state(b, mixed)).amplitude(mixed).real(), 1.0, 0.0);
}

TEST(Elements, AllUnitary) {
  for (int n = 1; n <= 4; ++n) {
    const auto b = enumerate_basis(BasisPolicy::sector(n));
    for (const CircuitElement& e :
         {CircuitElement{Qbs{P::Minus}}, CircuitElement{Qbs{P::Plus, 0.3}},
          CircuitElement{PolarizationQbs{1}}, CircuitElement{PolarizationQbs{2, -0.7}},
          CircuitElement{Hwp{1}}, CircuitElement{Hwp{2}}, CircuitElement{Mirror{}},
          CircuitElement{Pbs{1}}}) {
      EXPECT_LT(unitarity_defect(element_unitary(e, n, b)), 1e-14) << describe(e);
    }
  }
}

TEST(Elements, RequireSectorBasis) {
  const auto b = enumerate_basis(BasisPolicy::sector(2));
  EXPECT_THROW(qbs_unitary(P::Minus, 3, b), std::invalid_argument);
  EXPECT_THROW(qbs_unitary(P::Minus, 2, enumerate_basis(BasisPolicy::cutoff_per_mode(2))),
               std::invalid_argument);
}

TEST(Circuit, NoonPreparation) {
  for (int n = 1; n <= 6; ++n) {
    const Circuit c = build_noon_prep(n);
    const auto out = run_circuit(c);
    EXPECT_NEAR(out.amplitude(all_in(Mode{1, P::Minus}, n)).real(), kR, 1e-15);
    EXPECT_NEAR(out.amplitude(all_in(Mode{2, P::Plus}, n)).real(), kR, 1e-15);
    EXPECT_NEAR(out.norm(), 1.0, 1e-15);
  }
}

TEST(Circuit, StateAfterSecondQbs) {
  const int n = 4;
  Circuit c = build_noon_prep(n);
  c.elements.push_back(Qbs{P::Minus});
  c.elements.push_back(Qbs{P::Plus});
  c.measurement_begin = c.elements.size();
  const auto out = run_circuit(c);
  // (Psi_2^- - Psi_1^+)/sqrt 2 with Psi_2^- = (|1-> + |2->)/sqrt 2, Psi_1^+ = (|1+> - |2+>)/sqrt 2.
  EXPECT_NEAR(out.amplitude(all_in(Mode{1, P::Minus}, n)).real(), 0.5, 1e-15);
  EXPECT_NEAR(out.amplitude(all_in(Mode{2, P::Minus}, n)).real(), 0.5, 1e-15);
  EXPECT_NEAR(out.amplitude(all_in(Mode{1, P::Plus}, n)).real(), -0.5, 1e-15);
  EXPECT_NEAR(out.amplitude(all_in(Mode{2, P::Plus}, n)).real(), 0.5, 1e-15);
}

TEST(Layout, MirrorsRelabelAndPbsSplits) {
  const Circuit bare = build_noon_prep(2);
  const auto plain = detection_layout(bare);
  ASSERT_EQ(plain.channels.size(), 2u);
  EXPECT_EQ(plain.channels[0].label, "M1");
  EXPECT_EQ(plain.channels[0].modes.size(), 2u);

  const Circuit c = measurement_setting_circuit(chsh_settings()[0], 2);
  const auto layout = detection_layout(c);
  ASSERT_EQ(layout.channels.size(), 4u);
  EXPECT_EQ(layout.channels[0].label, "M1-H");
  EXPECT_EQ(layout.channels[3].label, "M2-V");
  // After the mirror, light from path 1 travels in physical path 2.
  EXPECT_EQ(layout.channels[0].modes.front(), (Mode{2, P::Minus}));
}

TEST(Settings, ChshOrderAndLabels) {
  const auto s = chsh_settings();
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(label(s[0]), "Jz x Sz(pi/4)");
  EXPECT_EQ(label(s[1]), "Jz x Sz(-pi/4)");
  EXPECT_EQ(label(s[2]), "Jx x Sz(pi/4)");
  EXPECT_EQ(label(s[3]), "Jx x Sz(-pi/4)");
  EXPECT_EQ(label(Setting{PathAnalysis::Jx, PolarizationAnalysis::sx()}), "Jx x Sx");
  EXPECT_EQ(format_angle(Rational(3, 4)), "3pi/4");
  EXPECT_EQ(format_angle(Rational(-1)), "-pi");
}

TEST(Assignment, JzSzTable) {
  const Circuit c = measurement_setting_circuit(Setting{PathAnalysis::Jz, PolarizationAnalysis::sz()}, 3);
  const auto table = derive_assignment(c);
  ASSERT_EQ(table.channels.size(), 4u);
  const std::vector<std::pair<std::string, std::pair<double, double>>> expected = {
      {"M1-H", {1, 1}}, {"M1-V", {1, -1}}, {"M2-H", {-1, 1}}, {"M2-V", {-1, -1}}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(table.channels[i], expected[i].first);
    ASSERT_TRUE(table.all_in_channel[i].has_value());
    EXPECT_EQ(table.all_in_channel[i]->a, expected[i].second.first);
    EXPECT_EQ(table.all_in_channel[i]->b, expected[i].second.second);
  }
  const auto d = detection_distribution(run_circuit(c), detection_layout(c));
  EXPECT_NEAR(d.probability({3, 0, 0, 0}), 0.5, 1e-15);
  EXPECT_NEAR(d.probability({0, 0, 0, 3}), 0.5, 1e-15);
  EXPECT_TRUE(d.one_counter(3));
  EXPECT_FALSE(table.value_of({1, 2, 0, 0}).has_value());
}

TEST(Assignment, JxPlusEigenstateReachesM2H) {
  const int n = 2;
  const Circuit c = measurement_setting_circuit(Setting{PathAnalysis::Jx, PolarizationAnalysis::sz()}, n);
  const auto table = derive_assignment(c);
  for (std::size_t i = 0; i < table.channels.size(); ++i) {
    if (table.channels[i] == "M2-H") {
      EXPECT_EQ(table.all_in_channel[i]->a, 1.0);
      EXPECT_EQ(table.all_in_channel[i]->b, 1.0);
    }
  }
}

TEST(Equivalence, DetectionMatchesSpectralDistribution) {
  std::vector<Setting> settings = chsh_settings();
  settings.push_back(Setting{PathAnalysis::Jz, PolarizationAnalysis::sx()});
  settings.push_back(Setting{PathAnalysis::Jx, PolarizationAnalysis::sx()});
  settings.push_back(Setting{PathAnalysis::Jx, PolarizationAnalysis::sz(Rational(1, 3))});
  for (int n = 1; n <= 5; ++n) {
    for (const auto& s : settings) {
      const Circuit c = measurement_setting_circuit(s, n);
      const auto d = detection_distribution(run_circuit(c), detection_layout(c));
      EXPECT_NEAR(d.total(), 1.0, 1e-14);
      EXPECT_TRUE(d.one_counter(n));
      const auto [a, b] = setting_observables(s, n, circuit_basis(c));
      const double tv = total_variation(assigned_distribution(d, derive_assignment(c)),
                                        joint_spectral_distribution(pre_measurement_state(c), a, b));
      EXPECT_LT(tv, 1e-12) << label(s) << " N=" << n;
    }
  }
}

TEST(Stage, UnitaryComposesLeftToRight) {
  const Circuit c = measurement_setting_circuit(chsh_settings()[2], 2);
  const auto whole = stage_unitary(c, 0, c.elements.size());
  const auto split = stage_unitary(c, c.measurement_begin, c.elements.size()) *
                     stage_unitary(c, 0, c.measurement_begin);
  EXPECT_LT(max_abs_diff(whole, split), 1e-15);
  EXPECT_THROW(stage_unitary(c, 3, 1), std::invalid_argument);
}

}  // namespace
}  // namespace nbc
