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

#include <algorithm>
#include <cmath>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

namespace nbc {

namespace {

using P = Polarization;
using Terms = std::vector<std::pair<Occupation, Complex>>;

constexpr double kEigenResidualTolerance = 1e-10;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_sector(const FockBasis& basis, int n) {
  if (!(basis.policy() == BasisPolicy::sector(n))) {
    throw std::invalid_argument("optical elements act on SECTOR(" + std::to_string(n) +
                                "), got " + to_string(basis.policy()));
  }
}

// Rotation on span{|N in first>, |N in second>}, identity elsewhere.
LinearOperator two_level_mixer(Mode first, Mode second, int n, const BasisPtr& basis,
                               double mixing) {
  if (n < 1) throw std::invalid_argument("mixers need at least one photon");
  require_sector(*basis, n);
  const Occupation e1 = all_in(first, n);
  const Occupation e2 = all_in(second, n);
  const double c = std::cos(mixing);
  const double s = std::sin(mixing);
  return operator_from_action(basis, [&](const Occupation& occ) {
    if (occ == e1) return Terms{{e1, c}, {e2, s}};
    if (occ == e2) return Terms{{e2, c}, {e1, -s}};
    return Terms{{occ, 1.0}};
  });
}

LinearOperator permutation(const BasisPtr& basis, std::size_t i, std::size_t j) {
  return operator_from_action(basis, [&](const Occupation& occ) {
    Occupation t = occ;
    std::swap(t[i], t[j]);
    return Terms{{t, 1.0}};
  });
}

double snap(double x) {
  const double r = std::round(x);
  return std::abs(x - r) < 1e-9 ? r : x;
}

}  // namespace

std::string describe(const CircuitElement& e) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Qbs& q) {
                   os << "qbs pol=" << (q.pol == P::Minus ? "H" : "V") << " mixing=" << q.mixing;
                 },
                 [&](const PolarizationQbs& q) {
                   os << "pol-qbs path=" << q.path << " mixing=" << q.mixing;
                 },
                 [&](const Hwp& h) { os << "hwp path=" << h.path; },
                 [&](const Mirror&) { os << "mirror"; },
                 [&](const Pbs& b) { os << "pbs path=" << b.path; },
             },
             e);
  return os.str();
}

double PolarizationAnalysis::effective_angle() const {
  return kind == Kind::Sx ? std::numbers::pi / 2 : angle_over_pi.value() * std::numbers::pi;
}

std::string format_angle(Rational a) {
  if (a.num == 0) return "0";
  std::string out = a.num < 0 ? "-" : "";
  const std::int64_t mag = a.num < 0 ? -a.num : a.num;
  if (mag != 1) out += std::to_string(mag);
  out += "pi";
  if (a.den != 1) out += "/" + std::to_string(a.den);
  return out;
}

std::string label(const Setting& s) {
  std::string out = s.path == PathAnalysis::Jz ? "Jz x " : "Jx x ";
  if (s.pol.kind == PolarizationAnalysis::Kind::Sx) return out + "Sx";
  return out + "Sz(" + format_angle(s.pol.angle_over_pi) + ")";
}

std::vector<Setting> chsh_settings() {
  const auto plus = PolarizationAnalysis::sz(Rational(1, 4));
  const auto minus = PolarizationAnalysis::sz(Rational(-1, 4));
  return {Setting{PathAnalysis::Jz, plus}, Setting{PathAnalysis::Jz, minus},
          Setting{PathAnalysis::Jx, plus}, Setting{PathAnalysis::Jx, minus}};
}

LinearOperator qbs_unitary(Polarization pol, int n, const BasisPtr& basis, double mixing) {
  return two_level_mixer(Mode{1, pol}, Mode{2, pol}, n, basis, mixing);
}

LinearOperator polarization_qbs_unitary(int path, int n, const BasisPtr& basis, double mixing) {
  return two_level_mixer(make_mode(path, P::Minus), make_mode(path, P::Plus), n, basis, mixing);
}

LinearOperator hwp_unitary(int path, const BasisPtr& basis) {
  return permutation(basis, make_mode(path, P::Minus).index(), make_mode(path, P::Plus).index());
}

LinearOperator mirror_unitary(const BasisPtr& basis) {
  return permutation(basis, Mode{1, P::Minus}.index(), Mode{2, P::Minus}.index()) *
         permutation(basis, Mode{1, P::Plus}.index(), Mode{2, P::Plus}.index());
}

LinearOperator element_unitary(const CircuitElement& e, int n, const BasisPtr& basis) {
  return std::visit(
      Overloaded{
          [&](const Qbs& q) { return qbs_unitary(q.pol, n, basis, q.mixing); },
          [&](const PolarizationQbs& q) {
            return polarization_qbs_unitary(q.path, n, basis, q.mixing);
          },
          [&](const Hwp& h) { return hwp_unitary(h.path, basis); },
          [&](const Mirror&) { return mirror_unitary(basis); },
          [&](const Pbs& b) {
            make_mode(b.path, P::Minus);
            return LinearOperator::identity(basis);
          },
      },
      e);
}

BasisPtr circuit_basis(const Circuit& c) {
  if (c.photons < 1) throw std::invalid_argument("circuit needs at least one photon");
  return enumerate_basis(BasisPolicy::sector(c.photons));
}

LinearOperator stage_unitary(const Circuit& c, std::size_t begin, std::size_t end) {
  if (begin > end || end > c.elements.size()) {
    throw std::invalid_argument("stage range outside the circuit");
  }
  const BasisPtr basis = circuit_basis(c);
  LinearOperator u = LinearOperator::identity(basis);
  for (std::size_t i = begin; i < end; ++i) {
    u = element_unitary(c.elements[i], c.photons, basis) * u;
  }
  return u;
}

DetectionLayout detection_layout(const Circuit& c) {
  // Physical path p currently carries the light that started in origin[p].
  std::array<int, 3> origin{0, 1, 2};
  std::array<bool, 3> split{false, false, false};
  for (const auto& e : c.elements) {
    if (std::holds_alternative<Mirror>(e)) {
      std::swap(origin[1], origin[2]);
      std::swap(split[1], split[2]);
    } else if (const auto* b = std::get_if<Pbs>(&e)) {
      split[static_cast<std::size_t>(make_mode(b->path, P::Minus).path)] = true;
    }
  }
  DetectionLayout layout;
  for (int p = 1; p <= 2; ++p) {
    const std::string base = "M" + std::to_string(origin[static_cast<std::size_t>(p)]);
    if (split[static_cast<std::size_t>(p)]) {
      layout.channels.push_back(Channel{base + "-H", {Mode{p, P::Minus}}});
      layout.channels.push_back(Channel{base + "-V", {Mode{p, P::Plus}}});
    } else {
      layout.channels.push_back(Channel{base, {Mode{p, P::Minus}, Mode{p, P::Plus}}});
    }
  }
  std::sort(layout.channels.begin(), layout.channels.end(),
            [](const Channel& x, const Channel& y) { return x.label < y.label; });
  return layout;
}

Circuit build_noon_prep(int n) {
  Circuit c;
  c.photons = n;
  c.prepared = Mode{1, P::Minus};
  c.elements = {Qbs{P::Minus}, Hwp{2}};
  c.measurement_begin = c.elements.size();
  return c;
}

std::vector<CircuitElement> measurement_stage(const Setting& s) {
  std::vector<CircuitElement> out;
  if (s.path == PathAnalysis::Jx) {
    out.emplace_back(Qbs{P::Minus});
    out.emplace_back(Qbs{P::Plus});
  }
  out.emplace_back(Mirror{});
  if (s.pol.kind == PolarizationAnalysis::Kind::Sx) {
    out.emplace_back(PolarizationQbs{1, kBalancedMixing});
    out.emplace_back(PolarizationQbs{2, kBalancedMixing});
  } else if (s.pol.angle_over_pi.num != 0) {
    const double rotation = -0.5 * s.pol.effective_angle();
    out.emplace_back(PolarizationQbs{1, rotation});
    out.emplace_back(PolarizationQbs{2, rotation});
  }
  out.emplace_back(Pbs{1});
  out.emplace_back(Pbs{2});
  return out;
}

Circuit with_measurement(const Circuit& prep, const Setting& s) {
  Circuit c = prep;
  c.measurement_begin = c.elements.size();
  for (auto& e : measurement_stage(s)) c.elements.push_back(std::move(e));
  c.setting = s;
  return c;
}

Circuit measurement_setting_circuit(const Setting& s, int n) {
  return with_measurement(build_noon_prep(n), s);
}

StateVector prepared_state(const Circuit& c) {
  return fock_state(circuit_basis(c), all_in(c.prepared, c.photons));
}

StateVector pre_measurement_state(const Circuit& c) {
  return nbc::apply(stage_unitary(c, 0, c.measurement_begin), prepared_state(c));
}

StateVector run_circuit(const Circuit& c) {
  return nbc::apply(stage_unitary(c, 0, c.elements.size()), prepared_state(c));
}

double OutcomeDistribution::total() const {
  double t = 0.0;
  for (const auto& [pattern, p] : outcomes) t += p;
  return t;
}

bool OutcomeDistribution::one_counter(int n, double tol) const {
  for (const auto& [pattern, p] : outcomes) {
    if (p <= tol) continue;
    if (std::count(pattern.begin(), pattern.end(), n) != 1) return false;
  }
  return true;
}

double OutcomeDistribution::probability(const Pattern& pattern) const {
  for (const auto& [q, p] : outcomes) {
    if (q == pattern) return p;
  }
  return 0.0;
}

OutcomeDistribution detection_distribution(const StateVector& s, const DetectionLayout& layout) {
  std::array<int, kNumModes> channel_of{-1, -1, -1, -1};
  for (std::size_t c = 0; c < layout.channels.size(); ++c) {
    for (const Mode& m : layout.channels[c].modes) {
      if (channel_of[m.index()] != -1) throw std::invalid_argument("mode detected twice");
      channel_of[m.index()] = static_cast<int>(c);
    }
  }
  if (std::count(channel_of.begin(), channel_of.end(), -1) != 0) {
    throw std::invalid_argument("detection layout does not cover every output mode");
  }
  std::map<Pattern, double> acc;
  const auto& amps = s.amplitudes();
  for (std::size_t i = 0; i < s.basis().size(); ++i) {
    const double p = std::norm(amps(static_cast<Eigen::Index>(i)));
    if (p == 0.0) continue;
    Pattern pattern(layout.channels.size(), 0);
    const Occupation& occ = s.basis().occupation(i);
    for (std::size_t m = 0; m < kNumModes; ++m) pattern[channel_of[m]] += occ[m];
    acc[pattern] += p;
  }
  OutcomeDistribution d;
  for (const auto& ch : layout.channels) d.channels.push_back(ch.label);
  d.outcomes.assign(acc.begin(), acc.end());
  return d;
}

std::pair<LinearOperator, LinearOperator> setting_observables(const Setting& s, int n,
                                                              const BasisPtr& basis) {
  const MultibosonOrder order(n);
  LinearOperator a = rescale(
      collective_spin(s.path == PathAnalysis::Jz ? Axis::Z : Axis::X, DegreeOfFreedom::Path,
                      order, basis),
      2.0);
  LinearOperator b =
      s.pol.kind == PolarizationAnalysis::Kind::Sx
          ? rescale(collective_spin(Axis::X, DegreeOfFreedom::Polarization, order, basis), 2.0)
          : rescale(rotated_sz(s.pol.effective_angle(), order, basis), 2.0);
  return {std::move(a), std::move(b)};
}

std::optional<OutcomeValue> AssignmentTable::value_of(const Pattern& p) const {
  if (p.size() != channels.size()) return std::nullopt;
  const int n = std::accumulate(p.begin(), p.end(), 0);
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (p[c] == n) return all_in_channel[c];
  }
  return std::nullopt;
}

AssignmentTable derive_assignment(const Circuit& c) {
  if (!c.setting) throw std::invalid_argument("circuit carries no measurement setting");
  const BasisPtr basis = circuit_basis(c);
  const int n = c.photons;
  const LinearOperator pull_back =
      adjoint(stage_unitary(c, c.measurement_begin, c.elements.size()));
  const auto [obs_a, obs_b] = setting_observables(*c.setting, n, basis);
  const DetectionLayout layout = detection_layout(c);

  auto eigenvalue = [](const LinearOperator& op, const StateVector& v) -> std::optional<double> {
    const StateVector image = nbc::apply(op, v);
    const double lambda = inner_product(v, image).real();
    const double residual = (image.amplitudes() - lambda * v.amplitudes()).norm();
    if (residual < kEigenResidualTolerance) return snap(lambda);
    return std::nullopt;
  };

  AssignmentTable table;
  for (const auto& ch : layout.channels) {
    table.channels.push_back(ch.label);
    std::optional<OutcomeValue> value;
    bool consistent = true;
    for (const Occupation& occ : basis->elements()) {
      int inside = 0;
      for (const Mode& m : ch.modes) inside += occ[m.index()];
      if (inside != n) continue;
      const StateVector v = nbc::apply(pull_back, fock_state(basis, occ));
      const auto a = eigenvalue(obs_a, v);
      const auto b = eigenvalue(obs_b, v);
      if (!a || !b) {
        consistent = false;
        break;
      }
      if (!value) {
        value = OutcomeValue{*a, *b};
      } else if (std::abs(value->a - *a) > 1e-9 || std::abs(value->b - *b) > 1e-9) {
        consistent = false;
        break;
      }
    }
    table.all_in_channel.push_back(consistent ? value : std::nullopt);
  }
  return table;
}

std::vector<JointOutcome> assigned_distribution(const OutcomeDistribution& d,
                                                const AssignmentTable& t) {
  std::vector<JointOutcome> out;
  for (const auto& [pattern, p] : d.outcomes) {
    const auto v = t.value_of(pattern);
    if (!v) {
      if (p > 1e-12) throw std::domain_error("outcome without an eigenvalue assignment");
      continue;
    }
    auto it = std::find_if(out.begin(), out.end(), [&](const JointOutcome& o) {
      return std::abs(o.a - v->a) < 1e-9 && std::abs(o.b - v->b) < 1e-9;
    });
    if (it == out.end()) {
      out.push_back(JointOutcome{v->a, v->b, p});
    } else {
      it->probability += p;
    }
  }
  return out;
}

}  // namespace nbc
