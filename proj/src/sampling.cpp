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

#include "nbc/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace nbc {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::uint64_t> multinomial_counts(const std::vector<double>& probabilities,
                                              std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (probabilities.empty()) throw std::invalid_argument("cannot sample an empty distribution");
  double remaining_mass = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw std::invalid_argument("negative probability");
    remaining_mass += p;
  }
  std::mt19937_64 gen(seed);
  std::vector<std::uint64_t> counts(probabilities.size(), 0);
  auto remaining = static_cast<long long>(shots);
  for (std::size_t i = 0; i < probabilities.size() && remaining > 0; ++i) {
    const double p = probabilities[i];
    long long k = remaining;
    if (i + 1 < probabilities.size()) {
      const double q = remaining_mass > 0.0 ? std::clamp(p / remaining_mass, 0.0, 1.0) : 1.0;
      std::binomial_distribution<long long> draw(remaining, q);
      k = draw(gen);
    }
    counts[i] = static_cast<std::uint64_t>(k);
    remaining -= k;
    remaining_mass -= p;
  }
  return counts;
}

std::vector<ShotRecord> sample_shots(const OutcomeDistribution& d, std::uint64_t shots,
                                     std::uint64_t seed, const std::string& setting_label) {
  std::vector<double> probabilities;
  for (const auto& o : d.outcomes) probabilities.push_back(o.second);
  const auto counts = multinomial_counts(probabilities, shots, seed);
  std::vector<ShotRecord> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) out.push_back(ShotRecord{setting_label, d.outcomes[i].first, counts[i]});
  }
  return out;
}

SettingTally tally_from_records(const Setting& s, const AssignmentTable& t,
                                const std::vector<ShotRecord>& records) {
  SettingTally tally{s, t, {}, std::uint64_t{0}};
  for (const auto& r : records) {
    tally.weights.emplace_back(r.pattern, static_cast<double>(r.count));
    *tally.shots += r.count;
  }
  return tally;
}

SettingTally tally_from_distribution(const Setting& s, const AssignmentTable& t,
                                     const OutcomeDistribution& d) {
  return SettingTally{s, t, d.outcomes, std::nullopt};
}

CorrelatorEstimate estimate_correlator(const SettingTally& t) {
  if (t.shots && *t.shots == 0) throw std::invalid_argument("setting " + label(t.setting) +
                                                            " has zero shots");
  double mass = 0.0;
  double first = 0.0;
  double second = 0.0;
  for (const auto& [pattern, w] : t.weights) {
    if (w == 0.0) continue;
    const auto v = t.table.value_of(pattern);
    if (!v) {
      if (!t.shots && w <= 1e-12) continue;
      throw std::domain_error("outcome without an eigenvalue assignment in " + label(t.setting));
    }
    const double x = v->a * v->b;
    mass += w;
    first += w * x;
    second += w * x * x;
  }
  if (mass == 0.0) throw std::invalid_argument("setting " + label(t.setting) + " has no weight");
  CorrelatorEstimate e;
  e.mean = first / mass;
  if (t.shots) {
    const double variance = std::max(0.0, second / mass - e.mean * e.mean);
    e.standard_error = std::sqrt(variance / static_cast<double>(*t.shots));
  }
  return e;
}

ChshReport estimate_chsh(const std::vector<SettingTally>& tallies) {
  std::vector<PolarizationAnalysis> analyses;
  for (const auto& t : tallies) {
    if (std::find(analyses.begin(), analyses.end(), t.setting.pol) == analyses.end()) {
      analyses.push_back(t.setting.pol);
    }
  }
  if (analyses.size() != 2) {
    throw std::invalid_argument("CHSH estimate needs exactly two polarization analyses");
  }
  if (analyses[0].effective_angle() < analyses[1].effective_angle()) {
    std::swap(analyses[0], analyses[1]);
  }
  auto find = [&](PathAnalysis path, const PolarizationAnalysis& pol) -> const SettingTally& {
    for (const auto& t : tallies) {
      if (t.setting.path == path && t.setting.pol == pol) return t;
    }
    throw std::invalid_argument("missing setting " + label(Setting{path, pol}));
  };
  const auto ab = estimate_correlator(find(PathAnalysis::Jz, analyses[0]));
  const auto abp = estimate_correlator(find(PathAnalysis::Jz, analyses[1]));
  const auto apb = estimate_correlator(find(PathAnalysis::Jx, analyses[0]));
  const auto apbp = estimate_correlator(find(PathAnalysis::Jx, analyses[1]));

  ChshReport r = make_exact_report(Correlators{ab.mean, abp.mean, apb.mean, apbp.mean});
  const bool sampled = std::any_of(tallies.begin(), tallies.end(),
                                   [](const SettingTally& t) { return t.shots.has_value(); });
  if (sampled) {
    r.method = Method::Sampled;
    r.standard_errors = Correlators{ab.standard_error, abp.standard_error, apb.standard_error,
                                    apbp.standard_error};
    r.e_standard_error =
        std::sqrt(ab.standard_error * ab.standard_error + abp.standard_error * abp.standard_error +
                  apb.standard_error * apb.standard_error +
                  apbp.standard_error * apbp.standard_error);
  }
  return r;
}

ChshReport sample_chsh(const StateVector& s, const ObservableSet& set, std::uint64_t shots,
                       std::uint64_t seed) {
  const std::array<std::pair<const LinearOperator*, const LinearOperator*>, 4> pairs{{
      {&set.a(), &set.b()},
      {&set.a(), &set.b_prime()},
      {&set.a_prime(), &set.b()},
      {&set.a_prime(), &set.b_prime()},
  }};
  std::array<CorrelatorEstimate, 4> est;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto outcomes = joint_spectral_distribution(s, *pairs[i].first, *pairs[i].second);
    std::vector<double> probabilities;
    for (const auto& o : outcomes) probabilities.push_back(o.probability);
    const auto counts = multinomial_counts(probabilities, shots, derive_seed(seed, i));
    double first = 0.0;
    double second = 0.0;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      const double x = outcomes[k].a * outcomes[k].b;
      first += static_cast<double>(counts[k]) * x;
      second += static_cast<double>(counts[k]) * x * x;
    }
    const double n = static_cast<double>(shots);
    est[i].mean = first / n;
    est[i].standard_error = std::sqrt(std::max(0.0, second / n - est[i].mean * est[i].mean) / n);
  }
  ChshReport r = make_exact_report(Correlators{est[0].mean, est[1].mean, est[2].mean, est[3].mean});
  r.method = Method::Sampled;
  r.standard_errors = Correlators{est[0].standard_error, est[1].standard_error,
                                  est[2].standard_error, est[3].standard_error};
  double var = 0.0;
  for (const auto& e : est) var += e.standard_error * e.standard_error;
  r.e_standard_error = std::sqrt(var);
  return r;
}

}  // namespace nbc
