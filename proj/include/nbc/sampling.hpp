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

#ifndef NBC_SAMPLING_HPP
#define NBC_SAMPLING_HPP

#include "nbc/contextuality.hpp"
#include "nbc/optics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nbc {

/// Name of the pseudo-random generator behind every sampled result.
inline constexpr const char* kGeneratorName = "std::mt19937_64";

/// Seed splitting rule: seed_i = splitmix64(master + (i + 1) * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Multinomial counts over `probabilities` (renormalized), drawn as a chain of
/// conditional binomials from a std::mt19937_64 seeded by `seed`.
std::vector<std::uint64_t> multinomial_counts(const std::vector<double>& probabilities,
                                              std::uint64_t shots, std::uint64_t seed);

struct ShotRecord {
  std::string setting;
  Pattern pattern;
  std::uint64_t count = 0;
};

/// multinomial_counts over the detection outcomes. Records with zero count
/// are omitted; counts sum to `shots`.
std::vector<ShotRecord> sample_shots(const OutcomeDistribution& d, std::uint64_t shots,
                                     std::uint64_t seed, const std::string& setting_label = "");

/// Tallies for one setting, either sampled counts or exact probabilities.
struct SettingTally {
  Setting setting;
  AssignmentTable table;
  std::vector<std::pair<Pattern, double>> weights;
  /// Number of shots behind `weights`; nullopt means the weights are exact
  /// probabilities (the infinite-shot limit).
  std::optional<std::uint64_t> shots;
};

SettingTally tally_from_records(const Setting& s, const AssignmentTable& t,
                                const std::vector<ShotRecord>& records);
SettingTally tally_from_distribution(const Setting& s, const AssignmentTable& t,
                                     const OutcomeDistribution& d);

struct CorrelatorEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Mean of the assigned product a*b and its binomial standard error.
CorrelatorEstimate estimate_correlator(const SettingTally& t);

/// CHSH estimate from four settings {Jz, Jx} x {P, P'}.
///
/// A = Jz, A' = Jx; of the two polarization analyses, B is the one with the
/// larger effective angle (pi/4 beats -pi/4). Standard errors add in
/// quadrature. Exact tallies give a Method::Exact report without errors.
ChshReport estimate_chsh(const std::vector<SettingTally>& tallies);

/// Sampled CHSH straight from the joint spectral distributions of the four
/// commuting pairs; pair i draws with derive_seed(seed, i).
ChshReport sample_chsh(const StateVector& s, const ObservableSet& set, std::uint64_t shots,
                       std::uint64_t seed);

}  // namespace nbc

#endif  // NBC_SAMPLING_HPP
