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

// Line-oriented experiment description language.
//
//   photons N=4
//   prepare all path=1 pol=H
//   qbs pol=H                 # elements: qbs pol=H|V, hwp path=1|2, mirror, pbs path=1|2
//   hwp path=2
//   measure chsh              # or settings: Jz x Sz(pi/4) Jx x Sx ...
//   shots 100000
//   seed 42
//
// '#' starts a comment. Angles are rational multiples of pi within [-pi, pi].
// Comments are not preserved by serialize().

#ifndef NBC_DSL_HPP
#define NBC_DSL_HPP

#include "nbc/optics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nbc::dsl {

struct Diagnostic {
  enum class Severity { Error, Warning };

  int line = 1;    // 1-based
  int column = 1;  // 1-based byte offset within the line
  Severity severity = Severity::Error;
  std::string message;
  std::string token;
};

/// "line:col: error: message [token]"
std::string format(const Diagnostic& d);

struct ExperimentDoc {
  int photons = 1;
  Mode preparation{};
  std::vector<CircuitElement> elements;
  std::vector<Setting> settings;
  /// Settings begin with the `measure chsh` expansion.
  bool chsh_preset = false;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const ExperimentDoc&, const ExperimentDoc&) = default;
};

struct ParseResult {
  std::optional<ExperimentDoc> doc;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return doc.has_value(); }
};

/// Never throws; reports every diagnostic it finds, one pass over all lines.
ParseResult parse(std::string_view text);

/// Canonical text: photons, prepare, elements, measure, shots, seed.
/// Throws std::invalid_argument for elements the language cannot express.
std::string serialize(const ExperimentDoc& doc);

/// One circuit per setting, all sharing the declared preparation and
/// elements; a single bare circuit when no settings are declared.
std::vector<Circuit> lower(const ExperimentDoc& doc);

}  // namespace nbc::dsl

#endif  // NBC_DSL_HPP
