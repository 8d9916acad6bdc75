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

#include "nbc/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace nbc::dsl {

namespace {

constexpr std::int64_t kMaxAngleTerm = 1'000'000;

struct Token {
  std::string_view text;
  int column = 1;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
  while (i < line.size()) {
    if (space(line[i])) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && !space(line[i]) && line[i] != '#') ++i;
    out.push_back(Token{line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  Int v{};
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

std::optional<std::string_view> value_of_key(std::string_view token, std::string_view key) {
  if (token.size() < key.size() + 1 || token.substr(0, key.size()) != key ||
      token[key.size()] != '=') {
    return std::nullopt;
  }
  return token.substr(key.size() + 1);
}

// [-][k][*]pi[/d] or 0.
std::optional<Rational> parse_angle(std::string_view s, std::string& why) {
  if (s == "0" || s == "-0") return Rational(0);
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  const std::size_t pi_at = s.find("pi");
  if (pi_at == std::string_view::npos) {
    why = "angle must be a rational multiple of pi, e.g. pi/4";
    return std::nullopt;
  }
  std::string_view coeff = s.substr(0, pi_at);
  std::string_view rest = s.substr(pi_at + 2);
  if (!coeff.empty() && coeff.back() == '*') coeff.remove_suffix(1);
  std::int64_t num = 1;
  if (!coeff.empty()) {
    auto k = parse_int<std::int64_t>(coeff);
    if (!k || *k < 0 || *k > kMaxAngleTerm) {
      why = "bad angle coefficient";
      return std::nullopt;
    }
    num = *k;
  }
  std::int64_t den = 1;
  if (!rest.empty()) {
    if (rest[0] != '/') {
      why = "angle must be a rational multiple of pi, e.g. pi/4";
      return std::nullopt;
    }
    auto d = parse_int<std::int64_t>(rest.substr(1));
    if (!d || *d <= 0 || *d > kMaxAngleTerm) {
      why = "angle denominator must be a positive integer";
      return std::nullopt;
    }
    den = *d;
  }
  if (num > den) {
    why = "angle out of range [-pi, pi]";
    return std::nullopt;
  }
  return Rational(negative ? -num : num, den);
}

class Parser {
 public:
  ParseResult run(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = text.find('\n', pos);
      const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
      ++line_no;
      line(line_no, text.substr(pos, end - pos));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    if (!have_photons_) error(1, 1, "missing photons directive", "");
    if (!have_prepare_) error(1, 1, "missing prepare directive", "");

    ParseResult result;
    result.diagnostics = std::move(diags_);
    const bool failed = std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                                    [](const Diagnostic& d) {
                                      return d.severity == Diagnostic::Severity::Error;
                                    });
    if (!failed) result.doc = std::move(doc_);
    return result;
  }

 private:
  void error(int line, int col, std::string msg, std::string_view token) {
    diags_.push_back(
        Diagnostic{line, col, Diagnostic::Severity::Error, std::move(msg), std::string(token)});
  }

  void line(int n, std::string_view text) {
    const std::vector<Token> toks = tokenize(text);
    if (toks.empty()) return;
    const std::string_view head = toks[0].text;
    const std::vector<Token> args(toks.begin() + 1, toks.end());
    if (head == "photons") {
      photons(n, toks[0], args);
    } else if (head == "prepare") {
      prepare(n, toks[0], args);
    } else if (head == "qbs") {
      if (auto pol = single_key(n, toks[0], args, "pol")) {
        if (auto p = polarization(n, *pol)) doc_.elements.emplace_back(Qbs{*p});
      }
    } else if (head == "hwp") {
      if (auto tok = single_key(n, toks[0], args, "path")) {
        if (auto p = path(n, *tok)) doc_.elements.emplace_back(Hwp{*p});
      }
    } else if (head == "pbs") {
      if (auto tok = single_key(n, toks[0], args, "path")) {
        if (auto p = path(n, *tok)) doc_.elements.emplace_back(Pbs{*p});
      }
    } else if (head == "mirror") {
      if (!args.empty()) {
        error(n, args[0].column, "mirror takes no arguments", args[0].text);
      } else {
        doc_.elements.emplace_back(Mirror{});
      }
    } else if (head == "measure") {
      measure(n, toks[0], args);
    } else if (head == "shots") {
      counter(n, toks[0], args, doc_.shots, "shots", 1);
    } else if (head == "seed") {
      counter(n, toks[0], args, doc_.seed, "seed", 0);
    } else {
      error(n, toks[0].column, "unknown directive '" + std::string(head) + "'", head);
    }
  }

  // Checks for exactly one `key=value` argument and returns its value token.
  std::optional<Token> single_key(int n, const Token& head, const std::vector<Token>& args,
                                  std::string_view key) {
    if (args.empty()) {
      error(n, head.column, std::string(head.text) + " expects " + std::string(key) + "=...",
            head.text);
      return std::nullopt;
    }
    for (std::size_t i = 1; i < args.size(); ++i) {
      error(n, args[i].column, "unexpected token", args[i].text);
    }
    auto v = value_of_key(args[0].text, key);
    if (!v) {
      error(n, args[0].column, "expected " + std::string(key) + "=...", args[0].text);
      return std::nullopt;
    }
    return Token{*v, args[0].column + static_cast<int>(key.size()) + 1};
  }

  std::optional<int> path(int n, const Token& value) {
    if (value.text == "1") return 1;
    if (value.text == "2") return 2;
    error(n, value.column, "path must be 1 or 2", value.text);
    return std::nullopt;
  }

  std::optional<Polarization> polarization(int n, const Token& value) {
    if (value.text == "H") return Polarization::Minus;
    if (value.text == "V") return Polarization::Plus;
    error(n, value.column, "pol must be H or V", value.text);
    return std::nullopt;
  }

  void photons(int n, const Token& head, const std::vector<Token>& args) {
    if (have_photons_) {
      error(n, head.column, "duplicate photons directive", head.text);
      return;
    }
    have_photons_ = true;
    if (args.size() != 1) {
      error(n, head.column, "photons expects N=<integer>", head.text);
      return;
    }
    auto v = value_of_key(args[0].text, "N");
    auto count = v ? parse_int<int>(*v) : std::nullopt;
    if (!count) {
      error(n, args[0].column, "photons expects N=<integer>", args[0].text);
    } else if (*count < 1) {
      error(n, args[0].column, "photon number must be >= 1", args[0].text);
    } else {
      doc_.photons = *count;
    }
  }

  void prepare(int n, const Token& head, const std::vector<Token>& args) {
    if (have_prepare_) {
      error(n, head.column, "duplicate preparation", head.text);
      return;
    }
    have_prepare_ = true;
    if (args.size() != 3 || args[0].text != "all") {
      error(n, head.column, "prepare expects: all path=1|2 pol=H|V", head.text);
      return;
    }
    std::optional<int> p;
    std::optional<Polarization> pol;
    if (auto v = value_of_key(args[1].text, "path")) {
      p = path(n, Token{*v, args[1].column + 5});
    } else {
      error(n, args[1].column, "expected path=...", args[1].text);
    }
    if (auto v = value_of_key(args[2].text, "pol")) {
      pol = polarization(n, Token{*v, args[2].column + 4});
    } else {
      error(n, args[2].column, "expected pol=...", args[2].text);
    }
    if (p && pol) doc_.preparation = Mode{*p, *pol};
  }

  void measure(int n, const Token& head, const std::vector<Token>& args) {
    if (args.empty()) {
      error(n, head.column, "measure needs 'chsh' or at least one setting", head.text);
      return;
    }
    if (args.size() == 1 && args[0].text == "chsh") {
      if (doc_.settings.empty()) doc_.chsh_preset = true;
      for (const auto& s : chsh_settings()) doc_.settings.push_back(s);
      return;
    }
    std::size_t i = 0;
    while (i < args.size()) {
      if (i + 3 > args.size()) {
        error(n, args[i].column, "incomplete setting, expected e.g. 'Jz x Sz(pi/4)'",
              args[i].text);
        return;
      }
      const Token& obs = args[i];
      const Token& cross = args[i + 1];
      const Token& pol = args[i + 2];
      i += 3;
      std::optional<PathAnalysis> path_obs;
      if (obs.text == "Jz") {
        path_obs = PathAnalysis::Jz;
      } else if (obs.text == "Jx") {
        path_obs = PathAnalysis::Jx;
      } else {
        error(n, obs.column, "path observable must be Jz or Jx", obs.text);
      }
      if (cross.text != "x") error(n, cross.column, "expected 'x'", cross.text);
      std::optional<PolarizationAnalysis> analysis;
      if (pol.text == "Sx") {
        analysis = PolarizationAnalysis::sx();
      } else if (pol.text.size() > 4 && pol.text.substr(0, 3) == "Sz(" && pol.text.back() == ')') {
        std::string why;
        if (auto a = parse_angle(pol.text.substr(3, pol.text.size() - 4), why)) {
          analysis = PolarizationAnalysis::sz(*a);
        } else {
          error(n, pol.column + 3, why, pol.text);
        }
      } else {
        error(n, pol.column, "polarization observable must be Sz(<angle>) or Sx", pol.text);
      }
      if (path_obs && analysis && cross.text == "x") {
        doc_.settings.push_back(Setting{*path_obs, *analysis});
      }
    }
  }

  void counter(int n, const Token& head, const std::vector<Token>& args,
               std::optional<std::uint64_t>& slot, const char* name, std::uint64_t minimum) {
    if (slot || (std::string_view(name) == "shots" ? shots_seen_ : seed_seen_)) {
      error(n, head.column, std::string("duplicate ") + name + " directive", head.text);
      return;
    }
    (std::string_view(name) == "shots" ? shots_seen_ : seed_seen_) = true;
    if (args.size() != 1) {
      error(n, head.column, std::string(name) + " expects one integer", head.text);
      return;
    }
    auto v = parse_int<std::uint64_t>(args[0].text);
    if (!v || *v < minimum) {
      error(n, args[0].column,
            std::string(name) + " must be an integer >= " + std::to_string(minimum),
            args[0].text);
      return;
    }
    slot = *v;
  }

  ExperimentDoc doc_;
  std::vector<Diagnostic> diags_;
  bool have_photons_ = false;
  bool have_prepare_ = false;
  bool shots_seen_ = false;
  bool seed_seen_ = false;
};

const char* pol_name(Polarization p) { return p == Polarization::Minus ? "H" : "V"; }

}  // namespace

std::string format(const Diagnostic& d) {
  std::ostringstream os;
  os << d.line << ':' << d.column << ": "
     << (d.severity == Diagnostic::Severity::Error ? "error" : "warning") << ": " << d.message;
  if (!d.token.empty()) os << " [" << d.token << ']';
  return os.str();
}

ParseResult parse(std::string_view text) {
  try {
    return Parser().run(text);
  } catch (const std::exception& e) {
    ParseResult r;
    r.diagnostics.push_back(
        Diagnostic{1, 1, Diagnostic::Severity::Error, std::string("internal: ") + e.what(), ""});
    return r;
  }
}

std::string serialize(const ExperimentDoc& doc) {
  std::ostringstream os;
  os << "photons N=" << doc.photons << '\n';
  os << "prepare all path=" << doc.preparation.path << " pol=" << pol_name(doc.preparation.pol)
     << '\n';
  for (const auto& e : doc.elements) {
    if (const auto* q = std::get_if<Qbs>(&e)) {
      if (q->mixing != kBalancedMixing) {
        throw std::invalid_argument("only balanced QBS elements can be written");
      }
      os << "qbs pol=" << pol_name(q->pol) << '\n';
    } else if (const auto* h = std::get_if<Hwp>(&e)) {
      os << "hwp path=" << h->path << '\n';
    } else if (std::holds_alternative<Mirror>(e)) {
      os << "mirror\n";
    } else if (const auto* b = std::get_if<Pbs>(&e)) {
      os << "pbs path=" << b->path << '\n';
    } else {
      throw std::invalid_argument("element '" + describe(e) + "' has no textual form");
    }
  }
  std::size_t first_explicit = 0;
  const auto preset = chsh_settings();
  if (doc.chsh_preset && doc.settings.size() >= preset.size() &&
      std::equal(preset.begin(), preset.end(), doc.settings.begin())) {
    os << "measure chsh\n";
    first_explicit = preset.size();
  }
  if (first_explicit < doc.settings.size()) {
    os << "measure";
    for (std::size_t i = first_explicit; i < doc.settings.size(); ++i) os << ' ' << label(doc.settings[i]);
    os << '\n';
  }
  if (doc.shots) os << "shots " << *doc.shots << '\n';
  if (doc.seed) os << "seed " << *doc.seed << '\n';
  return os.str();
}

std::vector<Circuit> lower(const ExperimentDoc& doc) {
  Circuit prep;
  prep.photons = doc.photons;
  prep.prepared = doc.preparation;
  prep.elements = doc.elements;
  prep.measurement_begin = prep.elements.size();
  if (doc.settings.empty()) return {prep};
  std::vector<Circuit> out;
  out.reserve(doc.settings.size());
  for (const auto& s : doc.settings) out.push_back(with_measurement(prep, s));
  return out;
}

}  // namespace nbc::dsl
