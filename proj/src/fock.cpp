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

#include "nbc/fock.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace nbc {

Mode make_mode(int path, Polarization pol) {
  if (path != 1 && path != 2) {
    throw std::invalid_argument("path must be 1 or 2, got " + std::to_string(path));
  }
  return Mode{path, pol};
}

std::string to_string(Polarization p) { return p == Polarization::Minus ? "-" : "+"; }

std::string to_string(Mode m) {
  return "(" + std::to_string(m.path) + "," + to_string(m.pol) + ")";
}

int total(const Occupation& occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

Occupation all_in(Mode m, int n) {
  Occupation occ{};
  occ[m.index()] = n;
  return occ;
}

std::string to_string(const Occupation& occ) {
  std::ostringstream os;
  os << '|' << occ[0] << ',' << occ[1] << ',' << occ[2] << ',' << occ[3] << '>';
  return os.str();
}

BasisPolicy BasisPolicy::sector(int n_total) {
  BasisPolicy p;
  p.kind = Kind::Sector;
  p.totals = {n_total};
  return p;
}

BasisPolicy BasisPolicy::cutoff_per_mode(int c) {
  BasisPolicy p;
  p.kind = Kind::Cutoff;
  p.cutoff = c;
  return p;
}

BasisPolicy BasisPolicy::sector_stack(std::vector<int> n_totals) {
  std::sort(n_totals.begin(), n_totals.end());
  n_totals.erase(std::unique(n_totals.begin(), n_totals.end()), n_totals.end());
  n_totals.erase(std::remove_if(n_totals.begin(), n_totals.end(), [](int n) { return n < 0; }),
                 n_totals.end());
  BasisPolicy p;
  p.kind = Kind::SectorStack;
  p.totals = std::move(n_totals);
  return p;
}

std::string to_string(const BasisPolicy& p) {
  std::ostringstream os;
  switch (p.kind) {
    case BasisPolicy::Kind::Sector:
      os << "SECTOR(" << p.totals.at(0) << ")";
      break;
    case BasisPolicy::Kind::Cutoff:
      os << "CUTOFF(" << p.cutoff << ")";
      break;
    case BasisPolicy::Kind::SectorStack:
      os << "STACK(";
      for (std::size_t i = 0; i < p.totals.size(); ++i) os << (i ? "," : "") << p.totals[i];
      os << ")";
      break;
  }
  return os.str();
}

namespace {

// C(n+3, 3), saturating instead of overflowing.
std::size_t sector_size(int n) {
  const auto m = static_cast<unsigned __int128>(n);
  const unsigned __int128 v = (m + 1) * (m + 2) * (m + 3) / 6;
  return v > SIZE_MAX ? SIZE_MAX : static_cast<std::size_t>(v);
}

std::size_t saturating_add(std::size_t a, std::size_t b) {
  return a > SIZE_MAX - b ? SIZE_MAX : a + b;
}

void validate(const BasisPolicy& policy) {
  switch (policy.kind) {
    case BasisPolicy::Kind::Sector:
      if (policy.totals.size() != 1 || policy.totals[0] < 0) {
        throw std::invalid_argument("SECTOR basis needs one total N >= 0");
      }
      break;
    case BasisPolicy::Kind::Cutoff:
      if (policy.cutoff < 0) throw std::invalid_argument("CUTOFF basis needs C >= 0");
      break;
    case BasisPolicy::Kind::SectorStack:
      for (int n : policy.totals) {
        if (n < 0) throw std::invalid_argument("sector totals must be >= 0");
      }
      break;
  }
}

void append_sector(int n, std::vector<Occupation>& out) {
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n - a; ++b) {
      for (int c = 0; c <= n - a - b; ++c) {
        out.push_back(Occupation{a, b, c, n - a - b - c});
      }
    }
  }
}

}  // namespace

std::size_t basis_size(const BasisPolicy& policy) {
  validate(policy);
  switch (policy.kind) {
    case BasisPolicy::Kind::Sector:
      return sector_size(policy.totals[0]);
    case BasisPolicy::Kind::Cutoff: {
      const auto side = static_cast<unsigned __int128>(policy.cutoff) + 1;
      const unsigned __int128 v = side * side * side * side;
      return v > SIZE_MAX ? SIZE_MAX : static_cast<std::size_t>(v);
    }
    case BasisPolicy::Kind::SectorStack: {
      std::size_t acc = 0;
      for (int n : policy.totals) acc = saturating_add(acc, sector_size(n));
      return acc;
    }
  }
  return 0;
}

FockBasis::FockBasis(BasisPolicy policy, std::vector<Occupation> elements)
    : policy_(std::move(policy)), elements_(std::move(elements)) {
  if (!std::is_sorted(elements_.begin(), elements_.end()) ||
      std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw std::invalid_argument("basis elements must be strictly lexicographically ordered");
  }
}

std::optional<std::size_t> FockBasis::index_of(const Occupation& occ) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), occ);
  if (it == elements_.end() || *it != occ) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t FockBasis::require_index(const Occupation& occ) const {
  if (auto i = index_of(occ)) return *i;
  throw std::out_of_range("occupation " + to_string(occ) + " is not in basis " +
                          to_string(policy_));
}

bool FockBasis::fixed_total() const {
  return policy_.kind == BasisPolicy::Kind::Sector ||
         (policy_.kind == BasisPolicy::Kind::SectorStack && policy_.totals.size() <= 1) ||
         (policy_.kind == BasisPolicy::Kind::Cutoff && policy_.cutoff == 0);
}

BasisPtr enumerate_basis(const BasisPolicy& policy, std::size_t max_elements) {
  const std::size_t n = basis_size(policy);
  if (n > max_elements) {
    throw std::length_error("basis " + to_string(policy) + " has " + std::to_string(n) +
                            " elements, above the limit " + std::to_string(max_elements));
  }
  std::vector<Occupation> elements;
  elements.reserve(n);
  switch (policy.kind) {
    case BasisPolicy::Kind::Sector:
      append_sector(policy.totals[0], elements);
      break;
    case BasisPolicy::Kind::Cutoff: {
      const int c = policy.cutoff;
      for (int a = 0; a <= c; ++a)
        for (int b = 0; b <= c; ++b)
          for (int d = 0; d <= c; ++d)
            for (int e = 0; e <= c; ++e) elements.push_back(Occupation{a, b, d, e});
      break;
    }
    case BasisPolicy::Kind::SectorStack:
      for (int t : policy.totals) append_sector(t, elements);
      std::sort(elements.begin(), elements.end());
      break;
  }
  return std::make_shared<const FockBasis>(policy, std::move(elements));
}

bool same_basis(const FockBasis& a, const FockBasis& b) {
  return &a == &b || (a.policy() == b.policy() && a.size() == b.size());
}

StateVector make_state(const BasisPtr& basis,
                       const std::vector<std::pair<Occupation, Complex>>& terms) {
  StateVector::Vector amps = StateVector::Vector::Zero(static_cast<Eigen::Index>(basis->size()));
  for (const auto& [occ, weight] : terms) {
    amps(static_cast<Eigen::Index>(basis->require_index(occ))) += weight;
  }
  if (amps.norm() == 0.0) throw std::invalid_argument("cannot build a state from zero weights");
  return StateVector(basis, amps).normalized();
}

StateVector fock_state(const BasisPtr& basis, const Occupation& occ) {
  return make_state(basis, {{occ, Complex(1)}});
}

LinearOperator restrict_to(const LinearOperator& op, const BasisPtr& sub) {
  const FockBasis& full = op.basis();
  std::vector<Eigen::Index> map(sub->size());
  std::vector<long> inverse(full.size(), -1);
  for (std::size_t i = 0; i < sub->size(); ++i) {
    const auto j = full.require_index(sub->occupation(i));
    map[i] = static_cast<Eigen::Index>(j);
    inverse[j] = static_cast<long>(i);
  }
  std::vector<Eigen::Triplet<Complex>> triplets;
  const auto& m = op.matrix();
  for (std::size_t c = 0; c < sub->size(); ++c) {
    for (LinearOperator::Matrix::InnerIterator it(m, map[c]); it; ++it) {
      const long r = inverse[static_cast<std::size_t>(it.row())];
      if (r >= 0) triplets.emplace_back(static_cast<int>(r), static_cast<int>(c), it.value());
    }
  }
  const auto n = static_cast<Eigen::Index>(sub->size());
  LinearOperator::Matrix block(n, n);
  block.setFromTriplets(triplets.begin(), triplets.end());
  return LinearOperator(sub, std::move(block), op.number_change(), op.hermitian());
}

}  // namespace nbc
