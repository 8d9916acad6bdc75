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

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <functional>

namespace nbc {

namespace {

using Terms = std::vector<std::pair<Occupation, Complex>>;

void require_number_changing_basis(const FockBasis& basis) {
  if (basis.policy().kind == BasisPolicy::Kind::Sector) {
    throw std::invalid_argument(
        "number-changing operator on " + to_string(basis.policy()) +
        " has no companion target sector; use a CUTOFF basis or a sector stack");
  }
}

LinearOperator diagonal(const BasisPtr& basis, const std::function<double(const Occupation&)>& f) {
  const auto n = static_cast<Eigen::Index>(basis->size());
  LinearOperator::Matrix m(n, n);
  m.reserve(Eigen::VectorXi::Constant(n, 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = f(basis->occupation(static_cast<std::size_t>(i)));
    if (v != 0.0) m.insert(i, i) = Complex(v);
  }
  return LinearOperator(basis, std::move(m), 0, true);
}

LinearOperator power(const LinearOperator& op, int k) {
  LinearOperator acc = LinearOperator::identity(op.basis_ptr());
  for (int i = 0; i < k; ++i) acc = op * acc;
  return acc;
}

template <typename Build>
LinearOperator compose_on_companion(const BasisPtr& basis, int shift, Build&& build) {
  if (basis->policy().kind == BasisPolicy::Kind::Cutoff) return build(basis);
  BasisPtr ext = companion_basis(basis, shift);
  return restrict_to(build(ext), basis);
}

}  // namespace

MultibosonOrder::MultibosonOrder(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("multiboson order must be >= 1");
}

double normalizer_f(int n, MultibosonOrder order) {
  if (n < 0) throw std::invalid_argument("occupation must be >= 0");
  const int big_n = order.value();
  double log_value = std::log(static_cast<double>((n + big_n) / big_n));
  for (int j = 1; j <= big_n; ++j) log_value -= std::log(static_cast<double>(n) + j);
  return std::exp(0.5 * log_value);
}

double normalizer_f_exact(int n, MultibosonOrder order) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  if (n < 0) throw std::invalid_argument("occupation must be >= 0");
  const int big_n = order.value();
  // n! / (n+N)! = 1 / ((n+1)(n+2)...(n+N))
  cpp_int denominator = 1;
  for (int j = 1; j <= big_n; ++j) denominator *= (n + j);
  const cpp_rational ratio(cpp_int((n + big_n) / big_n), denominator);
  return std::sqrt(ratio.convert_to<double>());
}

LinearOperator annihilation(Mode m, const BasisPtr& basis) {
  require_number_changing_basis(*basis);
  const auto k = m.index();
  return operator_from_action(
      basis,
      [k](const Occupation& occ) {
        Terms out;
        if (occ[k] > 0) {
          Occupation t = occ;
          t[k] -= 1;
          out.emplace_back(t, std::sqrt(static_cast<double>(occ[k])));
        }
        return out;
      },
      -1);
}

LinearOperator creation(Mode m, const BasisPtr& basis) {
  require_number_changing_basis(*basis);
  const auto k = m.index();
  return operator_from_action(
      basis,
      [k](const Occupation& occ) {
        Occupation t = occ;
        t[k] += 1;
        return Terms{{t, std::sqrt(static_cast<double>(occ[k] + 1))}};
      },
      +1);
}

LinearOperator number(Mode m, const BasisPtr& basis) {
  const auto k = m.index();
  return diagonal(basis, [k](const Occupation& occ) { return static_cast<double>(occ[k]); });
}

LinearOperator total_number(const BasisPtr& basis) {
  return diagonal(basis, [](const Occupation& occ) { return static_cast<double>(total(occ)); });
}

LinearOperator multiboson_annihilation(Mode m, MultibosonOrder order, const BasisPtr& basis) {
  require_number_changing_basis(*basis);
  const auto k = m.index();
  const int big_n = order.value();
  return operator_from_action(
      basis,
      [k, big_n, order](const Occupation& occ) {
        Terms out;
        const int blocks = floor_div(occ[k], order);
        if (blocks > 0) {
          Occupation t = occ;
          t[k] -= big_n;
          out.emplace_back(t, std::sqrt(static_cast<double>(blocks)));
        }
        return out;
      },
      -big_n);
}

LinearOperator multiboson_creation(Mode m, MultibosonOrder order, const BasisPtr& basis) {
  require_number_changing_basis(*basis);
  const auto k = m.index();
  const int big_n = order.value();
  return operator_from_action(
      basis,
      [k, big_n, order](const Occupation& occ) {
        Occupation t = occ;
        t[k] += big_n;
        return Terms{{t, std::sqrt(static_cast<double>(floor_div(occ[k], order) + 1))}};
      },
      +big_n);
}

LinearOperator normalizer_operator(Mode m, MultibosonOrder order, const BasisPtr& basis) {
  const auto k = m.index();
  return diagonal(basis,
                  [k, order](const Occupation& occ) { return normalizer_f_exact(occ[k], order); });
}

LinearOperator multiboson_annihilation_compositional(Mode m, MultibosonOrder order,
                                                     const BasisPtr& basis) {
  return normalizer_operator(m, order, basis) * power(annihilation(m, basis), order.value());
}

LinearOperator multiboson_creation_compositional(Mode m, MultibosonOrder order,
                                                 const BasisPtr& basis) {
  return power(creation(m, basis), order.value()) * normalizer_operator(m, order, basis);
}

LinearOperator floor_number(Mode m, MultibosonOrder order, const BasisPtr& basis) {
  const auto k = m.index();
  return diagonal(basis, [k, order](const Occupation& occ) {
    return static_cast<double>(floor_div(occ[k], order));
  });
}

BasisPtr companion_basis(const BasisPtr& basis, int shift) {
  const BasisPolicy& p = basis->policy();
  if (p.kind == BasisPolicy::Kind::Cutoff) return basis;
  std::vector<int> totals = p.totals;
  for (int t : p.totals) totals.push_back(t + shift);
  return enumerate_basis(BasisPolicy::sector_stack(std::move(totals)));
}

LinearOperator transfer(Mode to, Mode from, const BasisPtr& basis) {
  return compose_on_companion(basis, -1, [&](const BasisPtr& b) {
    return creation(to, b) * annihilation(from, b);
  });
}

LinearOperator multiboson_transfer(Mode to, Mode from, MultibosonOrder order,
                                   const BasisPtr& basis) {
  return compose_on_companion(basis, -order.value(), [&](const BasisPtr& b) {
    return multiboson_creation(to, order, b) * multiboson_annihilation(from, order, b);
  });
}

}  // namespace nbc
