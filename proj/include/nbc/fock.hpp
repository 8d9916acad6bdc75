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

#ifndef NBC_FOCK_HPP
#define NBC_FOCK_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nbc {

using Complex = std::complex<double>;

/// Polarization label. Minus is the optical H polarization, Plus is V.
enum class Polarization : std::uint8_t { Minus, Plus };

inline constexpr std::size_t kNumModes = 4;

/// One (path, polarization) mode. Paths are 1 and 2.
///
/// The flat index is fixed: (1,-) -> 0, (2,-) -> 1, (1,+) -> 2, (2,+) -> 3.
struct Mode {
  int path = 1;
  Polarization pol = Polarization::Minus;

  constexpr std::size_t index() const {
    return static_cast<std::size_t>(path - 1) + (pol == Polarization::Plus ? 2u : 0u);
  }
  static constexpr Mode from_index(std::size_t i) {
    return Mode{static_cast<int>(i % 2) + 1, i < 2 ? Polarization::Minus : Polarization::Plus};
  }
  friend constexpr bool operator==(Mode, Mode) = default;
};

inline constexpr std::array<Mode, kNumModes> kAllModes = {
    Mode::from_index(0), Mode::from_index(1), Mode::from_index(2), Mode::from_index(3)};

/// Throws std::invalid_argument unless path is 1 or 2.
Mode make_mode(int path, Polarization pol);

std::string to_string(Mode m);
std::string to_string(Polarization p);

/// Occupation numbers indexed by Mode::index().
using Occupation = std::array<int, kNumModes>;

int total(const Occupation& occ);
Occupation all_in(Mode m, int n);
std::string to_string(const Occupation& occ);

/// How a basis is cut out of the infinite Fock space.
struct BasisPolicy {
  enum class Kind : std::uint8_t { Sector, Cutoff, SectorStack };

  Kind kind = Kind::Sector;
  /// Sector: one total; SectorStack: sorted, unique totals.
  std::vector<int> totals;
  /// Cutoff: maximum occupation per mode.
  int cutoff = 0;

  static BasisPolicy sector(int n_total);
  static BasisPolicy cutoff_per_mode(int c);
  static BasisPolicy sector_stack(std::vector<int> n_totals);

  friend bool operator==(const BasisPolicy&, const BasisPolicy&) = default;
};

std::string to_string(const BasisPolicy& p);

/// Number of elements the policy enumerates, computed in closed form.
std::size_t basis_size(const BasisPolicy& policy);

/// Deterministic enumeration of occupation vectors in lexicographic order.
class FockBasis {
 public:
  static constexpr std::size_t kDefaultMaxElements = 10'000'000;

  FockBasis(BasisPolicy policy, std::vector<Occupation> elements);

  const BasisPolicy& policy() const { return policy_; }
  std::size_t size() const { return elements_.size(); }
  const Occupation& occupation(std::size_t i) const { return elements_.at(i); }
  const std::vector<Occupation>& elements() const { return elements_; }

  std::optional<std::size_t> index_of(const Occupation& occ) const;
  bool contains(const Occupation& occ) const { return index_of(occ).has_value(); }

  /// Throws std::out_of_range if occ is not in the basis.
  std::size_t require_index(const Occupation& occ) const;

  /// True if every element of this basis holds the same total boson number.
  bool fixed_total() const;

 private:
  BasisPolicy policy_;
  std::vector<Occupation> elements_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

/// Throws std::invalid_argument on negative parameters and std::length_error
/// when the element count exceeds max_elements.
BasisPtr enumerate_basis(const BasisPolicy& policy,
                         std::size_t max_elements = FockBasis::kDefaultMaxElements);

bool same_basis(const FockBasis& a, const FockBasis& b);

class BasisMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_same_basis(const FockBasis& a, const FockBasis& b) {
  if (!same_basis(a, b)) {
    throw BasisMismatch("basis mismatch: " + to_string(a.policy()) + " vs " +
                        to_string(b.policy()));
  }
}

/// Amplitude vector over a Fock basis.
template <typename Scalar>
class BasicState {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicState(BasisPtr basis, Vector amplitudes)
      : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
    if (!basis_) throw std::invalid_argument("state requires a basis");
    if (static_cast<std::size_t>(amplitudes_.size()) != basis_->size()) {
      throw std::invalid_argument("amplitude vector does not match basis size");
    }
  }

  static BasicState zero(BasisPtr basis) {
    const auto n = static_cast<Eigen::Index>(basis->size());
    return BasicState(std::move(basis), Vector::Zero(n));
  }

  const FockBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Vector& amplitudes() const { return amplitudes_; }

  Scalar amplitude(const Occupation& occ) const {
    auto i = basis_->index_of(occ);
    return i ? amplitudes_(static_cast<Eigen::Index>(*i)) : Scalar(0);
  }

  double norm() const { return amplitudes_.norm(); }

  BasicState normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    return BasicState(basis_, amplitudes_ / n);
  }

 private:
  BasisPtr basis_;
  Vector amplitudes_;
};

/// Sparse operator over a Fock basis.
///
/// number_change is the shift in total boson number per application; the
/// hermitian flag is only ever set after an explicit check.
template <typename Scalar>
class BasicOperator {
 public:
  using Matrix = Eigen::SparseMatrix<Scalar>;
  using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BasicOperator(BasisPtr basis, Matrix m, int number_change = 0, bool hermitian = false)
      : basis_(std::move(basis)),
        matrix_(std::move(m)),
        number_change_(number_change),
        hermitian_(hermitian) {
    if (!basis_) throw std::invalid_argument("operator requires a basis");
    const auto n = static_cast<Eigen::Index>(basis_->size());
    if (matrix_.rows() != n || matrix_.cols() != n) {
      throw std::invalid_argument("operator matrix does not match basis size");
    }
    matrix_.makeCompressed();
  }

  static BasicOperator identity(BasisPtr basis) {
    const auto n = static_cast<Eigen::Index>(basis->size());
    Matrix m(n, n);
    m.setIdentity();
    return BasicOperator(std::move(basis), std::move(m), 0, true);
  }

  static BasicOperator zero(BasisPtr basis) {
    const auto n = static_cast<Eigen::Index>(basis->size());
    return BasicOperator(std::move(basis), Matrix(n, n), 0, true);
  }

  const FockBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Matrix& matrix() const { return matrix_; }
  int number_change() const { return number_change_; }
  bool hermitian() const { return hermitian_; }

  DenseMatrix dense() const { return DenseMatrix(matrix_); }

  /// max |M - M^dagger| over all entries.
  double hermiticity_defect() const {
    Matrix diff = matrix_ - Matrix(matrix_.adjoint());
    double worst = 0.0;
    for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
      for (typename Matrix::InnerIterator it(diff, k); it; ++it) {
        worst = std::max(worst, static_cast<double>(std::abs(it.value())));
      }
    }
    return worst;
  }

  /// Returns a copy flagged Hermitian; throws if max|M - M^dagger| >= tol.
  BasicOperator as_hermitian(double tol = 1e-12) const {
    const double d = hermiticity_defect();
    if (!(d < tol)) {
      throw std::domain_error("operator is not Hermitian (defect " + std::to_string(d) + ")");
    }
    return BasicOperator(basis_, matrix_, number_change_, true);
  }

 private:
  BasisPtr basis_;
  Matrix matrix_;
  int number_change_ = 0;
  bool hermitian_ = false;
};

using StateVector = BasicState<Complex>;
using LinearOperator = BasicOperator<Complex>;

// Expression-style free functions. All of them check that operands share a basis.

template <typename S>
BasicOperator<S> operator+(const BasicOperator<S>& x, const BasicOperator<S>& y) {
  require_same_basis(x.basis(), y.basis());
  if (x.number_change() != y.number_change()) {
    throw std::invalid_argument("cannot add operators with different number change");
  }
  return BasicOperator<S>(x.basis_ptr(), x.matrix() + y.matrix(), x.number_change(),
                          x.hermitian() && y.hermitian());
}

template <typename S>
BasicOperator<S> operator-(const BasicOperator<S>& x, const BasicOperator<S>& y) {
  require_same_basis(x.basis(), y.basis());
  if (x.number_change() != y.number_change()) {
    throw std::invalid_argument("cannot subtract operators with different number change");
  }
  return BasicOperator<S>(x.basis_ptr(), x.matrix() - y.matrix(), x.number_change(),
                          x.hermitian() && y.hermitian());
}

template <typename S>
BasicOperator<S> operator*(const BasicOperator<S>& x, const BasicOperator<S>& y) {
  require_same_basis(x.basis(), y.basis());
  typename BasicOperator<S>::Matrix m = x.matrix() * y.matrix();
  m.prune(S(0));
  return BasicOperator<S>(x.basis_ptr(), std::move(m), x.number_change() + y.number_change());
}

template <typename S>
BasicOperator<S> operator*(const S& c, const BasicOperator<S>& x) {
  typename BasicOperator<S>::Matrix m = c * x.matrix();
  const bool real_factor = std::imag(c) == 0.0;
  return BasicOperator<S>(x.basis_ptr(), std::move(m), x.number_change(),
                          x.hermitian() && real_factor);
}

template <typename S>
BasicOperator<S> operator*(double c, const BasicOperator<S>& x) {
  return S(c) * x;
}

template <typename S>
BasicOperator<S> adjoint(const BasicOperator<S>& x) {
  return BasicOperator<S>(x.basis_ptr(), typename BasicOperator<S>::Matrix(x.matrix().adjoint()),
                          -x.number_change(), x.hermitian());
}

/// XY - YX.
template <typename S>
BasicOperator<S> commutator(const BasicOperator<S>& x, const BasicOperator<S>& y) {
  return x * y - y * x;
}

/// Sparse matrix-vector product, no normalization.
template <typename S>
BasicState<S> apply(const BasicOperator<S>& op, const BasicState<S>& s) {
  require_same_basis(op.basis(), s.basis());
  typename BasicState<S>::Vector out = op.matrix() * s.amplitudes();
  return BasicState<S>(s.basis_ptr(), std::move(out));
}

/// <u|v>, conjugate-linear in u.
template <typename S>
S inner_product(const BasicState<S>& u, const BasicState<S>& v) {
  require_same_basis(u.basis(), v.basis());
  return u.amplitudes().dot(v.amplitudes());
}

/// Largest entry magnitude of x - y.
template <typename S>
double max_abs_diff(const BasicOperator<S>& x, const BasicOperator<S>& y) {
  require_same_basis(x.basis(), y.basis());
  typename BasicOperator<S>::Matrix d = x.matrix() - y.matrix();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < d.outerSize(); ++k) {
    for (typename BasicOperator<S>::Matrix::InnerIterator it(d, k); it; ++it) {
      worst = std::max(worst, static_cast<double>(std::abs(it.value())));
    }
  }
  return worst;
}

/// Normalized state from (occupation, weight) pairs. Repeated occupations add.
StateVector make_state(const BasisPtr& basis,
                       const std::vector<std::pair<Occupation, Complex>>& terms);

/// The single Fock state |occ>.
StateVector fock_state(const BasisPtr& basis, const Occupation& occ);

/// Block of op on the elements of sub, which must be a subset of op's basis.
LinearOperator restrict_to(const LinearOperator& op, const BasisPtr& sub);

/// Operator defined by its action on each basis element: fn(occ) returns the
/// image as (occupation, coefficient) pairs. Images outside the basis are dropped.
template <typename Fn>
LinearOperator operator_from_action(const BasisPtr& basis, Fn&& fn, int number_change = 0) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::size_t col = 0; col < basis->size(); ++col) {
    for (const auto& [target, coeff] : fn(basis->occupation(col))) {
      if (coeff == Complex(0)) continue;
      if (auto row = basis->index_of(target)) {
        triplets.emplace_back(static_cast<int>(*row), static_cast<int>(col), coeff);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(basis->size());
  LinearOperator::Matrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return LinearOperator(basis, std::move(m), number_change);
}

}  // namespace nbc

#endif  // NBC_FOCK_HPP
