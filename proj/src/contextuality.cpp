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

#include "nbc/contextuality.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace nbc {

namespace {

using DenseMatrix = LinearOperator::DenseMatrix;
using DenseVector = StateVector::Vector;

constexpr double kEigenMergeTolerance = 1e-9;

Eigen::VectorXd eigenvalues_of(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solve failed");
  return solver.eigenvalues();
}

void require_dichotomic_range(const DenseMatrix& m, const char* name) {
  if (m.rows() == 0) return;
  const Eigen::VectorXd ev = eigenvalues_of(m);
  const double worst = ev.cwiseAbs().maxCoeff();
  if (worst > 1.0 + kSpectrumTolerance) {
    std::ostringstream os;
    os << "observable " << name << " has spectrum outside [-1, 1] (|lambda| = " << worst << ")";
    throw std::domain_error(os.str());
  }
}

void require_commuting(const LinearOperator& x, const LinearOperator& y, const char* what) {
  const double d = max_abs_diff(x * y, y * x);
  if (!(d < kCommuteTolerance)) {
    std::ostringstream os;
    os << what << " do not commute (max |[X,Y]| = " << d << ")";
    throw std::domain_error(os.str());
  }
}

bool close(double x, double y) { return std::abs(x - y) < kEigenMergeTolerance; }

void accumulate(std::vector<JointOutcome>& out, double a, double b, double p) {
  for (auto& o : out) {
    if (close(o.a, a) && close(o.b, b)) {
      o.probability += p;
      return;
    }
  }
  out.push_back(JointOutcome{a, b, p});
}

}  // namespace

StateVector single_boson_state(const BasisPtr& basis) {
  using P = Polarization;
  return make_state(basis, {{all_in(Mode{1, P::Minus}, 1), Complex(1)},
                            {all_in(Mode{2, P::Plus}, 1), Complex(1)}});
}

StateVector noon_state(int n, const BasisPtr& basis) {
  using P = Polarization;
  if (n < 1) throw std::invalid_argument("NOON state needs N >= 1");
  return make_state(basis, {{all_in(Mode{1, P::Minus}, n), Complex(1)},
                            {all_in(Mode{2, P::Plus}, n), Complex(1)}});
}

double expectation(const StateVector& s, const LinearOperator& op) {
  const Complex v = inner_product(s, nbc::apply(op, s));
  if (!(std::abs(v.imag()) < kImaginaryTolerance)) {
    std::ostringstream os;
    os << "expectation value has imaginary part " << v.imag() << "; operator is not Hermitian";
    throw std::domain_error(os.str());
  }
  return v.real();
}

double correlator(const StateVector& s, const LinearOperator& a, const LinearOperator& b) {
  require_commuting(a, b, "correlated observables");
  return expectation(s, a * b);
}

double spectral_radius(const LinearOperator& op) {
  if (op.basis().size() == 0) return 0.0;
  return eigenvalues_of(op.dense()).cwiseAbs().maxCoeff();
}

ObservableSet::ObservableSet(LinearOperator a, LinearOperator a_prime, LinearOperator b,
                             LinearOperator b_prime)
    : a_(a.as_hermitian()),
      a_prime_(a_prime.as_hermitian()),
      b_(b.as_hermitian()),
      b_prime_(b_prime.as_hermitian()) {
  require_same_basis(a_.basis(), a_prime_.basis());
  require_same_basis(a_.basis(), b_.basis());
  require_same_basis(a_.basis(), b_prime_.basis());
  require_commuting(a_, b_, "A and B");
  require_commuting(a_, b_prime_, "A and B'");
  require_commuting(a_prime_, b_, "A' and B");
  require_commuting(a_prime_, b_prime_, "A' and B'");
  require_dichotomic_range(a_.dense(), "A");
  require_dichotomic_range(a_prime_.dense(), "A'");
  require_dichotomic_range(b_.dense(), "B");
  require_dichotomic_range(b_prime_.dense(), "B'");
}

std::string to_string(SetKind k) {
  switch (k) {
    case SetKind::SingleBoson:
      return "single";
    case SetKind::SingleBosonRescaled:
      return "single-rescaled";
    case SetKind::Collective:
      return "collective";
  }
  return "?";
}

ObservableSet standard_observable_set(int n, SetKind kind) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  const BasisPtr basis = enumerate_basis(BasisPolicy::sector(n));
  const double quarter_turn = std::numbers::pi / 4;
  std::optional<MultibosonOrder> order;
  double scale = 2.0;
  switch (kind) {
    case SetKind::SingleBoson:
      break;
    case SetKind::SingleBosonRescaled:
      scale = 2.0 / n;
      break;
    case SetKind::Collective:
      order = MultibosonOrder(n);
      break;
  }
  auto spin = [&](Axis axis) {
    return order ? collective_spin(axis, DegreeOfFreedom::Path, *order, basis)
                 : single_spin(axis, DegreeOfFreedom::Path, basis);
  };
  return ObservableSet(rescale(spin(Axis::Z), scale), rescale(spin(Axis::X), scale),
                       rescale(rotated_sz(quarter_turn, order, basis), scale),
                       rescale(rotated_sz(-quarter_turn, order, basis), scale));
}

double chsh_value(const Correlators& c) {
  return std::abs(c.ab + c.ab_prime + c.a_prime_b - c.a_prime_b_prime);
}

ChshReport make_exact_report(const Correlators& c) {
  ChshReport r;
  r.correlators = c;
  r.e = chsh_value(c);
  r.violated = r.e > 2.0;
  r.method = Method::Exact;
  return r;
}

ChshReport chsh(const StateVector& s, const ObservableSet& set) {
  Correlators c;
  c.ab = correlator(s, set.a(), set.b());
  c.ab_prime = correlator(s, set.a(), set.b_prime());
  c.a_prime_b = correlator(s, set.a_prime(), set.b());
  c.a_prime_b_prime = correlator(s, set.a_prime(), set.b_prime());
  return make_exact_report(c);
}

ChshReport oracle_chsh(const StateVector& s, const ObservableSet& set) {
  require_same_basis(s.basis(), set.a().basis());
  const DenseMatrix a = set.a().dense();
  const DenseMatrix ap = set.a_prime().dense();
  const DenseMatrix b = set.b().dense();
  const DenseMatrix bp = set.b_prime().dense();
  for (const DenseMatrix* m : {&a, &ap, &b, &bp}) {
    if (m->rows() > 0 && eigenvalues_of(*m).cwiseAbs().maxCoeff() > 1.0 + kSpectrumTolerance) {
      throw std::domain_error("oracle: observable spectrum outside [-1, 1]");
    }
  }
  const DenseVector& psi = s.amplitudes();
  auto mean = [&](const DenseMatrix& m) { return psi.dot(m * psi).real(); };

  Correlators c;
  c.ab = mean(a * b);
  c.ab_prime = mean(a * bp);
  c.a_prime_b = mean(ap * b);
  c.a_prime_b_prime = mean(ap * bp);

  const DenseMatrix functional = a * (b + bp) + ap * (b - bp);
  const double direct = std::abs(mean(functional));
  ChshReport report = make_exact_report(c);
  if (std::abs(direct - report.e) > 1e-10) {
    throw std::logic_error("oracle: functional and correlator forms disagree");
  }
  return report;
}

std::vector<JointOutcome> joint_spectral_distribution(const StateVector& s,
                                                      const LinearOperator& a,
                                                      const LinearOperator& b) {
  require_same_basis(s.basis(), a.basis());
  require_same_basis(s.basis(), b.basis());
  require_commuting(a, b, "jointly measured observables");
  const DenseMatrix da = a.dense();
  const DenseMatrix db = b.dense();
  const DenseVector& psi = s.amplitudes();

  Eigen::SelfAdjointEigenSolver<DenseMatrix> sa(da);
  const Eigen::VectorXd& ev = sa.eigenvalues();
  std::vector<JointOutcome> out;
  Eigen::Index start = 0;
  while (start < ev.size()) {
    Eigen::Index stop = start + 1;
    while (stop < ev.size() && close(ev(stop), ev(start))) ++stop;
    const DenseMatrix block = sa.eigenvectors().middleCols(start, stop - start);
    const double a_value = ev.segment(start, stop - start).mean();
    const DenseMatrix b_restricted = block.adjoint() * db * block;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> sb(b_restricted);
    const DenseMatrix joint = block * sb.eigenvectors();
    const DenseVector overlaps = joint.adjoint() * psi;
    for (Eigen::Index j = 0; j < overlaps.size(); ++j) {
      accumulate(out, a_value, sb.eigenvalues()(j), std::norm(overlaps(j)));
    }
    start = stop;
  }
  return out;
}

double total_variation(const std::vector<JointOutcome>& p, const std::vector<JointOutcome>& q) {
  std::vector<bool> used(q.size(), false);
  double sum = 0.0;
  for (const auto& x : p) {
    double match = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (!used[j] && close(x.a, q[j].a) && close(x.b, q[j].b)) {
        used[j] = true;
        match = q[j].probability;
        break;
      }
    }
    sum += std::abs(x.probability - match);
  }
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (!used[j]) sum += q[j].probability;
  }
  return 0.5 * sum;
}

}  // namespace nbc
