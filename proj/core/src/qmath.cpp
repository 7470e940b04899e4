#include "qprotect/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qprotect/error.hpp"
#include "qprotect/tolerances.hpp"

namespace qprotect {

namespace {

void phase_fix(Ket& v) {
  double largest = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) largest = std::max(largest, std::abs(v(i)));
  if (largest == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= largest - tol::kHermitian) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = cplx(std::abs(v(i)), 0.0);
      return;
    }
  }
}

std::vector<double> clipped_spectrum(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(values.begin(), values.end(), std::greater<>());
  for (double& v : values) v = std::clamp(v, 0.0, 1.0);
  return values;
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be a non-empty square matrix");
  }
}

}  // namespace

CMatrix identity(Eigen::Index dim) { return CMatrix::Identity(dim, dim); }

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Ket basis_ket(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) throw Error(ErrorCode::InvalidIndex, "basis index out of range");
  Ket k = Ket::Zero(dim);
  k(index) = 1.0;
  return k;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Ket tensor(const Ket& a, const Ket& b) {
  Ket out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m.adjoint() * m - identity(m.rows())) <= tol;
}

DensityMatrix::DensityMatrix(CMatrix m) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw Error(ErrorCode::InvalidState, "density matrix must be square and non-empty");
  }
  if (!is_hermitian(matrix_, tol::kHermitian)) {
    throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - cplx(1.0, 0.0)) > tol::kTrace) {
    throw Error(ErrorCode::InvalidState, "density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol::kNegativeEigenvalue) {
    throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const Ket& psi) {
  if (std::abs(psi.norm() - 1.0) > tol::kNormalized) {
    throw Error(ErrorCode::InvalidState, "pure state is not normalized");
  }
  return DensityMatrix(psi * psi.adjoint());
}

std::vector<double> DensityMatrix::spectrum() const { return clipped_spectrum(matrix_); }

std::vector<EigenPair> hermitian_eig(const CMatrix& m) {
  require_square(m, "hermitian_eig input");
  if (!is_hermitian(m, tol::kHermitian)) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  const Eigen::Index n = m.rows();
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Ket v = solver.eigenvectors().col(i);
    phase_fix(v);
    pairs.push_back({solver.eigenvalues()(i), std::move(v)});
  }
  return pairs;
}

EigenPair dominant_eigenpair(const CMatrix& m, const Ket& reference) {
  if (reference.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "reference dimension");
  auto pairs = hermitian_eig(m);
  const double top = pairs.front().value;
  const double cutoff = top - tol::kDegenerate * std::max(1.0, std::abs(top));
  Ket projection = Ket::Zero(m.rows());
  for (const auto& p : pairs) {
    if (p.value < cutoff) break;
    projection += p.vector * p.vector.dot(reference);
  }
  const double norm = projection.norm();
  if (norm <= tol::kGramSchmidtResidual) return {top, pairs.front().vector};
  return {top, projection / norm};
}

double largest_eigenvalue(const CMatrix& m) {
  require_square(m, "largest_eigenvalue input");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double fidelity(const Ket& psi, const CMatrix& rho) {
  if (rho.rows() != psi.size() || rho.cols() != psi.size()) {
    throw Error(ErrorCode::DimensionMismatch, "state and density matrix dimensions differ");
  }
  const cplx value = psi.dot(rho * psi);
  if (std::abs(value.imag()) > tol::kImaginaryResidue) {
    throw Error(ErrorCode::NotHermitian, "fidelity has a non-negligible imaginary part");
  }
  return value.real();
}

double fidelity(const Ket& psi, const DensityMatrix& rho) { return fidelity(psi, rho.matrix()); }

double linear_entropy(const DensityMatrix& rho) { return 1.0 - rho.matrix().squaredNorm(); }

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double v : rho.spectrum()) {
    if (v > 0.0) s -= v * std::log2(v);
  }
  return s;
}

double min_entropy(const DensityMatrix& rho) { return -std::log2(rho.spectrum().front()); }

double renyi_entropy(const DensityMatrix& rho, double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha == 1.0) {
    throw Error(ErrorCode::InvalidAlpha, "Renyi order must be positive, finite and different from 1");
  }
  const auto spectrum = rho.spectrum();
  const double top = spectrum.front();
  // log2 tr(rho^alpha) = alpha log2(top) + log2 sum (v/top)^alpha; avoids underflow at large alpha.
  double sum = 0.0;
  for (double v : spectrum) {
    if (v > 0.0) sum += std::pow(v / top, alpha);
  }
  return (alpha * std::log2(top) + std::log2(sum)) / (1.0 - alpha);
}

std::vector<Ket> gram_schmidt_complement(std::span<const Ket> vectors, Eigen::Index dim) {
  std::vector<Ket> basis(vectors.begin(), vectors.end());
  std::vector<Ket> added;
  for (Eigen::Index i = 0; i < dim && static_cast<Eigen::Index>(basis.size()) < dim; ++i) {
    Ket r = basis_ket(dim, i);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) r -= b * b.dot(r);
    }
    const double norm = r.norm();
    if (norm <= tol::kGramSchmidtResidual) continue;
    r /= norm;
    basis.push_back(r);
    added.push_back(std::move(r));
  }
  return added;
}

namespace {

void require_orthonormal(const std::vector<Ket>& vectors, const char* what) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      const cplx expected = i == j ? 1.0 : 0.0;
      if (std::abs(vectors[i].dot(vectors[j]) - expected) > tol::kOrthonormal) {
        throw Error(ErrorCode::NotOrthonormal, std::string(what) + " are not orthonormal");
      }
    }
  }
}

}  // namespace

CMatrix complete_to_unitary(std::span<const KetMapping> constraints, Eigen::Index dim) {
  if (static_cast<Eigen::Index>(constraints.size()) > dim) {
    throw Error(ErrorCode::TooManyConstraints, "more constraints than dimensions");
  }
  std::vector<Ket> sources;
  std::vector<Ket> targets;
  for (const auto& c : constraints) {
    if (c.source.size() != dim || c.target.size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "constraint vector has the wrong dimension");
    }
    sources.push_back(c.source);
    targets.push_back(c.target);
  }
  require_orthonormal(sources, "sources");
  require_orthonormal(targets, "targets");

  const auto source_rest = gram_schmidt_complement(sources, dim);
  const auto target_rest = gram_schmidt_complement(targets, dim);
  CMatrix u = CMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < sources.size(); ++k) u += targets[k] * sources[k].adjoint();
  for (std::size_t k = 0; k < source_rest.size(); ++k) u += target_rest[k] * source_rest[k].adjoint();
  return u;
}

CMatrix inverse_sqrt(const CMatrix& m) {
  require_square(m, "inverse_sqrt input");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  const auto& values = solver.eigenvalues();
  if (values.minCoeff() <= 0.0) throw Error(ErrorCode::OutOfRange, "matrix is not positive definite");
  const Eigen::VectorXd scale = values.cwiseSqrt().cwiseInverse();
  return solver.eigenvectors() * scale.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace qprotect
