#pragma once

// Dense complex linear algebra for the small spaces this library works in:
// single qubits, the 4-dimensional effective joint space, and full n-qubit
// registers up to a few hundred amplitudes.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qprotect {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

CMatrix identity(Eigen::Index dim);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// Computational basis vector |index> of the given dimension.
Ket basis_ket(Eigen::Index dim, Eigen::Index index);

/// Kronecker product, left factor most significant.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
Ket tensor(const Ket& a, const Ket& b);

double max_abs(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol);
bool is_unitary(const CMatrix& m, double tol);

/// Trace-one, Hermitian, positive semidefinite matrix. Validated on
/// construction; immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m);

  static DensityMatrix pure(const Ket& psi);

  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }

  /// Eigenvalues in descending order, clipped to [0, 1].
  std::vector<double> spectrum() const;

 private:
  CMatrix matrix_;
};

struct EigenPair {
  double value;
  Ket vector;
};

/// Spectral decomposition of a Hermitian matrix, sorted by descending
/// eigenvalue. Each eigenvector has its first largest-magnitude component
/// made real and non-negative.
std::vector<EigenPair> hermitian_eig(const CMatrix& m);

/// Largest eigenvalue together with the unit vector in its eigenspace that
/// has maximal overlap with `reference`. Falls back to the first phase-fixed
/// eigenvector when the reference is orthogonal to the whole eigenspace.
EigenPair dominant_eigenpair(const CMatrix& m, const Ket& reference);

double largest_eigenvalue(const CMatrix& m);

/// <psi|rho|psi>.
double fidelity(const Ket& psi, const DensityMatrix& rho);
double fidelity(const Ket& psi, const CMatrix& rho);

double linear_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const DensityMatrix& rho);
double min_entropy(const DensityMatrix& rho);
double renyi_entropy(const DensityMatrix& rho, double alpha);

struct KetMapping {
  Ket target;
  Ket source;
};

/// Extends `vectors` (assumed orthonormal) to an orthonormal basis of the
/// whole space by Gram-Schmidt over canonical basis vectors in index order.
/// Returns only the added vectors.
std::vector<Ket> gram_schmidt_complement(std::span<const Ket> vectors, Eigen::Index dim);

/// Unitary U with U * source_k = target_k for every constraint. The rest of
/// U maps the Gram-Schmidt complement of the sources onto the Gram-Schmidt
/// complement of the targets, in order.
CMatrix complete_to_unitary(std::span<const KetMapping> constraints, Eigen::Index dim);

/// Hermitian inverse square root of a positive definite matrix.
CMatrix inverse_sqrt(const CMatrix& m);

}  // namespace qprotect
