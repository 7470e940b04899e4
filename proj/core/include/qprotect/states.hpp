#pragma once

// Multi-qubit pure states and their one-qubit-versus-rest Schmidt form.

#include <array>
#include <cstdint>
#include <vector>

#include "qprotect/qmath.hpp"

namespace qprotect {

inline constexpr int kMinQubits = 2;
inline constexpr int kMaxQubits = 10;

/// Normalized n-qubit pure state; amplitude index bits are read with qubit 1
/// as the most significant bit.
class JointPureState {
 public:
  JointPureState(int num_qubits, Ket amplitudes);

  int num_qubits() const { return num_qubits_; }
  const Ket& amplitudes() const { return amplitudes_; }

 private:
  int num_qubits_;
  Ket amplitudes_;
};

struct SchmidtState {
  int kappa;  // 1-based index of the selected qubit
  double lambda0;
  double lambda1;
  std::array<Ket, 2> psi_basis;   // qubit Q
  std::array<Ket, 2> zeta_basis;  // remaining register R, dimension 2^(n-1)

  int num_qubits() const;
  double linear_entropy() const { return 2.0 * lambda0 * lambda1; }
};

SchmidtState schmidt_decompose(const JointPureState& state, int kappa);

/// sqrt(lambda0)|psi0>|zeta0> + sqrt(lambda1)|psi1>|zeta1> with qubit Q put
/// back at position kappa.
JointPureState reconstruct(const SchmidtState& s);

/// Reduced density matrix of qubit `kappa`.
DensityMatrix reduced_state(const JointPureState& state, int kappa);

/// [sqrt(lambda0), 0, 0, sqrt(lambda1)] in the basis
/// {|0>|zeta0>, |0>|zeta1>, |1>|zeta0>, |1>|zeta1>}.
Ket effective_state(const SchmidtState& s);

/// Canonical two-qubit Schmidt state with computational bases.
SchmidtState from_lambda(double lambda0);

double lambda0_from_linear_entropy(double s_lin);
double linear_entropy_from_lambda0(double lambda0);

JointPureState random_state(int num_qubits, std::uint64_t seed);

struct QubitRank {
  int kappa;
  double linear_entropy;
};

/// Qubits by ascending reduced-state linear entropy; the first entry is the
/// qubit most robust against decoherence. Ties keep the lower index first.
std::vector<QubitRank> rank_qubits(const JointPureState& state);

/// Maps amplitude index (q, r) of the split Q x R back to the register index.
std::size_t register_index(int num_qubits, int kappa, int q_bit, std::size_t r_index);

}  // namespace qprotect
