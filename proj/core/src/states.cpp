#include "qprotect/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qprotect/error.hpp"
#include "qprotect/tolerances.hpp"

namespace qprotect {

namespace {

void require_qubit_count(int n) {
  if (n < kMinQubits || n > kMaxQubits) {
    throw Error(ErrorCode::OutOfRange, "qubit count must lie in [2, 10], got " + std::to_string(n));
  }
}

void require_kappa(int n, int kappa) {
  if (kappa < 1 || kappa > n) {
    throw Error(ErrorCode::InvalidIndex, "qubit index " + std::to_string(kappa) + " outside 1.." + std::to_string(n));
  }
}

// Amplitudes as a 2 x 2^(n-1) matrix: row = bit of qubit kappa, column = rest.
CMatrix split_amplitudes(const JointPureState& state, int kappa) {
  const int n = state.num_qubits();
  const std::size_t rest = std::size_t{1} << (n - 1);
  CMatrix m(2, static_cast<Eigen::Index>(rest));
  for (int q = 0; q < 2; ++q) {
    for (std::size_t r = 0; r < rest; ++r) {
      m(q, static_cast<Eigen::Index>(r)) = state.amplitudes()(static_cast<Eigen::Index>(register_index(n, kappa, q, r)));
    }
  }
  return m;
}

}  // namespace

std::size_t register_index(int num_qubits, int kappa, int q_bit, std::size_t r_index) {
  const int low_bits = num_qubits - kappa;
  const std::size_t low_mask = (std::size_t{1} << low_bits) - 1;
  const std::size_t high = r_index >> low_bits;
  const std::size_t low = r_index & low_mask;
  return (high << (low_bits + 1)) | (static_cast<std::size_t>(q_bit) << low_bits) | low;
}

JointPureState::JointPureState(int num_qubits, Ket amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  require_qubit_count(num_qubits_);
  if (amplitudes_.size() != (Eigen::Index{1} << num_qubits_)) {
    throw Error(ErrorCode::DimensionMismatch, "amplitude count must be 2^n");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > tol::kNormalized) {
    throw Error(ErrorCode::InvalidState, "state is not normalized");
  }
}

int SchmidtState::num_qubits() const {
  int n = 1;
  for (Eigen::Index d = zeta_basis[0].size(); d > 1; d >>= 1) ++n;
  return n;
}

SchmidtState schmidt_decompose(const JointPureState& state, int kappa) {
  const int n = state.num_qubits();
  require_kappa(n, kappa);
  const CMatrix m = split_amplitudes(state, kappa);
  const auto eig = hermitian_eig(m * m.adjoint());

  SchmidtState s{kappa, 0.0, 0.0, {eig[0].vector, eig[1].vector}, {}};
  std::array<Ket, 2> raw;
  std::array<double, 2> weight{};
  for (int i = 0; i < 2; ++i) {
    raw[i] = (s.psi_basis[i].adjoint() * m).transpose();
    weight[i] = raw[i].squaredNorm();
  }
  if (weight[1] > weight[0]) {
    std::swap(weight[0], weight[1]);
    std::swap(raw[0], raw[1]);
    std::swap(s.psi_basis[0], s.psi_basis[1]);
  }
  s.zeta_basis[0] = raw[0] / std::sqrt(weight[0]);
  if (weight[1] < tol::kSchmidtZero) {
    const Ket first[] = {s.zeta_basis[0]};
    s.zeta_basis[1] = gram_schmidt_complement(first, s.zeta_basis[0].size()).front();
    weight[1] = 0.0;
  } else {
    s.zeta_basis[1] = raw[1] / std::sqrt(weight[1]);
  }
  const double total = weight[0] + weight[1];
  s.lambda0 = weight[0] / total;
  s.lambda1 = weight[1] / total;
  return s;
}

JointPureState reconstruct(const SchmidtState& s) {
  const int n = s.num_qubits();
  const std::size_t rest = static_cast<std::size_t>(s.zeta_basis[0].size());
  Ket amps = Ket::Zero(Eigen::Index{1} << n);
  const std::array<double, 2> weights{std::sqrt(s.lambda0), std::sqrt(s.lambda1)};
  for (int i = 0; i < 2; ++i) {
    for (int q = 0; q < 2; ++q) {
      for (std::size_t r = 0; r < rest; ++r) {
        amps(static_cast<Eigen::Index>(register_index(n, s.kappa, q, r))) +=
            weights[i] * s.psi_basis[i](q) * s.zeta_basis[i](static_cast<Eigen::Index>(r));
      }
    }
  }
  return JointPureState(n, amps / amps.norm());
}

DensityMatrix reduced_state(const JointPureState& state, int kappa) {
  require_kappa(state.num_qubits(), kappa);
  const CMatrix m = split_amplitudes(state, kappa);
  CMatrix rho = m * m.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(rho);
}

Ket effective_state(const SchmidtState& s) {
  Ket k = Ket::Zero(4);
  k(0) = std::sqrt(s.lambda0);
  k(3) = std::sqrt(s.lambda1);
  return k;
}

SchmidtState from_lambda(double lambda0) {
  if (!(lambda0 >= 0.5 && lambda0 <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "lambda0 must lie in [0.5, 1], got " + std::to_string(lambda0));
  }
  return SchmidtState{1, lambda0, 1.0 - lambda0, {basis_ket(2, 0), basis_ket(2, 1)}, {basis_ket(2, 0), basis_ket(2, 1)}};
}

double lambda0_from_linear_entropy(double s_lin) {
  constexpr double slack = 1e-12;
  if (!(s_lin >= -slack && s_lin <= 0.5 + slack)) {
    throw Error(ErrorCode::OutOfRange, "linear entropy must lie in [0, 0.5], got " + std::to_string(s_lin));
  }
  return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 2.0 * s_lin)));
}

double linear_entropy_from_lambda0(double lambda0) { return 2.0 * lambda0 * (1.0 - lambda0); }

JointPureState random_state(int num_qubits, std::uint64_t seed) {
  require_qubit_count(num_qubits);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Ket amps(Eigen::Index{1} << num_qubits);
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    amps(i) = cplx(re, im);
  }
  return JointPureState(num_qubits, amps / amps.norm());
}

std::vector<QubitRank> rank_qubits(const JointPureState& state) {
  std::vector<QubitRank> ranks;
  for (int kappa = 1; kappa <= state.num_qubits(); ++kappa) {
    ranks.push_back({kappa, linear_entropy(reduced_state(state, kappa))});
  }
  // Entropies equal up to round-off count as ties.
  const auto key = [](double s) { return std::llround(s * 1e12); };
  std::stable_sort(ranks.begin(), ranks.end(),
                   [&](const QubitRank& a, const QubitRank& b) { return key(a.linear_entropy) < key(b.linear_entropy); });
  return ranks;
}

}  // namespace qprotect
