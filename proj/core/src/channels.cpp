#include "qprotect/channels.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qprotect/error.hpp"
#include "qprotect/tolerances.hpp"

namespace qprotect {

namespace {

void require_strength(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::StrengthOutOfRange, "channel strength must lie in [0, 1], got " + std::to_string(p));
  }
}

CMatrix projector(int index) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(index, index) = 1.0;
  return m;
}

}  // namespace

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Depolarizing: return "depolarizing";
    case ChannelKind::Dephasing: return "dephasing";
    case ChannelKind::AmplitudeDamping: return "amplitude_damping";
    case ChannelKind::Custom: return "custom";
  }
  return "custom";
}

ChannelKind parse_channel_kind(std::string_view name) {
  if (name == "depolarizing") return ChannelKind::Depolarizing;
  if (name == "dephasing") return ChannelKind::Dephasing;
  if (name == "amplitude_damping" || name == "amplitude-damping") return ChannelKind::AmplitudeDamping;
  if (name == "custom") return ChannelKind::Custom;
  throw Error(ErrorCode::ParseError, "unknown channel '" + std::string(name) + "'");
}

KrausChannel::KrausChannel(std::vector<CMatrix> kraus, ChannelKind kind, std::optional<double> strength)
    : kraus_(std::move(kraus)), kind_(kind), strength_(strength) {
  if (kraus_.empty()) throw Error(ErrorCode::InvalidState, "channel needs at least one Kraus operator");
  for (const auto& a : kraus_) {
    if (a.rows() != 2 || a.cols() != 2) throw Error(ErrorCode::DimensionMismatch, "Kraus operators must be 2x2");
  }
  if (strength_) require_strength(*strength_);
}

KrausChannel make_depolarizing(double p) {
  require_strength(p);
  const double w = std::sqrt(p / 4.0);
  return KrausChannel({std::sqrt(1.0 - 3.0 * p / 4.0) * identity(2), w * pauli_x(), w * pauli_y(), w * pauli_z()},
                      ChannelKind::Depolarizing, p);
}

KrausChannel make_dephasing(double p) {
  require_strength(p);
  return KrausChannel({std::sqrt(1.0 - p) * identity(2), std::sqrt(p) * projector(0), std::sqrt(p) * projector(1)},
                      ChannelKind::Dephasing, p);
}

KrausChannel make_amplitude_damping(double p) {
  require_strength(p);
  CMatrix a1 = CMatrix::Zero(2, 2);
  a1(0, 0) = 1.0;
  a1(1, 1) = std::sqrt(1.0 - p);
  CMatrix a2 = CMatrix::Zero(2, 2);
  a2(0, 1) = std::sqrt(p);
  return KrausChannel({a1, a2}, ChannelKind::AmplitudeDamping, p);
}

KrausChannel make_named(ChannelKind kind, double p) {
  switch (kind) {
    case ChannelKind::Depolarizing: return make_depolarizing(p);
    case ChannelKind::Dephasing: return make_dephasing(p);
    case ChannelKind::AmplitudeDamping: return make_amplitude_damping(p);
    case ChannelKind::Custom: break;
  }
  throw Error(ErrorCode::UnsupportedChannel, "custom channels have no strength parametrization");
}

KrausChannel dual(const KrausChannel& ch) {
  std::vector<CMatrix> adj;
  adj.reserve(ch.kraus().size());
  for (const auto& a : ch.kraus()) adj.push_back(a.adjoint());
  return KrausChannel(std::move(adj), ChannelKind::Custom, std::nullopt);
}

bool validate_cptp(const KrausChannel& ch) {
  CMatrix sum = CMatrix::Zero(2, 2);
  for (const auto& a : ch.kraus()) sum += a.adjoint() * a;
  return max_abs(sum - identity(2)) <= tol::kCptp;
}

CMatrix apply_channel(const KrausChannel& ch, const CMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw Error(ErrorCode::DimensionMismatch, "single-qubit input expected");
  CMatrix out = CMatrix::Zero(2, 2);
  for (const auto& a : ch.kraus()) out += a * rho * a.adjoint();
  return out;
}

CMatrix apply_on_q(const KrausChannel& ch, const CMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw Error(ErrorCode::InvalidState, "effective state must be 4x4");
  CMatrix out = CMatrix::Zero(4, 4);
  for (const auto& a : ch.kraus()) {
    const CMatrix lifted = tensor(a, identity(2));
    out += lifted * rho * lifted.adjoint();
  }
  return out;
}

DensityMatrix apply_on_q(const KrausChannel& ch, const DensityMatrix& rho) {
  if (!validate_cptp(ch)) throw Error(ErrorCode::InvalidState, "channel is not trace preserving");
  return DensityMatrix(apply_on_q(ch, rho.matrix()));
}

CMatrix embed_single_qubit(const CMatrix& op, int num_qubits, int kappa) {
  if (kappa < 1 || kappa > num_qubits) throw Error(ErrorCode::InvalidIndex, "qubit index out of range");
  const Eigen::Index left = Eigen::Index{1} << (kappa - 1);
  const Eigen::Index right = Eigen::Index{1} << (num_qubits - kappa);
  return tensor(tensor(identity(left), op), identity(right));
}

CMatrix apply_on_qubit(const KrausChannel& ch, const CMatrix& rho, int num_qubits, int kappa) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  if (rho.rows() != dim || rho.cols() != dim) throw Error(ErrorCode::DimensionMismatch, "register dimension");
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const auto& a : ch.kraus()) {
    const CMatrix lifted = embed_single_qubit(a, num_qubits, kappa);
    out += lifted * rho * lifted.adjoint();
  }
  return out;
}

KrausChannel random_cptp(std::uint64_t seed, int num_kraus) {
  if (num_kraus < 1) throw Error(ErrorCode::OutOfRange, "num_kraus must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<CMatrix> kraus;
  CMatrix gram = CMatrix::Zero(2, 2);
  for (int k = 0; k < num_kraus; ++k) {
    CMatrix a(2, 2);
    for (Eigen::Index i = 0; i < 4; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      a(i / 2, i % 2) = cplx(re, im);
    }
    gram += a.adjoint() * a;
    kraus.push_back(std::move(a));
  }
  const CMatrix norm = inverse_sqrt(gram);
  for (auto& a : kraus) a = a * norm;
  return KrausChannel(std::move(kraus), ChannelKind::Custom, std::nullopt);
}

}  // namespace qprotect
