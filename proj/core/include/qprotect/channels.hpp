#pragma once

// Single-qubit CPTP maps in Kraus form.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qprotect/qmath.hpp"

namespace qprotect {

enum class ChannelKind { Depolarizing, Dephasing, AmplitudeDamping, Custom };

std::string_view to_string(ChannelKind kind);
/// Accepts the names produced by to_string plus the CLI spellings
/// `depolarizing`, `dephasing`, `amplitude_damping`.
ChannelKind parse_channel_kind(std::string_view name);

inline constexpr ChannelKind kNamedChannels[] = {ChannelKind::Depolarizing, ChannelKind::Dephasing,
                                                 ChannelKind::AmplitudeDamping};

class KrausChannel {
 public:
  KrausChannel(std::vector<CMatrix> kraus, ChannelKind kind, std::optional<double> strength);

  const std::vector<CMatrix>& kraus() const { return kraus_; }
  ChannelKind kind() const { return kind_; }
  std::optional<double> strength() const { return strength_; }
  bool is_named() const { return kind_ != ChannelKind::Custom; }

 private:
  std::vector<CMatrix> kraus_;
  ChannelKind kind_;
  std::optional<double> strength_;
};

KrausChannel make_depolarizing(double p);
KrausChannel make_dephasing(double p);
KrausChannel make_amplitude_damping(double p);
KrausChannel make_named(ChannelKind kind, double p);

/// Channel with Kraus set {A_k^dagger}. Always tagged Custom; not
/// necessarily trace preserving.
KrausChannel dual(const KrausChannel& ch);

bool validate_cptp(const KrausChannel& ch);

/// Sum_k A_k rho A_k^dagger on a single qubit.
CMatrix apply_channel(const KrausChannel& ch, const CMatrix& rho);

/// Sum_k (A_k x I_2) rho (A_k^dagger x I_2) on the 4-dimensional effective
/// space with Q as the first factor. Works for non-trace-preserving maps too.
CMatrix apply_on_q(const KrausChannel& ch, const CMatrix& rho);
DensityMatrix apply_on_q(const KrausChannel& ch, const DensityMatrix& rho);

/// Action on qubit `kappa` (1-based, qubit 1 most significant) of an
/// n-qubit operator.
CMatrix apply_on_qubit(const KrausChannel& ch, const CMatrix& rho, int num_qubits, int kappa);

/// Lifts a single-qubit operator to qubit `kappa` of an n-qubit register.
CMatrix embed_single_qubit(const CMatrix& op, int num_qubits, int kappa);

/// Random channel from complex Gaussian Kraus operators normalized by
/// (Sum A^dagger A)^{-1/2}. Deterministic in the seed.
KrausChannel random_cptp(std::uint64_t seed, int num_kraus);

}  // namespace qprotect
