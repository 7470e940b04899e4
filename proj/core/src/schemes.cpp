#include "qprotect/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qprotect/error.hpp"
#include "qprotect/tolerances.hpp"

namespace qprotect {

namespace {

// Below this the closed-form angle ratios are 0/0; the relevant 2x2 block is
// then diagonal with its larger entry first.
constexpr double kDegenerateDenominator = 1e-14;

void require_named(const KrausChannel& ch, const char* what) {
  if (!ch.is_named() || !ch.strength()) {
    throw Error(ErrorCode::UnsupportedChannel, std::string(what) + " has closed forms only for named channels");
  }
}

void require_operator(const CMatrix& op, Eigen::Index dim, const char* role) {
  if (op.rows() != dim || op.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, std::string(role) + " must be " + std::to_string(dim) + "x" +
                                                  std::to_string(dim) + " for this scheme");
  }
  if (!is_unitary(op, tol::kUnitary)) throw Error(ErrorCode::NotUnitary, std::string(role) + " is not unitary");
}

CMatrix lift_individual(const CMatrix& op) { return tensor(op, identity(2)); }

CMatrix projector(const Ket& v) { return v * v.adjoint(); }

// V with V * from = to for unit vectors. Uses W(theta) when both vectors are
// real and supported on |0>|zeta0>, |1>|zeta1>; otherwise the Gram-Schmidt
// completion.
CMatrix rotation_onto(const Ket& from, const Ket& to) {
  const auto in_plane = [](const Ket& v) {
    return std::abs(v(1)) <= tol::kOrthonormal && std::abs(v(2)) <= tol::kOrthonormal &&
           std::abs(v(0).imag()) <= tol::kOrthonormal && std::abs(v(3).imag()) <= tol::kOrthonormal;
  };
  if (from.size() == 4 && in_plane(from) && in_plane(to)) {
    const double from_angle = std::atan2(from(3).real(), from(0).real());
    const double to_angle = std::atan2(to(3).real(), to(0).real());
    return construct_W(2.0 * (from_angle - to_angle));
  }
  const KetMapping map[] = {{to, from}};
  return complete_to_unitary(map, from.size());
}

}  // namespace

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::IndInd: return "ind_ind";
    case SchemeKind::IndCol: return "ind_col";
    case SchemeKind::ColInd: return "col_ind";
    case SchemeKind::ColCol: return "col_col";
  }
  return "ind_ind";
}

SchemeKind parse_scheme_kind(std::string_view name) {
  for (SchemeKind k : kAllSchemes) {
    if (name == to_string(k)) return k;
  }
  if (name == "IndInd") return SchemeKind::IndInd;
  if (name == "IndCol") return SchemeKind::IndCol;
  if (name == "ColInd") return SchemeKind::ColInd;
  if (name == "ColCol") return SchemeKind::ColCol;
  throw Error(ErrorCode::ParseError, "unknown scheme '" + std::string(name) + "'");
}

bool has_individual_pre(SchemeKind kind) { return kind == SchemeKind::IndInd || kind == SchemeKind::IndCol; }
bool has_individual_post(SchemeKind kind) { return kind == SchemeKind::IndInd || kind == SchemeKind::ColInd; }

double analytic_fidelity(const AnalyticParams& params, SchemeKind scheme) {
  const double p = params.p;
  const double s = params.s_lin;
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::OutOfRange, "p must lie in [0, 1]");
  if (!(s >= 0.0 && s <= 0.5)) throw Error(ErrorCode::OutOfRange, "linear entropy must lie in [0, 0.5]");
  const double purity_root = std::sqrt(std::max(0.0, 1.0 - 2.0 * s));

  switch (params.channel) {
    case ChannelKind::Depolarizing:
      switch (scheme) {
        case SchemeKind::IndInd: return 1.0 - p * (1.0 + s) / 2.0;
        case SchemeKind::IndCol:
        case SchemeKind::ColInd:
          return 0.5 - p / 4.0 + std::sqrt(std::max(0.0, (p - 2.0) * (p - 2.0) - 2.0 * p * (4.0 - 3.0 * p) * s)) / 4.0;
        case SchemeKind::ColCol: return 1.0 - p / 2.0;
      }
      break;
    case ChannelKind::Dephasing:
      switch (scheme) {
        case SchemeKind::IndInd: return 1.0 - p * s;
        case SchemeKind::IndCol:
        case SchemeKind::ColInd: return 0.5 + std::sqrt(std::max(0.0, 1.0 - 2.0 * p * (2.0 - p) * s)) / 2.0;
        case SchemeKind::ColCol: return 1.0;
      }
      break;
    case ChannelKind::AmplitudeDamping:
      switch (scheme) {
        case SchemeKind::IndInd: return std::sqrt(1.0 - p) * s + (1.0 - p / 2.0) * (1.0 - s) + p / 2.0 * purity_root;
        case SchemeKind::IndCol:
        case SchemeKind::ColInd: return 1.0 - p * (1.0 - purity_root) / 2.0;
        case SchemeKind::ColCol: return 1.0;
      }
      break;
    case ChannelKind::Custom: break;
  }
  throw Error(ErrorCode::UnsupportedChannel, "no closed form for custom channels");
}

CMatrix construct_W(double theta) {
  CMatrix w = identity(4);
  const double c = std::cos(theta / 2.0);
  const double sn = std::sin(theta / 2.0);
  w(0, 0) = c;
  w(0, 3) = sn;
  w(3, 0) = -sn;
  w(3, 3) = c;
  return w;
}

double disentangling_angle(double lambda0) { return std::atan(std::sqrt((1.0 - lambda0) / lambda0)); }

double top_eigenvector_angle(ChannelKind channel, double p, double lambda0) {
  const double lambda1 = 1.0 - lambda0;
  const double s = linear_entropy_from_lambda0(lambda0);
  const double f = analytic_fidelity({channel, p, s}, SchemeKind::IndCol);
  const double root = std::sqrt(s / 2.0);
  switch (channel) {
    case ChannelKind::Depolarizing: {
      const double den = 2.0 * (1.0 - p) * root;
      return den <= kDegenerateDenominator ? 0.0 : std::atan((2.0 * f - (2.0 - p) * lambda0) / den);
    }
    case ChannelKind::Dephasing: {
      const double den = (1.0 - p) * root;
      return den <= kDegenerateDenominator ? 0.0 : std::atan((f - lambda0) / den);
    }
    case ChannelKind::AmplitudeDamping:
      return s <= kDegenerateDenominator ? 0.0 : std::atan(lambda1 * std::sqrt(2.0 * (1.0 - p) / s));
    case ChannelKind::Custom: break;
  }
  throw Error(ErrorCode::UnsupportedChannel, "no closed-form eigenvector for custom channels");
}

double post_rotation_angle(double upsilon, double lambda0) {
  const double overlap = std::sqrt(lambda0) * std::cos(upsilon) + std::sqrt(1.0 - lambda0) * std::sin(upsilon);
  return -std::acos(std::clamp(overlap, -1.0, 1.0));
}

double evaluate_scheme(const SchmidtState& s, const KrausChannel& ch, const CMatrix& pre_op, const CMatrix& post_op,
                       SchemeKind scheme) {
  require_operator(pre_op, has_individual_pre(scheme) ? 2 : 4, "pre-processing operator");
  require_operator(post_op, has_individual_post(scheme) ? 2 : 4, "post-processing operator");
  const CMatrix pre = has_individual_pre(scheme) ? lift_individual(pre_op) : pre_op;
  const CMatrix post = has_individual_post(scheme) ? lift_individual(post_op) : post_op;
  const Ket psi = effective_state(s);
  const Ket prepared = pre * psi;
  const CMatrix decohered = apply_on_q(ch, projector(prepared));
  return fidelity(psi, post * decohered * post.adjoint());
}

CollectiveCompletion best_post_for_pre(const SchmidtState& s, const KrausChannel& ch, const CMatrix& pre_ind) {
  const Ket psi = effective_state(s);
  const CMatrix decohered = apply_on_q(ch, projector(lift_individual(pre_ind) * psi));
  const EigenPair top = dominant_eigenpair(decohered, psi);
  return {top.value, rotation_onto(top.vector, psi)};
}

CollectiveCompletion best_pre_for_post(const SchmidtState& s, const KrausChannel& ch, const CMatrix& post_ind) {
  // F = <chi| sum_k (A_k^+ V^+ x I)|psi><psi|(V A_k x I) |chi> with chi = U_col psi.
  const Ket psi = effective_state(s);
  const CMatrix post_adj = lift_individual(post_ind).adjoint();
  const CMatrix back = apply_on_q(dual(ch), projector(post_adj * psi));
  const EigenPair top = dominant_eigenpair(back, psi);
  return {top.value, rotation_onto(psi, top.vector)};
}

ProtectionPlan optimal_plan_ind_ind(const SchmidtState& s, const KrausChannel& ch) {
  require_named(ch, "ind_ind");
  const CMatrix id = identity(2);
  return {SchemeKind::IndInd, id, id, evaluate_scheme(s, ch, id, id, SchemeKind::IndInd)};
}

ProtectionPlan optimal_plan_ind_col(const SchmidtState& s, const KrausChannel& ch) {
  require_named(ch, "ind_col");
  const Ket psi = effective_state(s);
  const CMatrix decohered = apply_on_q(ch, projector(psi));
  const double top = largest_eigenvalue(decohered);
  const double upsilon = top_eigenvector_angle(ch.kind(), *ch.strength(), s.lambda0);
  const double gamma = post_rotation_angle(upsilon, s.lambda0);
  return {SchemeKind::IndCol, identity(2), construct_W(2.0 * gamma), top};
}

ProtectionPlan optimal_plan_col_ind(const SchmidtState& s, const KrausChannel& ch) {
  require_named(ch, "col_ind");
  // Individual-then-collective against the dual map, then U_col = V_col^+, V_ind = U_ind^+ = I.
  const auto mirrored = best_post_for_pre(s, dual(ch), identity(2));
  return {SchemeKind::ColInd, mirrored.collective_op.adjoint(), identity(2), mirrored.fidelity};
}

ProtectionPlan optimal_plan_col_col(const SchmidtState& s, const KrausChannel& ch, const OptimizerConfig& cfg) {
  const Ket ground = basis_ket(2, 0);
  const Ket upsilon = ch.is_named() ? ground : minimize_output_entropy(ch, cfg).upsilon;
  const CMatrix output = apply_channel(ch, projector(upsilon));
  const EigenPair theta = dominant_eigenpair(output, upsilon);

  const double varsigma = disentangling_angle(s.lambda0);
  const KetMapping to_upsilon[] = {{upsilon, ground}};
  const KetMapping to_theta[] = {{theta.vector, ground}};
  const CMatrix prepare = lift_individual(complete_to_unitary(to_upsilon, 2));
  const CMatrix unprepare = lift_individual(complete_to_unitary(to_theta, 2)).adjoint();

  // U_col |psi> = |Upsilon>|zeta0>;  V_col |Theta>|zeta0> = |psi>.
  const CMatrix pre = prepare * construct_W(2.0 * varsigma);
  const CMatrix post = construct_W(-2.0 * varsigma) * unprepare;
  return {SchemeKind::ColCol, pre, post, theta.value};
}

ProtectionPlan best_plan(const SchmidtState& s, const KrausChannel& ch, SchemeKind scheme,
                         const OptimizerConfig& cfg) {
  if (scheme == SchemeKind::ColCol) return optimal_plan_col_col(s, ch, cfg);
  if (ch.is_named()) {
    switch (scheme) {
      case SchemeKind::IndInd: return optimal_plan_ind_ind(s, ch);
      case SchemeKind::IndCol: return optimal_plan_ind_col(s, ch);
      case SchemeKind::ColInd: return optimal_plan_col_ind(s, ch);
      case SchemeKind::ColCol: break;
    }
  }
  OptimizationResult r{};
  switch (scheme) {
    case SchemeKind::IndInd: r = maximize_ind_ind(s, ch, cfg); break;
    case SchemeKind::IndCol: r = maximize_ind_col(s, ch, cfg); break;
    case SchemeKind::ColInd: r = maximize_col_ind(s, ch, cfg); break;
    case SchemeKind::ColCol: break;
  }
  return {scheme, r.pre_op, r.post_op, r.fidelity};
}

FidelityChain ordering_chain(const SchmidtState& s, const KrausChannel& ch) {
  return {optimal_plan_ind_ind(s, ch).fidelity, optimal_plan_ind_col(s, ch).fidelity,
          optimal_plan_col_ind(s, ch).fidelity, optimal_plan_col_col(s, ch).fidelity};
}

namespace {

// Columns |i>_Q |zeta_j>_R of the register, in effective-basis order.
CMatrix effective_isometry(const SchmidtState& s) {
  const int n = s.num_qubits();
  const auto rest = static_cast<std::size_t>(s.zeta_basis[0].size());
  CMatrix b = CMatrix::Zero(Eigen::Index{1} << n, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (std::size_t r = 0; r < rest; ++r) {
        b(static_cast<Eigen::Index>(register_index(n, s.kappa, i, r)), 2 * i + j) =
            s.zeta_basis[j](static_cast<Eigen::Index>(r));
      }
    }
  }
  return b;
}

}  // namespace

RegisterOperators lift_to_register(const ProtectionPlan& plan, const SchmidtState& s) {
  const int n = s.num_qubits();
  CMatrix schmidt_to_comp(2, 2);
  schmidt_to_comp.col(0) = s.psi_basis[0];
  schmidt_to_comp.col(1) = s.psi_basis[1];
  const CMatrix basis_change = embed_single_qubit(schmidt_to_comp, n, s.kappa);

  const CMatrix b = effective_isometry(s);
  const CMatrix complement = identity(b.rows()) - b * b.adjoint();
  const auto embed = [&](const CMatrix& op, bool individual) -> CMatrix {
    if (individual) return embed_single_qubit(op, n, s.kappa);
    return b * op * b.adjoint() + complement;
  };
  return {embed(plan.pre_op, has_individual_pre(plan.scheme)) * basis_change.adjoint(),
          basis_change * embed(plan.post_op, has_individual_post(plan.scheme))};
}

double evaluate_on_register(const JointPureState& state, const SchmidtState& s, const KrausChannel& ch,
                            const RegisterOperators& ops) {
  const Ket& psi = state.amplitudes();
  const Ket prepared = ops.pre_op * psi;
  const CMatrix decohered = apply_on_qubit(ch, projector(prepared), state.num_qubits(), s.kappa);
  return fidelity(psi, ops.post_op * decohered * ops.post_op.adjoint());
}

}  // namespace qprotect
