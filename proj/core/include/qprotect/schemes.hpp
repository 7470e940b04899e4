#pragma once

// The four pre-/post-processing protection strategies: closed-form optimal
// fidelities, explicit optimal operators and end-to-end evaluation.
//
// All computations run in the 4-dimensional effective space spanned by
// {|0>|zeta0>, |0>|zeta1>, |1>|zeta0>, |1>|zeta1>}, where the state reads
// sqrt(lambda0)|0>|zeta0> + sqrt(lambda1)|1>|zeta1>. Collective operators are
// reported as 4x4 matrices in that basis and act as the identity on its
// orthogonal complement in the full register (see lift_to_register).

#include <array>
#include <string_view>

#include "qprotect/channels.hpp"
#include "qprotect/optimize.hpp"
#include "qprotect/states.hpp"

namespace qprotect {

enum class SchemeKind { IndInd, IndCol, ColInd, ColCol };

inline constexpr std::array<SchemeKind, 4> kAllSchemes = {SchemeKind::IndInd, SchemeKind::IndCol,
                                                          SchemeKind::ColInd, SchemeKind::ColCol};

std::string_view to_string(SchemeKind kind);
SchemeKind parse_scheme_kind(std::string_view name);

bool has_individual_pre(SchemeKind kind);
bool has_individual_post(SchemeKind kind);

struct ProtectionPlan {
  SchemeKind scheme;
  CMatrix pre_op;   // 2x2 when individual, 4x4 effective-basis matrix when collective
  CMatrix post_op;
  double fidelity;
};

struct AnalyticParams {
  ChannelKind channel;
  double p;
  double s_lin;
};

/// Closed-form maximal fidelity for a named channel.
double analytic_fidelity(const AnalyticParams& params, SchemeKind scheme);

/// Rotation by theta/2 in the plane of |0>|zeta0> and |1>|zeta1>.
CMatrix construct_W(double theta);

/// arctan sqrt(lambda1/lambda0): W(2 varsigma) takes the effective state to |0>|zeta0>.
double disentangling_angle(double lambda0);

/// Angle upsilon of the top eigenvector [cos u, 0, 0, sin u] of the state
/// after a named channel with identity pre-processing.
double top_eigenvector_angle(ChannelKind channel, double p, double lambda0);

/// gamma = -arccos(sqrt(lambda0) cos u + sqrt(lambda1) sin u); W(2 gamma)
/// maps [cos u, 0, 0, sin u] onto the effective state.
double post_rotation_angle(double upsilon, double lambda0);

/// Fidelity of the full pipeline post . E_Q . pre on the effective state.
/// Individual operators are given as 2x2 and lifted by (x) I_2.
double evaluate_scheme(const SchmidtState& s, const KrausChannel& ch, const CMatrix& pre_op, const CMatrix& post_op,
                       SchemeKind scheme);

ProtectionPlan optimal_plan_ind_ind(const SchmidtState& s, const KrausChannel& ch);
ProtectionPlan optimal_plan_ind_col(const SchmidtState& s, const KrausChannel& ch);
ProtectionPlan optimal_plan_col_ind(const SchmidtState& s, const KrausChannel& ch);
/// Works for any channel; custom channels get their optimal input state from
/// minimize_output_entropy.
ProtectionPlan optimal_plan_col_col(const SchmidtState& s, const KrausChannel& ch, const OptimizerConfig& cfg = {});

/// Closed-form constructions for named channels, numeric search otherwise.
ProtectionPlan best_plan(const SchmidtState& s, const KrausChannel& ch, SchemeKind scheme,
                         const OptimizerConfig& cfg = {});

/// Optimal collective post-processing for a fixed individual pre-processing:
/// the top eigenvector of the decohered state is rotated back onto the input.
struct CollectiveCompletion {
  double fidelity;
  CMatrix collective_op;
};
CollectiveCompletion best_post_for_pre(const SchmidtState& s, const KrausChannel& ch, const CMatrix& pre_ind);
/// Mirror image: optimal collective pre-processing for a fixed individual post.
CollectiveCompletion best_pre_for_post(const SchmidtState& s, const KrausChannel& ch, const CMatrix& post_ind);

struct FidelityChain {
  double ind_ind;
  double ind_col;
  double col_ind;
  double col_col;
};

FidelityChain ordering_chain(const SchmidtState& s, const KrausChannel& ch);

struct RegisterOperators {
  CMatrix pre_op;
  CMatrix post_op;
};

/// Physical 2^n x 2^n operators for a plan built on `s`, including the
/// basis change from the Schmidt basis of qubit kappa to the computational one.
RegisterOperators lift_to_register(const ProtectionPlan& plan, const SchmidtState& s);

/// Fidelity computed directly on the n-qubit register with the channel acting
/// on qubit kappa.
double evaluate_on_register(const JointPureState& state, const SchmidtState& s, const KrausChannel& ch,
                            const RegisterOperators& ops);

}  // namespace qprotect
