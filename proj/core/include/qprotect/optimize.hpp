#pragma once

// Derivative-free maximization of protection fidelity over single-qubit
// unitaries: a coarse angle grid followed by Nelder-Mead refinement started from
// separate grid local maxima. Used as a brute-force oracle for the closed forms and as
// the solver for channels without a closed form.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qprotect/channels.hpp"
#include "qprotect/states.hpp"

namespace qprotect {

/// Angles of [[cos b e^{ia}, -sin b e^{id}], [sin b e^{-id}, cos b e^{-ia}]].
/// Global phase is dropped since fidelities do not depend on it.
struct SU2Params {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
};

CMatrix su2_matrix(const SU2Params& params);

struct OptimizerConfig {
  int coarse_grid_points_per_angle = 12;
  double refine_tolerance = 1e-8;
  int max_iterations = 2000;
  int restarts = 8;
  std::uint64_t seed = 0;
};

void validate(const OptimizerConfig& cfg);

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  int iterations;
  bool converged;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `f` starting from a simplex spanned by `start` and `start + step_i e_i`.
/// Converged when the spread of simplex values falls to `tolerance`.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start, std::span<const double> step,
                             int max_iterations, double tolerance);

struct OptimizationResult {
  double fidelity;      // certified: re-evaluated through evaluate_scheme
  double objective;     // best value seen by the search itself
  CMatrix pre_op;
  CMatrix post_op;
  std::vector<double> angles;
  int iterations;
  bool converged;       // false flags NonConvergence; the result is still usable
};

OptimizationResult maximize_ind_ind(const SchmidtState& s, const KrausChannel& ch, const OptimizerConfig& cfg = {});
OptimizationResult maximize_ind_col(const SchmidtState& s, const KrausChannel& ch, const OptimizerConfig& cfg = {});
OptimizationResult maximize_col_ind(const SchmidtState& s, const KrausChannel& ch, const OptimizerConfig& cfg = {});

struct EntropyMinimum {
  Ket upsilon;      // pure input whose output has the largest top eigenvalue
  double fidelity;  // that eigenvalue
  std::vector<double> angles;  // Bloch polar and azimuthal angle
  int iterations;
  bool converged;
};

EntropyMinimum minimize_output_entropy(const KrausChannel& ch, const OptimizerConfig& cfg = {});

/// Bloch-sphere pure state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
Ket bloch_ket(double theta, double phi);

}  // namespace qprotect
