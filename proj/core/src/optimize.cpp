#include "qprotect/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "qprotect/error.hpp"
#include "qprotect/schemes.hpp"

namespace qprotect {

namespace {

using std::numbers::pi;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

Matrix2 su2_fixed(double alpha, double beta, double delta) {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  Matrix2 m;
  m(0, 0) = c * std::polar(1.0, alpha);
  m(0, 1) = -s * std::polar(1.0, delta);
  m(1, 0) = s * std::polar(1.0, -delta);
  m(1, 1) = c * std::polar(1.0, -alpha);
  return m;
}

Matrix2 su2_fixed(std::span<const double> a) { return su2_fixed(a[0], a[1], a[2]); }

// Grid values for one SU(2) angle triple: alpha, delta cover [0, 2 pi), beta covers [0, pi/2].
std::vector<double> phase_grid(int points) {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = 2.0 * pi * i / points;
  return v;
}

std::vector<double> closed_grid(int points, double hi) {
  if (points == 1) return {0.0};
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = hi * i / (points - 1);
  return v;
}

struct Su2Grid {
  std::vector<std::array<double, 3>> angles;
  std::vector<Matrix2> matrices;
  std::array<double, 3> spacing;
};

Su2Grid make_su2_grid(int points) {
  Su2Grid g;
  const auto phases = phase_grid(points);
  const auto betas = closed_grid(points, pi / 2.0);
  for (double a : phases) {
    for (double b : betas) {
      for (double d : phases) {
        g.angles.push_back({a, b, d});
        g.matrices.push_back(su2_fixed(a, b, d));
      }
    }
  }
  const double phase_step = 2.0 * pi / points;
  const double beta_step = points > 1 ? (pi / 2.0) / (points - 1) : pi / 4.0;
  g.spacing = {phase_step, beta_step, phase_step};
  return g;
}

std::vector<Matrix2> kraus_fixed(const KrausChannel& ch) {
  std::vector<Matrix2> out;
  for (const auto& a : ch.kraus()) out.emplace_back(a);
  return out;
}

// Top eigenvalue of sum_k vec(w_k) vec(w_k)^+ for 2x2 "state matrices" w_k
// (rows: qubit Q, columns: zeta index) in the effective space.
double top_eigenvalue_of_mixture(const std::vector<Matrix2>& w) {
  Matrix4 rho = Matrix4::Zero();
  for (const auto& m : w) {
    Eigen::Vector4cd v;
    v << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
    rho.noalias() += v * v.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(rho, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(3);
}

// Indices of the `count` largest values, highest first, lowest index on ties.
std::vector<std::size_t> best_indices(const std::vector<double>& values, int count) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(std::max(count, 1)), idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) { return values[a] > values[b] || (values[a] == values[b] && a < b); });
  idx.resize(k);
  return idx;
}

// Start cells for the refinement: grid local maxima first, best value first,
// so restarts land in different basins; the best remaining cells fill up the
// count. A cell is a local maximum when no neighbour beats it (equal values
// go to the lower index). `shape` lists the grid extent per axis, last axis
// fastest; periodic axes wrap around.
std::vector<std::size_t> basin_starts(const std::vector<double>& values, const std::vector<int>& shape,
                                      const std::vector<bool>& periodic, int count) {
  const std::size_t dims = shape.size();
  std::vector<std::size_t> stride(dims, 1);
  for (std::size_t d = dims - 1; d > 0; --d) stride[d - 1] = stride[d] * static_cast<std::size_t>(shape[d]);

  const auto beats = [&](std::size_t a, std::size_t b) { return values[a] > values[b] || (values[a] == values[b] && a < b); };
  std::vector<std::size_t> maxima;
  std::vector<int> coord(dims), offset(dims);
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t d = 0; d < dims; ++d) coord[d] = static_cast<int>(i / stride[d]) % shape[d];
    bool is_max = true;
    std::fill(offset.begin(), offset.end(), -1);
    while (is_max) {
      std::size_t j = 0;
      bool valid = true;
      bool self = true;
      for (std::size_t d = 0; d < dims && valid; ++d) {
        int c = coord[d] + offset[d];
        self = self && offset[d] == 0;
        if (periodic[d]) {
          c = (c + shape[d]) % shape[d];
        } else if (c < 0 || c >= shape[d]) {
          valid = false;
        }
        j += static_cast<std::size_t>(c) * stride[d];
      }
      if (valid && !self && j != i && beats(j, i)) is_max = false;
      std::size_t d = dims;
      while (d > 0 && offset[d - 1] == 1) offset[--d] = -1;
      if (d == 0) break;
      ++offset[d - 1];
    }
    if (is_max) maxima.push_back(i);
  }
  std::sort(maxima.begin(), maxima.end(), beats);
  const auto k = static_cast<std::size_t>(std::max(count, 1));
  if (maxima.size() > k) maxima.resize(k);
  if (maxima.size() < k) {
    for (std::size_t i : best_indices(values, static_cast<int>(k + maxima.size()))) {
      if (maxima.size() == k) break;
      if (std::find(maxima.begin(), maxima.end(), i) == maxima.end()) maxima.push_back(i);
    }
  }
  return maxima;
}

struct RefineOutcome {
  std::vector<double> x;
  double value;
  int iterations;
  bool converged;
};

// Nelder-Mead from each start (maximizing), each run restarted in place
// until a restart stops improving. Best run wins; ties go to the earliest start.
RefineOutcome refine(const std::function<double(std::span<const double>)>& objective,
                     const std::vector<std::vector<double>>& starts, std::span<const double> spacing,
                     const OptimizerConfig& cfg) {
  const Objective negated = [&](std::span<const double> x) { return -objective(x); };
  RefineOutcome best{starts.front(), objective(starts.front()), 0, true};
  bool have_best = false;
  int total_iterations = 0;
  bool all_converged = true;

  for (std::size_t run = 0; run < starts.size(); ++run) {
    std::mt19937_64 rng(cfg.seed * 1000003ULL + run);
    std::bernoulli_distribution flip(0.5);
    std::vector<double> step(spacing.begin(), spacing.end());
    for (double& s : step) s *= flip(rng) ? -0.5 : 0.5;

    std::vector<double> x = starts[run];
    double value = objective(x);
    int budget = cfg.max_iterations;
    bool converged = false;
    while (budget > 0) {
      auto r = nelder_mead(negated, x, step, budget, cfg.refine_tolerance);
      budget -= r.iterations;
      total_iterations += r.iterations;
      const double improvement = -r.value - value;
      x = std::move(r.x);
      value = -r.value;
      if (!r.converged) break;
      if (improvement <= cfg.refine_tolerance) {
        converged = true;
        break;
      }
      for (double& s : step) s *= 0.1;
    }
    all_converged = all_converged && converged;
    if (!have_best || value > best.value) {
      best = {x, value, 0, true};
      have_best = true;
    }
  }
  best.iterations = total_iterations;
  best.converged = all_converged;
  return best;
}

struct SingleSu2Search {
  std::array<double, 3> angles;
  double objective;
  int iterations;
  bool converged;
};

SingleSu2Search search_su2(const std::function<double(const Matrix2&)>& objective, const OptimizerConfig& cfg) {
  const Su2Grid grid = make_su2_grid(cfg.coarse_grid_points_per_angle);
  std::vector<double> values(grid.matrices.size());
  for (std::size_t i = 0; i < grid.matrices.size(); ++i) values[i] = objective(grid.matrices[i]);
  std::vector<std::vector<double>> starts;
  const int p = cfg.coarse_grid_points_per_angle;
  for (std::size_t i : basin_starts(values, {p, p, p}, {true, false, true}, cfg.restarts)) {
    starts.emplace_back(grid.angles[i].begin(), grid.angles[i].end());
  }
  const auto outcome =
      refine([&](std::span<const double> x) { return objective(su2_fixed(x)); }, starts, grid.spacing, cfg);
  return {{outcome.x[0], outcome.x[1], outcome.x[2]}, outcome.value, outcome.iterations, outcome.converged};
}

}  // namespace

CMatrix su2_matrix(const SU2Params& params) { return CMatrix(su2_fixed(params.alpha, params.beta, params.delta)); }

Ket bloch_ket(double theta, double phi) {
  Ket k(2);
  k(0) = std::cos(theta / 2.0);
  k(1) = std::polar(std::sin(theta / 2.0), phi);
  return k;
}

void validate(const OptimizerConfig& cfg) {
  if (cfg.coarse_grid_points_per_angle < 1 || cfg.max_iterations < 1 || cfg.restarts < 1 ||
      !(cfg.refine_tolerance > 0.0)) {
    throw Error(ErrorCode::OutOfRange, "optimizer settings must be positive");
  }
}

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start, std::span<const double> step,
                             int max_iterations, double tolerance) {
  const std::size_t n = start.size();
  if (step.size() != n || n == 0) throw Error(ErrorCode::DimensionMismatch, "simplex step size per coordinate");
  constexpr double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;

  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step[i];
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  const auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  };
  const auto along = [&](const std::vector<double>& centroid, const std::vector<double>& worst, double t) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + t * (centroid[i] - worst[i]);
    return x;
  };

  int iterations = 0;
  bool converged = false;
  while (iterations < max_iterations) {
    sort_simplex();
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];
    if (values[worst] - values[best] <= tolerance) {
      converged = true;
      break;
    }
    ++iterations;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[k]][i] / static_cast<double>(n);
    }

    const auto xr = along(centroid, simplex[worst], reflect);
    const double fr = f(xr);
    if (fr < values[best]) {
      const auto xe = along(centroid, simplex[worst], expand);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      simplex[worst] = xr;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const auto xc = along(centroid, simplex[worst], outside ? contract : -contract);
    const double fc = f(xc);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = xc;
      values[worst] = fc;
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      const std::size_t i = order[k];
      for (std::size_t d = 0; d < n; ++d) simplex[i][d] = simplex[best][d] + shrink * (simplex[i][d] - simplex[best][d]);
      values[i] = f(simplex[i]);
    }
  }
  sort_simplex();
  return {simplex[order.front()], values[order.front()], iterations, converged};
}

OptimizationResult maximize_ind_ind(const SchmidtState& s, const KrausChannel& ch, const OptimizerConfig& cfg) {
  validate(cfg);
  const auto kraus = kraus_fixed(ch);
  const double l0 = s.lambda0;
  const double l1 = s.lambda1;
  // <psi|(V A_k U x I)|psi> = lambda0 (V A_k U)_00 + lambda1 (V A_k U)_11 for the effective state.
  const auto objective_uv = [&](const Matrix2& u, const Matrix2& v) {
    double f = 0.0;
    for (const auto& a : kraus) {
      const Matrix2 m = v * a * u;
      f += std::norm(l0 * m(0, 0) + l1 * m(1, 1));
    }
    return f;
  };

  const Su2Grid grid = make_su2_grid(cfg.coarse_grid_points_per_angle);
  const std::size_t g = grid.matrices.size();
  std::vector<double> values(g * g);
  std::vector<Matrix2> applied(kraus.size());
  for (std::size_t iu = 0; iu < g; ++iu) {
    for (std::size_t k = 0; k < kraus.size(); ++k) applied[k] = kraus[k] * grid.matrices[iu];
    for (std::size_t iv = 0; iv < g; ++iv) {
      const Matrix2& v = grid.matrices[iv];
      double f = 0.0;
      for (const auto& b : applied) {
        const cplx d0 = v(0, 0) * b(0, 0) + v(0, 1) * b(1, 0);
        const cplx d1 = v(1, 0) * b(0, 1) + v(1, 1) * b(1, 1);
        f += std::norm(l0 * d0 + l1 * d1);
      }
      values[iu * g + iv] = f;
    }
  }
  std::vector<std::vector<double>> starts;
  for (std::size_t i : best_indices(values, cfg.restarts)) {
    const auto& u = grid.angles[i / g];
    const auto& v = grid.angles[i % g];
    starts.push_back({u[0], u[1], u[2], v[0], v[1], v[2]});
  }
  std::array<double, 6> spacing{};
  for (int i = 0; i < 3; ++i) spacing[i] = spacing[i + 3] = grid.spacing[i];

  const auto outcome = refine(
      [&](std::span<const double> x) { return objective_uv(su2_fixed(x.subspan(0, 3)), su2_fixed(x.subspan(3, 3))); },
      starts, spacing, cfg);
  const std::span<const double> x(outcome.x);
  const CMatrix u = CMatrix(su2_fixed(x.subspan(0, 3)));
  const CMatrix v = CMatrix(su2_fixed(x.subspan(3, 3)));
  return {evaluate_scheme(s, ch, u, v, SchemeKind::IndInd), outcome.value, u, v, outcome.x, outcome.iterations,
          outcome.converged};
}

OptimizationResult maximize_ind_col(const SchmidtState& s, const KrausChannel& ch, const OptimizerConfig& cfg) {
  validate(cfg);
  const auto kraus = kraus_fixed(ch);
  const Matrix2 d = Eigen::Vector2cd(std::sqrt(s.lambda0), std::sqrt(s.lambda1)).asDiagonal();
  std::vector<Matrix2> w(kraus.size());
  const auto objective = [&](const Matrix2& u) {
    for (std::size_t k = 0; k < kraus.size(); ++k) w[k] = kraus[k] * u * d;
    return top_eigenvalue_of_mixture(w);
  };
  const auto found = search_su2(objective, cfg);
  const CMatrix u = CMatrix(su2_fixed(found.angles[0], found.angles[1], found.angles[2]));
  const auto completion = best_post_for_pre(s, ch, u);
  return {evaluate_scheme(s, ch, u, completion.collective_op, SchemeKind::IndCol),
          found.objective,
          u,
          completion.collective_op,
          {found.angles.begin(), found.angles.end()},
          found.iterations,
          found.converged};
}

OptimizationResult maximize_col_ind(const SchmidtState& s, const KrausChannel& ch, const OptimizerConfig& cfg) {
  validate(cfg);
  const auto kraus = kraus_fixed(ch);
  const Matrix2 d = Eigen::Vector2cd(std::sqrt(s.lambda0), std::sqrt(s.lambda1)).asDiagonal();
  std::vector<Matrix2> w(kraus.size());
  const auto objective = [&](const Matrix2& v) {
    const Matrix2 v_adj = v.adjoint();
    for (std::size_t k = 0; k < kraus.size(); ++k) w[k] = kraus[k].adjoint() * v_adj * d;
    return top_eigenvalue_of_mixture(w);
  };
  const auto found = search_su2(objective, cfg);
  const CMatrix v = CMatrix(su2_fixed(found.angles[0], found.angles[1], found.angles[2]));
  const auto completion = best_pre_for_post(s, ch, v);
  return {evaluate_scheme(s, ch, completion.collective_op, v, SchemeKind::ColInd),
          found.objective,
          completion.collective_op,
          v,
          {found.angles.begin(), found.angles.end()},
          found.iterations,
          found.converged};
}

EntropyMinimum minimize_output_entropy(const KrausChannel& ch, const OptimizerConfig& cfg) {
  validate(cfg);
  const auto kraus = kraus_fixed(ch);
  const auto objective = [&](std::span<const double> x) {
    Eigen::Vector2cd in;
    in << std::cos(x[0] / 2.0), std::polar(std::sin(x[0] / 2.0), x[1]);
    Matrix2 out = Matrix2::Zero();
    for (const auto& a : kraus) {
      const Eigen::Vector2cd v = a * in;
      out.noalias() += v * v.adjoint();
    }
    const double mean = 0.5 * (out(0, 0).real() + out(1, 1).real());
    const double half_gap = 0.5 * (out(0, 0).real() - out(1, 1).real());
    return mean + std::sqrt(half_gap * half_gap + std::norm(out(0, 1)));
  };

  const int points = cfg.coarse_grid_points_per_angle;
  const auto thetas = closed_grid(points, pi);
  const auto phis = phase_grid(points);
  std::vector<std::array<double, 2>> cells;
  std::vector<double> values;
  for (double t : thetas) {
    for (double p : phis) {
      cells.push_back({t, p});
      values.push_back(objective(cells.back()));
    }
  }
  std::vector<std::vector<double>> starts;
  for (std::size_t i : basin_starts(values, {points, points}, {false, true}, cfg.restarts)) {
    starts.push_back({cells[i][0], cells[i][1]});
  }
  const std::array<double, 2> spacing{points > 1 ? pi / (points - 1) : pi / 2.0, 2.0 * pi / points};
  const auto outcome = refine(objective, starts, spacing, cfg);

  const Ket upsilon = bloch_ket(outcome.x[0], outcome.x[1]);
  return {upsilon, largest_eigenvalue(apply_channel(ch, upsilon * upsilon.adjoint())), outcome.x, outcome.iterations,
          outcome.converged};
}

}  // namespace qprotect
