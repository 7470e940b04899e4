#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qprotect/error.hpp"
#include "qprotect/state_file.hpp"

namespace qprotect::cli {

namespace {

constexpr double kGridSlack = 1e-12;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

void require_within(const GridRange& g, double lo, double hi, const char* what) {
  if (!(g.step > 0.0) || g.stop < g.start || g.start < lo - kGridSlack || g.stop > hi + kGridSlack) {
    throw Error(ErrorCode::GridOutOfRange, std::string(what) + " grid must satisfy " + fmt12(lo) +
                                               " <= start <= stop <= " + fmt12(hi) + " and step > 0");
  }
}

double clamp_to(double v, double lo, double hi) { return std::clamp(v, lo, hi); }

// Grid 1 of the acceptance suite: p in {0, 0.1, ..., 1}, lambda0 in {0.5, 0.55, ..., 1}.
std::vector<double> p_grid_coarse() {
  std::vector<double> v;
  for (int i = 0; i <= 10; ++i) v.push_back(i / 10.0);
  return v;
}

std::vector<double> lambda_grid_coarse() {
  std::vector<double> v;
  for (int j = 0; j <= 10; ++j) v.push_back((10 + j) / 20.0);
  return v;
}

CMatrix identity_for(SchemeKind scheme, bool pre) {
  const bool individual = pre ? has_individual_pre(scheme) : has_individual_post(scheme);
  return identity(individual ? 2 : 4);
}

SweepRow evaluate_row(const SweepSpec& spec, ChannelKind channel, SchemeKind scheme, double p, double s_lin) {
  SweepRow row{channel, scheme, p, s_lin, lambda0_from_linear_entropy(s_lin), 0.0, std::nullopt, std::nullopt, 0.0};
  row.f_analytic = analytic_fidelity({channel, p, s_lin}, scheme);
  row.gap_ic_minus_ii =
      analytic_fidelity({channel, p, s_lin}, SchemeKind::IndCol) - analytic_fidelity({channel, p, s_lin}, SchemeKind::IndInd);

  const bool constructed = spec.mode == SweepMode::Constructed || spec.mode == SweepMode::All;
  const bool numeric = spec.mode == SweepMode::Numeric || spec.mode == SweepMode::All;
  if (!constructed && !numeric) return row;

  const KrausChannel ch = make_named(channel, p);
  const SchmidtState st = from_lambda(row.lambda0);
  if (constructed) {
    const ProtectionPlan plan = best_plan(st, ch, scheme);
    row.f_constructed = evaluate_scheme(st, ch, plan.pre_op, plan.post_op, scheme);
  }
  if (numeric) {
    switch (scheme) {
      case SchemeKind::IndInd: row.f_numeric = maximize_ind_ind(st, ch, spec.optimizer).fidelity; break;
      case SchemeKind::IndCol: row.f_numeric = maximize_ind_col(st, ch, spec.optimizer).fidelity; break;
      case SchemeKind::ColInd: row.f_numeric = maximize_col_ind(st, ch, spec.optimizer).fidelity; break;
      case SchemeKind::ColCol: {
        // Same Kraus set without the name, so the input state is searched for.
        const KrausChannel anonymous(ch.kraus(), ChannelKind::Custom, std::nullopt);
        const ProtectionPlan plan = optimal_plan_col_col(st, anonymous, spec.optimizer);
        row.f_numeric = evaluate_scheme(st, ch, plan.pre_op, plan.post_op, scheme);
        break;
      }
    }
  }
  return row;
}

std::string format_complex(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.6f%+.6fi", z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag());
  return buf;
}

void print_matrix(std::ostream& out, const std::string& label, const CMatrix& m) {
  out << "  " << label << " (" << m.rows() << "x" << m.cols() << "):\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << "    [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "  " : "") << format_complex(m(i, j));
    out << "]\n";
  }
}

}  // namespace

std::vector<double> GridRange::points() const {
  if (!(step > 0.0)) throw Error(ErrorCode::GridOutOfRange, "grid step must be positive");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> v;
  for (long i = 0; i <= count; ++i) v.push_back(start + static_cast<double>(i) * step);
  if (!v.empty() && std::abs(v.back() - stop) <= 1e-9 * step) v.back() = stop;
  return v;
}

GridRange parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  try {
    if (parts.size() == 1) {
      const double v = std::stod(parts[0]);
      return {v, v, 1.0};
    }
    if (parts.size() == 3) return {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ParseError, "grid must look like start:stop:step or a single value, got '" + text + "'");
}

SweepMode parse_sweep_mode(const std::string& text) {
  if (text == "analytic") return SweepMode::Analytic;
  if (text == "constructed") return SweepMode::Constructed;
  if (text == "numeric") return SweepMode::Numeric;
  if (text == "all") return SweepMode::All;
  throw Error(ErrorCode::ParseError, "unknown sweep mode '" + text + "'");
}

std::vector<ChannelKind> parse_channel_list(const std::string& text) {
  if (text == "all") return {std::begin(kNamedChannels), std::end(kNamedChannels)};
  std::vector<ChannelKind> out;
  for (const auto& name : split(text, ',')) {
    const ChannelKind kind = parse_channel_kind(name);
    if (kind == ChannelKind::Custom) throw Error(ErrorCode::ParseError, "custom channels cannot be swept");
    out.push_back(kind);
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty channel list");
  return out;
}

std::vector<SchemeKind> parse_scheme_list(const std::string& text) {
  if (text == "all") return {kAllSchemes.begin(), kAllSchemes.end()};
  std::vector<SchemeKind> out;
  for (const auto& name : split(text, ',')) out.push_back(parse_scheme_kind(name));
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty scheme list");
  return out;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  require_within(spec.p_grid, 0.0, 1.0, "p");
  require_within(spec.slin_grid, 0.0, 0.5, "s_lin");
  validate(spec.optimizer);

  struct Cell {
    ChannelKind channel;
    SchemeKind scheme;
    double p;
    double s;
  };
  std::vector<Cell> cells;
  const auto ps = spec.p_grid.points();
  const auto ss = spec.slin_grid.points();
  for (ChannelKind c : spec.channels) {
    for (SchemeKind k : spec.schemes) {
      for (double p : ps) {
        for (double s : ss) cells.push_back({c, k, clamp_to(p, 0.0, 1.0), clamp_to(s, 0.0, 0.5)});
      }
    }
  }

  std::vector<std::optional<SweepRow>> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        rows[i] = evaluate_row(spec, cells[i].channel, cells[i].scheme, cells[i].p, cells[i].s);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, spec.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<SweepRow> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(*r);
  return out;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.channel) << ',' << to_string(r.scheme) << ',' << fmt12(r.p) << ',' << fmt12(r.s_lin) << ','
        << fmt12(r.lambda0) << ',' << fmt12(r.f_analytic) << ','
        << (r.f_constructed ? fmt12(*r.f_constructed) : std::string()) << ','
        << (r.f_numeric ? fmt12(*r.f_numeric) : std::string()) << ',' << fmt12(r.gap_ic_minus_ii) << '\n';
  }
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport run_verify(const std::vector<ChannelKind>& channels, double tol) {
  double constructed_err = 0.0;
  double self_err = 0.0;
  double equivalence_err = 0.0;
  double ordering_err = 0.0;
  double monotone_err = 0.0;
  double identity_err = 0.0;

  for (ChannelKind kind : channels) {
    for (double p : p_grid_coarse()) {
      const KrausChannel ch = make_named(kind, p);
      for (double l0 : lambda_grid_coarse()) {
        const SchmidtState st = from_lambda(l0);
        const double s_lin = linear_entropy_from_lambda0(l0);
        std::array<double, 4> f{};
        for (std::size_t i = 0; i < kAllSchemes.size(); ++i) {
          const SchemeKind scheme = kAllSchemes[i];
          const ProtectionPlan plan = best_plan(st, ch, scheme);
          f[i] = evaluate_scheme(st, ch, plan.pre_op, plan.post_op, scheme);
          constructed_err = std::max(constructed_err, std::abs(analytic_fidelity({kind, p, s_lin}, scheme) - f[i]));
          self_err = std::max(self_err, std::abs(plan.fidelity - f[i]));
          const double unprotected = evaluate_scheme(st, ch, identity_for(scheme, true), identity_for(scheme, false), scheme);
          identity_err = std::max(identity_err, unprotected - f[i]);
        }
        equivalence_err = std::max(equivalence_err, std::abs(f[1] - f[2]));
        ordering_err = std::max({ordering_err, f[0] - f[1], f[1] - f[3], f[2] - f[3]});
      }
    }
    // Closed forms must not increase with the linear entropy at fixed p > 0.
    for (int i = 1; i <= 20; ++i) {
      const double p = i / 20.0;
      for (SchemeKind scheme : {SchemeKind::IndInd, SchemeKind::IndCol}) {
        double previous = analytic_fidelity({kind, p, 0.0}, scheme);
        for (int j = 1; j <= 20; ++j) {
          const double current = analytic_fidelity({kind, p, j / 40.0}, scheme);
          monotone_err = std::max(monotone_err, current - previous);
          previous = current;
        }
      }
    }
  }

  VerifyReport report;
  const auto add = [&](const char* name, double err) { report.checks.push_back({name, err, err < tol}); };
  add("analytic vs constructed max |ΔF|", constructed_err);
  add("plan self-consistency max |ΔF|", self_err);
  add("equivalence max |ΔF|", equivalence_err);
  add("ordering chain max violation", ordering_err);
  add("monotonicity max violation", monotone_err);
  add("identity dominance max deficit", identity_err);
  return report;
}

void print_verify(std::ostream& out, const VerifyReport& report, double tol) {
  char buf[160];
  for (const auto& c : report.checks) {
    std::snprintf(buf, sizeof buf, "%-36s %.3e  %s\n", c.name.c_str(), std::max(c.max_error, 0.0),
                  c.passed ? "ok" : "FAIL");
    out << buf;
  }
  if (report.passed()) {
    out << "all checks within tolerance " << fmt12(tol) << '\n';
    return;
  }
  for (const auto& c : report.checks) {
    if (!c.passed) out << "failed check: " << c.name << '\n';
  }
}

std::vector<RankRow> rank_report(const JointPureState& state, ChannelKind channel, double p) {
  const KrausChannel ch = make_named(channel, p);
  std::vector<RankRow> rows;
  for (const auto& r : rank_qubits(state)) {
    const DensityMatrix reduced = reduced_state(state, r.kappa);
    const SchmidtState st = schmidt_decompose(state, r.kappa);
    rows.push_back({r.kappa, r.linear_entropy, von_neumann_entropy(reduced), min_entropy(reduced),
                    optimal_plan_ind_col(st, ch).fidelity});
  }
  return rows;
}

void print_rank(std::ostream& out, const std::vector<RankRow>& rows, ChannelKind channel, double p) {
  out << "# channel " << to_string(channel) << ", p = " << fmt12(p) << '\n';
  out << "qubit\tS_lin\tS_vN\tS_min\tF_ind_col\n";
  for (const auto& r : rows) {
    out << r.kappa << '\t' << fmt12(r.s_lin) << '\t' << fmt12(r.s_vn) << '\t' << fmt12(r.s_min) << '\t'
        << fmt12(r.f_ind_col) << '\n';
  }
  if (!rows.empty()) out << "recommended qubit: " << rows.front().kappa << '\n';
}

void print_demo(std::ostream& out, ChannelKind channel, double p, double lambda0, const OptimizerConfig& cfg) {
  const KrausChannel ch = make_named(channel, p);
  const SchmidtState st = from_lambda(lambda0);
  const double s_lin = st.linear_entropy();
  out << "channel " << to_string(channel) << ", p = " << fmt12(p) << ", lambda0 = " << fmt12(lambda0)
      << ", S_lin = " << fmt12(s_lin) << '\n';
  out << "effective basis: |0>|zeta0>, |0>|zeta1>, |1>|zeta0>, |1>|zeta1>; collective operators act as the identity "
         "outside it\n";

  std::array<double, 4> f{};
  for (std::size_t i = 0; i < kAllSchemes.size(); ++i) {
    const SchemeKind scheme = kAllSchemes[i];
    const ProtectionPlan plan = best_plan(st, ch, scheme, cfg);
    f[i] = plan.fidelity;
    out << '\n' << to_string(scheme) << ": F = " << fmt12(plan.fidelity)
        << " (closed form " << fmt12(analytic_fidelity({channel, p, s_lin}, scheme)) << ")\n";
    if (scheme == SchemeKind::IndCol) {
      const double upsilon = top_eigenvector_angle(channel, p, lambda0);
      out << "  upsilon = " << fmt12(upsilon) << ", gamma = " << fmt12(post_rotation_angle(upsilon, lambda0))
          << ", V_col = W(2 gamma)\n";
    }
    if (scheme == SchemeKind::ColCol) {
      out << "  varsigma = " << fmt12(disentangling_angle(lambda0)) << '\n';
    }
    print_matrix(out, "pre", plan.pre_op);
    print_matrix(out, "post", plan.post_op);
  }
  constexpr double slack = 1e-9;
  const bool chain = f[0] <= f[1] + slack && std::abs(f[1] - f[2]) <= slack && f[1] <= f[3] + slack;
  out << "\nfidelities ind_ind / ind_col / col_ind / col_col: " << fmt12(f[0]) << " / " << fmt12(f[1]) << " / "
      << fmt12(f[2]) << " / " << fmt12(f[3]) << '\n';
  out << "ordering chain F_ii <= F_ic = F_ci <= F_cc: " << (chain ? "holds" : "VIOLATED") << '\n';
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"State-dependent unitary protection of multi-qubit states against single-qubit decoherence"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  std::uint64_t seed = 0;
  int jobs = 1;
  app.add_option("--seed", seed, "Seed for the optimizer's randomized restarts");
  app.add_option("--jobs", jobs, "Grid cells evaluated concurrently")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Check closed forms and properties over the verification grid");
  std::string verify_channels = "all";
  double verify_tol = 1e-9;
  verify->add_option("--channels", verify_channels, "all or comma-separated channel names");
  verify->add_option("--tol", verify_tol, "Largest accepted error (checks must stay strictly below)");

  auto* sweep = app.add_subcommand("sweep", "Write fidelity surfaces as CSV");
  std::string sweep_channel = "all";
  std::string sweep_scheme = "all";
  std::string p_grid = "0:1:0.05";
  std::string slin_grid = "0:0.5:0.025";
  std::string mode = "constructed";
  std::string output = "-";
  OptimizerConfig optimizer;
  sweep->add_option("--channel,--channels", sweep_channel, "all or comma-separated channel names");
  sweep->add_option("--scheme,--schemes", sweep_scheme, "all or comma-separated of ind_ind,ind_col,col_ind,col_col");
  sweep->add_option("--p", p_grid, "Decoherence strength grid start:stop:step");
  sweep->add_option("--slin", slin_grid, "Linear entropy grid start:stop:step");
  sweep->add_option("--mode", mode, "analytic, constructed, numeric or all");
  sweep->add_option("--out,-o", output, "Output CSV path, '-' for standard output");
  sweep->add_option("--grid-points", optimizer.coarse_grid_points_per_angle, "Optimizer grid points per angle");
  sweep->add_option("--restarts", optimizer.restarts, "Optimizer restarts");
  sweep->add_option("--max-iterations", optimizer.max_iterations, "Optimizer iteration budget per restart");
  sweep->add_option("--refine-tol", optimizer.refine_tolerance, "Optimizer convergence tolerance");

  auto* rank = app.add_subcommand("rank", "Rank the qubits of a state by robustness to decoherence");
  std::string state_file;
  std::string rank_channel = "dephasing";
  double rank_p = 0.5;
  rank->add_option("state_file", state_file, "State file (<bitstring> <re> <im> per line)")->required();
  rank->add_option("--channel", rank_channel, "Channel acting on the selected qubit");
  rank->add_option("--p", rank_p, "Decoherence strength");

  auto* demo = app.add_subcommand("demo", "Print the four optimal plans for one configuration");
  std::string demo_channel = "dephasing";
  double demo_p = 1.0;
  double demo_lambda0 = 0.75;
  demo->add_option("--channel", demo_channel, "Channel name");
  demo->add_option("--p", demo_p, "Decoherence strength");
  demo->add_option("--lambda0", demo_lambda0, "Largest Schmidt weight in [0.5, 1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << "qprotect 0.1.0\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  optimizer.seed = seed;
  try {
    if (verify->parsed()) {
      const auto report = run_verify(parse_channel_list(verify_channels), verify_tol);
      print_verify(out, report, verify_tol);
      return report.passed() ? kSuccess : kVerificationFailed;
    }
    if (sweep->parsed()) {
      SweepSpec spec;
      spec.channels = parse_channel_list(sweep_channel);
      spec.schemes = parse_scheme_list(sweep_scheme);
      spec.p_grid = parse_grid(p_grid);
      spec.slin_grid = parse_grid(slin_grid);
      spec.mode = parse_sweep_mode(mode);
      spec.jobs = jobs;
      spec.optimizer = optimizer;
      const auto rows = run_sweep(spec);
      if (output == "-") {
        write_csv(out, rows);
      } else {
        std::ofstream file(output, std::ios::binary);
        if (!file) throw Error(ErrorCode::IoError, "cannot write " + output);
        write_csv(file, rows);
        if (!file) throw Error(ErrorCode::IoError, "failed writing " + output);
        err << "wrote " << rows.size() << " rows to " << output << '\n';
      }
      return kSuccess;
    }
    if (rank->parsed()) {
      const LoadedState loaded = load_state_file(state_file);
      if (loaded.warning) err << "warning: " << *loaded.warning << '\n';
      const ChannelKind kind = parse_channel_kind(rank_channel);
      print_rank(out, rank_report(loaded.state, kind, rank_p), kind, rank_p);
      return kSuccess;
    }
    if (demo->parsed()) {
      print_demo(out, parse_channel_kind(demo_channel), demo_p, demo_lambda0, optimizer);
      return kSuccess;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qprotect::cli
