#pragma once

// Command implementations behind the qprotect executable. Kept in a library
// so the tests can drive them without spawning processes.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qprotect/channels.hpp"
#include "qprotect/optimize.hpp"
#include "qprotect/schemes.hpp"
#include "qprotect/states.hpp"

namespace qprotect::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Inclusive arithmetic grid "start:stop:step". Points are start + i*step;
/// the last point snaps to stop when it lands within round-off of it.
struct GridRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
};

GridRange parse_grid(const std::string& text);

enum class SweepMode { Analytic, Constructed, Numeric, All };
SweepMode parse_sweep_mode(const std::string& text);

std::vector<ChannelKind> parse_channel_list(const std::string& text);
std::vector<SchemeKind> parse_scheme_list(const std::string& text);

struct SweepSpec {
  std::vector<ChannelKind> channels;
  std::vector<SchemeKind> schemes;
  GridRange p_grid{0.0, 1.0, 0.05};
  GridRange slin_grid{0.0, 0.5, 0.025};
  SweepMode mode = SweepMode::Constructed;
  int jobs = 1;
  OptimizerConfig optimizer;
};

struct SweepRow {
  ChannelKind channel;
  SchemeKind scheme;
  double p;
  double s_lin;
  double lambda0;
  double f_analytic;
  std::optional<double> f_constructed;
  std::optional<double> f_numeric;
  double gap_ic_minus_ii;
};

/// Validates the grids (GridOutOfRange) and evaluates every cell. Rows come
/// back in channel, scheme, p, s_lin order regardless of `jobs`.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr const char* kCsvHeader =
    "channel,scheme,p,s_lin,lambda0,f_analytic,f_constructed,f_numeric,gap_ic_minus_ii";

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct CheckResult {
  std::string name;
  double max_error;
  bool passed;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Closed forms against constructed plans plus the equivalence, ordering,
/// monotonicity and identity-dominance property checks. A check passes when
/// its maximal error is strictly below `tol`.
VerifyReport run_verify(const std::vector<ChannelKind>& channels, double tol);
void print_verify(std::ostream& out, const VerifyReport& report, double tol);

struct RankRow {
  int kappa;
  double s_lin;
  double s_vn;
  double s_min;
  double f_ind_col;
};

std::vector<RankRow> rank_report(const JointPureState& state, ChannelKind channel, double p);
void print_rank(std::ostream& out, const std::vector<RankRow>& rows, ChannelKind channel, double p);

void print_demo(std::ostream& out, ChannelKind channel, double p, double lambda0, const OptimizerConfig& cfg);

/// Full command-line entry point; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qprotect::cli
