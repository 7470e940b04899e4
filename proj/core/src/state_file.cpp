#include "qprotect/state_file.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "qprotect/error.hpp"
#include "qprotect/tolerances.hpp"

namespace qprotect {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

double parse_real(const std::string& token, int line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) fail(line, "invalid number '" + token + "'");
  return value;
}

}  // namespace

LoadedState parse_state(std::istream& in) {
  std::map<std::size_t, cplx> amplitudes;
  int num_qubits = 0;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() != 3) fail(line, "expected '<bitstring> <re> <im>'");

    const std::string& bits = tokens[0];
    if (bits.find_first_not_of("01") != std::string::npos) fail(line, "bitstring may only contain 0 and 1");
    const int n = static_cast<int>(bits.size());
    if (n < kMinQubits || n > kMaxQubits) fail(line, "bitstring length must lie in [2, 10]");
    if (num_qubits == 0) num_qubits = n;
    if (n != num_qubits) fail(line, "bitstring length differs from earlier lines");

    std::size_t index = 0;
    for (char c : bits) index = (index << 1) | static_cast<std::size_t>(c == '1');
    if (amplitudes.count(index) != 0) fail(line, "duplicate bitstring " + bits);
    amplitudes[index] = cplx(parse_real(tokens[1], line), parse_real(tokens[2], line));
  }
  if (num_qubits == 0) fail(line, "no amplitudes found");

  Ket amps = Ket::Zero(Eigen::Index{1} << num_qubits);
  for (const auto& [index, value] : amplitudes) amps(static_cast<Eigen::Index>(index)) = value;
  const double norm = amps.norm();
  if (norm == 0.0) fail(line, "state has zero norm");

  std::optional<std::string> warning;
  if (std::abs(norm - 1.0) > tol::kStateFileNorm) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "NormalizationWarning: input norm %.12g renormalized to 1", norm);
    warning = buf;
  }
  return LoadedState{JointPureState(num_qubits, amps / norm), norm, warning};
}

LoadedState load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open state file " + path.string());
  return parse_state(in);
}

void write_state(std::ostream& out, const JointPureState& state) {
  const int n = state.num_qubits();
  for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i) {
    const cplx a = state.amplitudes()(i);
    if (a == cplx(0.0, 0.0)) continue;
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int b = 0; b < n; ++b) {
      if ((i >> (n - 1 - b)) & 1) bits[static_cast<std::size_t>(b)] = '1';
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, " %.17g %.17g\n", a.real(), a.imag());
    out << bits << buf;
  }
}

}  // namespace qprotect
