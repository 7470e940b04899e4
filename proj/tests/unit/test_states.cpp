#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "qprotect/error.hpp"
#include "qprotect/state_file.hpp"
#include "qprotect/states.hpp"

using namespace qprotect;

namespace {

JointPureState from_pairs(int n, std::initializer_list<std::pair<int, double>> amps) {
  Ket k = Ket::Zero(1 << n);
  for (const auto& [index, value] : amps) k(index) = value;
  return JointPureState(n, k / k.norm());
}

// Overlap magnitude is 1 iff the states agree up to global phase.
double phase_distance(const JointPureState& a, const JointPureState& b) {
  return 1.0 - std::abs(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace

TEST(JointPureState, Validation) {
  EXPECT_THROW(JointPureState(1, Ket::Ones(2) / std::sqrt(2.0)), Error);
  EXPECT_THROW(JointPureState(11, Ket::Zero(2048)), Error);
  EXPECT_THROW(JointPureState(2, Ket::Ones(3) / std::sqrt(3.0)), Error);
  EXPECT_THROW(JointPureState(2, Ket::Ones(4)), Error);
}

TEST(Schmidt, ProductState) {
  // |0> (x) (|0> + |1>)/sqrt2
  const auto s = schmidt_decompose(from_pairs(2, {{0, 1.0}, {1, 1.0}}), 1);
  EXPECT_NEAR(s.lambda0, 1.0, 1e-14);
  EXPECT_NEAR(s.lambda1, 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.zeta_basis[0].dot(s.zeta_basis[1])), 0.0, 1e-14);
  EXPECT_NEAR(s.zeta_basis[1].norm(), 1.0, 1e-14);
}

TEST(Schmidt, BellState) {
  const auto s = schmidt_decompose(from_pairs(2, {{0, 1.0}, {3, 1.0}}), 1);
  EXPECT_NEAR(s.lambda0, 0.5, 1e-14);
  EXPECT_NEAR(s.lambda1, 0.5, 1e-14);
}

TEST(Schmidt, WState) {
  const auto w = from_pairs(3, {{1, 1.0}, {2, 1.0}, {4, 1.0}});
  for (int kappa = 1; kappa <= 3; ++kappa) {
    const auto s = schmidt_decompose(w, kappa);
    EXPECT_NEAR(s.lambda0, 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(s.linear_entropy(), oracle::kWStateSlin, 1e-14);
  }
}

TEST(Schmidt, InvalidIndex) {
  const auto bell = from_pairs(2, {{0, 1.0}, {3, 1.0}});
  for (int kappa : {0, 3, -1}) {
    try {
      schmidt_decompose(bell, kappa);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidIndex);
    }
  }
}

TEST(Schmidt, RoundTripRandomStates) {
  double worst = 0.0;
  double worst_weight = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + i % 4;
    const auto state = random_state(n, static_cast<std::uint64_t>(i));
    for (int kappa = 1; kappa <= n; ++kappa) {
      const auto s = schmidt_decompose(state, kappa);
      EXPECT_GE(s.lambda0, s.lambda1);
      EXPECT_GE(s.lambda1, 0.0);
      EXPECT_NEAR(s.lambda0 + s.lambda1, 1.0, 1e-12);
      worst = std::max(worst, phase_distance(reconstruct(s), state));
      worst_weight = std::max(worst_weight, std::abs(s.lambda0 - reduced_state(state, kappa).spectrum()[0]));
    }
  }
  EXPECT_LE(worst, 1e-10);
  EXPECT_LE(worst_weight, 1e-10);
}

TEST(EffectiveState, Examples) {
  EXPECT_LT((effective_state(from_lambda(1.0)) - Eigen::Vector4cd(1, 0, 0, 0)).norm(), 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LT((effective_state(from_lambda(0.5)) - Eigen::Vector4cd(r, 0, 0, r)).norm(), 1e-15);
  EXPECT_LT((effective_state(from_lambda(0.75)) - Eigen::Vector4cd(std::sqrt(0.75), 0, 0, 0.5)).norm(), 1e-15);
}

TEST(FromLambda, RangeAndInversion) {
  EXPECT_NEAR(from_lambda(1.0).linear_entropy(), 0.0, 1e-15);
  EXPECT_NEAR(from_lambda(0.5).linear_entropy(), 0.5, 1e-15);
  EXPECT_NEAR(lambda0_from_linear_entropy(0.375), 0.75, 1e-15);
  for (double l : {0.49, 1.01}) {
    try {
      from_lambda(l);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
    }
  }
  EXPECT_THROW(lambda0_from_linear_entropy(0.6), Error);
  for (int i = 0; i <= 100; ++i) {
    const double l0 = 0.5 + i / 200.0;
    EXPECT_NEAR(lambda0_from_linear_entropy(linear_entropy_from_lambda0(l0)), l0, 1e-7);
  }
}

TEST(RandomState, NormalizedAndDeterministic) {
  const auto a = random_state(2, 7);
  EXPECT_NEAR(a.amplitudes().norm(), 1.0, 1e-12);
  EXPECT_EQ(a.amplitudes(), random_state(2, 7).amplitudes());
  const auto b = random_state(3, 1);
  for (int kappa = 1; kappa <= 3; ++kappa) {
    const double l0 = schmidt_decompose(b, kappa).lambda0;
    EXPECT_GE(l0, 0.5);
    EXPECT_LE(l0, 1.0);
  }
  EXPECT_THROW(random_state(1, 0), Error);
}

TEST(RankQubits, ZeroTimesBell) {
  const auto r = rank_qubits(from_pairs(3, {{0, 1.0}, {3, 1.0}}));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].kappa, 1);
  EXPECT_NEAR(r[0].linear_entropy, 0.0, 1e-14);
  EXPECT_EQ(r[1].kappa, 2);
  EXPECT_EQ(r[2].kappa, 3);
  EXPECT_NEAR(r[1].linear_entropy, 0.5, 1e-14);
  EXPECT_NEAR(r[2].linear_entropy, 0.5, 1e-14);
}

TEST(RankQubits, GhzTies) {
  const auto r = rank_qubits(from_pairs(3, {{0, 1.0}, {7, 1.0}}));
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(r[i].kappa, i + 1);
    EXPECT_NEAR(r[i].linear_entropy, 0.5, 1e-14);
  }
}

TEST(RankQubits, UnbalancedGhz) {
  const auto r = rank_qubits(from_pairs(3, {{0, std::sqrt(0.9)}, {7, std::sqrt(0.1)}}));
  for (const auto& q : r) EXPECT_NEAR(q.linear_entropy, 0.18, 1e-14);
}

TEST(RankQubits, AgreesWithOtherEntropies) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto state = random_state(3 + static_cast<int>(seed % 2), seed);
    const auto ranks = rank_qubits(state);
    for (std::size_t i = 1; i < ranks.size(); ++i) {
      const auto a = reduced_state(state, ranks[i - 1].kappa);
      const auto b = reduced_state(state, ranks[i].kappa);
      EXPECT_LE(von_neumann_entropy(a), von_neumann_entropy(b) + 1e-10);
      EXPECT_LE(min_entropy(a), min_entropy(b) + 1e-10);
    }
  }
}

TEST(RegisterIndex, QubitOneIsMostSignificant) {
  EXPECT_EQ(register_index(3, 1, 1, 0), 4u);
  EXPECT_EQ(register_index(3, 3, 1, 0), 1u);
  EXPECT_EQ(register_index(3, 2, 1, 3), 7u);
  EXPECT_EQ(register_index(3, 2, 0, 2), 4u);
}

TEST(StateFile, ParsesCommentsAndBits) {
  std::istringstream in("# W state\n001 0.57735026918962576 0\n010 0.57735026918962576 0  # inline\n\n100 "
                        "0.57735026918962576 0\n");
  const auto loaded = parse_state(in);
  EXPECT_EQ(loaded.state.num_qubits(), 3);
  EXPECT_FALSE(loaded.warning.has_value());
  EXPECT_NEAR(std::abs(loaded.state.amplitudes()(4)), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(StateFile, NormalizesWithWarning) {
  std::istringstream in("00 1 0\n11 0 1\n");
  const auto loaded = parse_state(in);
  ASSERT_TRUE(loaded.warning.has_value());
  EXPECT_NE(loaded.warning->find("NormalizationWarning"), std::string::npos);
  EXPECT_NEAR(loaded.input_norm, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(loaded.state.amplitudes()(3).imag(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(StateFile, ReportsLineNumbers) {
  const auto message_for = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_state(in);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message_for("00 1 0\n1x 0 0\n").find("line 2"), std::string::npos);
  EXPECT_NE(message_for("00 1 0\n011 0 0\n").find("line 2"), std::string::npos);
  EXPECT_NE(message_for("# c\n00 1 0\n00 1 0\n").find("line 3"), std::string::npos);
  EXPECT_NE(message_for("00 abc 0\n").find("line 1"), std::string::npos);
  EXPECT_NE(message_for("00 1\n").find("line 1"), std::string::npos);
  EXPECT_NE(message_for("00 0 0\n"), "no error");
  EXPECT_NE(message_for(""), "no error");
}

TEST(StateFile, MissingFile) {
  try {
    load_state_file("/nonexistent/state.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

TEST(StateFile, WriteRoundTrip) {
  const auto state = random_state(4, 99);
  std::stringstream buf;
  write_state(buf, state);
  const auto loaded = parse_state(buf);
  EXPECT_FALSE(loaded.warning.has_value());
  EXPECT_LT((loaded.state.amplitudes() - state.amplitudes()).norm(), 1e-15);
}
