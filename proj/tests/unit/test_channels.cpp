#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qprotect/channels.hpp"
#include "qprotect/error.hpp"
#include "qprotect/optimize.hpp"

using namespace qprotect;

namespace {

CMatrix random_density(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  CMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
  CMatrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

CMatrix projector(const Ket& k) { return k * k.adjoint(); }

Ket plus() { return Eigen::Vector2cd(1.0, 1.0) / std::sqrt(2.0); }

}  // namespace

TEST(Depolarizing, MatchesMapAction) {
  std::mt19937_64 rng(1);
  for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const auto ch = make_depolarizing(p);
    for (int i = 0; i < 20; ++i) {
      const CMatrix rho = random_density(rng, 2);
      const CMatrix expected = (1.0 - p) * rho + p * 0.5 * identity(2) * rho.trace();
      EXPECT_LT(max_abs(apply_channel(ch, rho) - expected), 1e-12);
    }
  }
}

TEST(Depolarizing, Examples) {
  EXPECT_LT(max_abs(apply_channel(make_depolarizing(1.0), projector(basis_ket(2, 0))) - 0.5 * identity(2)), 1e-15);
  EXPECT_NEAR(apply_channel(make_depolarizing(0.5), projector(plus()))(0, 1).real(), 0.25, 1e-15);
}

TEST(Dephasing, Examples) {
  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = 0.3;
  diag(1, 1) = 0.7;
  for (double p : {0.0, 0.4, 1.0}) EXPECT_EQ(apply_channel(make_dephasing(p), diag), diag);
  EXPECT_LT(max_abs(apply_channel(make_dephasing(1.0), projector(plus())) - 0.5 * identity(2)), 1e-15);
  EXPECT_NEAR(apply_channel(make_dephasing(0.3), projector(plus()))(0, 1).real(), 0.35, 1e-15);
}

TEST(AmplitudeDamping, ExactKraus) {
  const auto ch = make_amplitude_damping(0.36);
  ASSERT_EQ(ch.kraus().size(), 2u);
  EXPECT_EQ(ch.kraus()[0](1, 1), cplx(0.8));
  EXPECT_EQ(ch.kraus()[1](0, 1), cplx(0.6));
  EXPECT_EQ(ch.kraus()[1](1, 0), cplx(0.0));
}

TEST(AmplitudeDamping, Examples) {
  const CMatrix g = projector(basis_ket(2, 0));
  const CMatrix e = projector(basis_ket(2, 1));
  EXPECT_LT(max_abs(apply_channel(make_amplitude_damping(0.7), g) - g), 1e-15);
  EXPECT_LT(max_abs(apply_channel(make_amplitude_damping(1.0), e) - g), 1e-15);
  EXPECT_LT(max_abs(apply_channel(make_amplitude_damping(0.5), e) - 0.5 * identity(2)), 1e-15);
}

TEST(NamedChannels, StrengthOutOfRange) {
  for (double p : {-0.1, 1.1, std::nan("")}) {
    for (ChannelKind k : kNamedChannels) {
      try {
        make_named(k, p);
        FAIL();
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::StrengthOutOfRange);
      }
    }
  }
}

TEST(NamedChannels, Names) {
  for (ChannelKind k : kNamedChannels) EXPECT_EQ(parse_channel_kind(to_string(k)), k);
  EXPECT_THROW(parse_channel_kind("bitflip"), Error);
}

TEST(Dual, HermitianKrausSetsAreSelfDual) {
  std::mt19937_64 rng(2);
  for (double p : {0.25, 0.8}) {
    for (const auto& ch : {make_depolarizing(p), make_dephasing(p)}) {
      const auto d = dual(ch);
      EXPECT_EQ(d.kind(), ChannelKind::Custom);
      const CMatrix rho = random_density(rng, 2);
      EXPECT_LT(max_abs(apply_channel(d, rho) - apply_channel(ch, rho)), 1e-14);
    }
  }
}

TEST(Dual, AmplitudeDampingGroundState) {
  const double p = 0.4;
  CMatrix expected = projector(basis_ket(2, 0));
  expected(1, 1) = p;
  EXPECT_LT(max_abs(apply_channel(dual(make_amplitude_damping(p)), projector(basis_ket(2, 0))) - expected), 1e-15);
}

TEST(Dual, IsUnitalAndInvolutive) {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ch = random_cptp(seed, 1 + static_cast<int>(seed % 4));
    EXPECT_LT(max_abs(apply_channel(dual(ch), identity(2)) - identity(2)), 1e-10);
    const CMatrix rho = random_density(rng, 2);
    EXPECT_LT(max_abs(apply_channel(dual(dual(ch)), rho) - apply_channel(ch, rho)), 1e-12);
  }
}

TEST(ValidateCptp, Cases) {
  for (ChannelKind k : kNamedChannels)
    for (double p : {0.0, 0.33, 1.0}) EXPECT_TRUE(validate_cptp(make_named(k, p)));
  EXPECT_FALSE(validate_cptp(KrausChannel({0.5 * identity(2)}, ChannelKind::Custom, std::nullopt)));
  EXPECT_TRUE(validate_cptp(random_cptp(9, 3)));
}

TEST(RandomCptp, DeterministicAndTracePreserving) {
  const auto a = random_cptp(1, 2);
  const auto b = random_cptp(1, 2);
  EXPECT_TRUE(validate_cptp(a));
  ASSERT_EQ(a.kraus().size(), b.kraus().size());
  for (std::size_t i = 0; i < a.kraus().size(); ++i) EXPECT_EQ(a.kraus()[i], b.kraus()[i]);

  const auto c = random_cptp(2, 4);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    EXPECT_NEAR(std::abs(apply_channel(c, random_density(rng, 2)).trace() - 1.0), 0.0, 1e-10);
  }
}

TEST(ApplyOnQ, IdentityChannel) {
  std::mt19937_64 rng(12);
  const CMatrix rho = random_density(rng, 4);
  for (ChannelKind k : kNamedChannels) EXPECT_LT(max_abs(apply_on_q(make_named(k, 0.0), rho) - rho), 1e-15);
}

TEST(ApplyOnQ, MatchesMapForms) {
  std::mt19937_64 rng(13);
  for (double p : {0.1, 0.5, 1.0}) {
    const CMatrix psi = oracle::psi_projector(0.75);
    EXPECT_LT(max_abs(apply_on_q(make_depolarizing(p), psi) - oracle::depolarize_q(psi, p)), 1e-14);
    const CMatrix dephased = apply_on_q(make_dephasing(p), psi);
    EXPECT_LT(max_abs(dephased - oracle::dephase_q(psi, p)), 1e-14);
    EXPECT_NEAR(dephased(0, 3).real(), (1.0 - p) * std::sqrt(0.75 * 0.25), 1e-15);
    const CMatrix rho = random_density(rng, 4);
    EXPECT_LT(max_abs(apply_on_q(make_amplitude_damping(p), rho) - oracle::damp_q(rho, p)), 1e-14);
  }
}

TEST(ApplyOnQ, RejectsWrongDimension) {
  try {
    apply_on_q(make_dephasing(0.2), CMatrix(identity(2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidState);
  }
}

TEST(ApplyOnQ, StaysPositive) {
  std::mt19937_64 rng(14);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto ch = random_cptp(seed, 1 + static_cast<int>(seed % 4));
    const DensityMatrix out = apply_on_q(ch, DensityMatrix(random_density(rng, 4)));
    for (const auto& pair : hermitian_eig(out.matrix())) EXPECT_GE(pair.value, -1e-10);
  }
}

TEST(ApplyOnQubit, AgreesWithEmbedding) {
  std::mt19937_64 rng(15);
  const CMatrix rho = random_density(rng, 8);
  const auto ch = make_amplitude_damping(0.3);
  for (int kappa = 1; kappa <= 3; ++kappa) {
    CMatrix expected = CMatrix::Zero(8, 8);
    for (const auto& a : ch.kraus()) {
      const CMatrix big = embed_single_qubit(a, 3, kappa);
      expected += big * rho * big.adjoint();
    }
    EXPECT_LT(max_abs(apply_on_qubit(ch, rho, 3, kappa) - expected), 1e-14);
  }
  // Qubit 1 is the most significant factor.
  EXPECT_LT(max_abs(embed_single_qubit(pauli_x(), 2, 1) - oracle::kron(pauli_x(), identity(2))), 1e-15);
  EXPECT_LT(max_abs(embed_single_qubit(pauli_x(), 2, 2) - oracle::kron(identity(2), pauli_x())), 1e-15);
}

TEST(Depolarizing, UnitaryCovariance) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const CMatrix u = su2_matrix({angle(rng), angle(rng), angle(rng)});
    const CMatrix rho = random_density(rng, 2);
    const auto ch = make_depolarizing(unit(rng));
    worst = std::max(worst, max_abs(apply_channel(ch, u * rho * u.adjoint()) - u * apply_channel(ch, rho) * u.adjoint()));
  }
  EXPECT_LE(worst, 1e-12);
}
