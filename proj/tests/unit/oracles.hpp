#pragma once

// Reference computations that do not go through the library: channel actions
// written as maps instead of Kraus sums, entropies from Schmidt weights, and
// values frozen from an independent numpy evaluation.

#include <Eigen/Dense>
#include <cmath>
#include <complex>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Mat psi_projector(double lambda0) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = std::sqrt(lambda0);
  v(3) = std::sqrt(1.0 - lambda0);
  return v * v.adjoint();
}

// Partial trace over the first qubit of a 4x4 operator.
inline Mat trace_q(const Mat& rho) {
  Mat r = Mat::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) r(a, b) = rho(a, b) + rho(2 + a, 2 + b);
  return r;
}

// (1-p) rho + p (I/2) x tr_Q rho
inline Mat depolarize_q(const Mat& rho, double p) {
  return (1.0 - p) * rho + p * kron(0.5 * Mat::Identity(2, 2), trace_q(rho));
}

// Coherences between Q=0 and Q=1 blocks shrink by (1-p).
inline Mat dephase_q(const Mat& rho, double p) {
  Mat out = rho;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out(i, 2 + j) *= 1.0 - p;
      out(2 + i, j) *= 1.0 - p;
    }
  return out;
}

// |1> decays to |0> with probability p.
inline Mat damp_q(const Mat& rho, double p) {
  Mat out = Mat::Zero(4, 4);
  const double keep = std::sqrt(1.0 - p);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out(i, j) = rho(i, j) + p * rho(2 + i, 2 + j);
      out(i, 2 + j) = keep * rho(i, 2 + j);
      out(2 + i, j) = keep * rho(2 + i, j);
      out(2 + i, 2 + j) = (1.0 - p) * rho(2 + i, 2 + j);
    }
  return out;
}

inline double top_eigenvalue(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  return es.eigenvalues().maxCoeff();
}

inline double shannon(double l0) {
  const double l1 = 1.0 - l0;
  double h = 0.0;
  if (l0 > 0.0) h -= l0 * std::log2(l0);
  if (l1 > 0.0) h -= l1 * std::log2(l1);
  return h;
}

// Optimal fidelities written in terms of p and lambda0.
namespace table {
inline double s_of(double l0) { return 2.0 * l0 * (1.0 - l0); }

inline double depol_ii(double p, double l0) { return 1.0 - p * (1.0 + s_of(l0)) / 2.0; }
inline double depol_ic(double p, double l0) {
  const double s = s_of(l0);
  return 0.5 - p / 4.0 + std::sqrt((p - 2.0) * (p - 2.0) - 2.0 * p * (4.0 - 3.0 * p) * s) / 4.0;
}
inline double depol_cc(double p) { return 1.0 - p / 2.0; }

inline double dephase_ii(double p, double l0) { return 1.0 - p * s_of(l0); }
inline double dephase_ic(double p, double l0) {
  return 0.5 + 0.5 * std::sqrt(1.0 - 2.0 * p * (2.0 - p) * s_of(l0));
}

inline double damp_ii(double p, double l0) {
  const double s = s_of(l0);
  return std::sqrt(1.0 - p) * s + (1.0 - p / 2.0) * (1.0 - s) + (p / 2.0) * std::sqrt(1.0 - 2.0 * s);
}
inline double damp_ic(double p, double l0) { return 1.0 - p * (1.0 - std::sqrt(1.0 - 2.0 * s_of(l0))) / 2.0; }
}  // namespace table

// Frozen from numpy eigensolves on explicitly built matrices.
inline constexpr double kDephaseTopP05L075 = 0.8307189138830737;
inline constexpr double kDepolIndColP05L075 = 0.6614109809347399;
inline constexpr double kDepolXi0P05L075[2] = {0.9095750850556475, 0.4155396065912509};
inline constexpr double kDepolUpsilonP05L075 = 0.42853597392506565;
inline constexpr double kVonNeumann7525 = 0.8112781244591328;
inline constexpr double kRenyi2_7525 = 0.6780719051126377;
inline constexpr double kMinEntropy7525 = 0.4150374992788438;
inline constexpr double kWStateSlin = 0.4444444444444445;
inline constexpr double kWStateDephaseP06IndCol = 0.7516611478423583;

}  // namespace oracle
