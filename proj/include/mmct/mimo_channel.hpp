// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------
//
// Kronecker-correlated flat Rayleigh MIMO channels, SVD precoding and
// large-array eigenvalue statistics.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mmct/rng.hpp"

namespace mmct::channel {

using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

struct ChannelRealization {
  CMatrix H;  // n_r x n_t
  int t = 0;
  int f = 0;

  int rx() const { return static_cast<int>(H.rows()); }
  int tx() const { return static_cast<int>(H.cols()); }
};

// H = U diag(sigma) V^H with sigma descending. The largest-magnitude entry of
// each V column is real and positive (U is rotated to match).
struct SvdFactors {
  CMatrix U;
  RVector sigma;
  CMatrix V;

  // lambda_i = sigma_i^2, descending.
  RVector eigenvalues() const { return sigma.array().square().matrix(); }
};

struct Precoder {
  CMatrix P;  // n_t x L, (1/sqrt(L)) times the first L columns of V

  int layers() const { return static_cast<int>(P.cols()); }
};

// R_r and R_t for H = R_r^{1/2} W R_t^{1/2}; vec(H) then has covariance
// conj(R_t) (x) R_r, which equals R_t^H (x) R_r whenever R_t is real.
class CorrelationModel {
 public:
  // R_r = [[1, cos t], [cos t, 1]], R_t = I of size n_t; -pi/2 < t <= pi/2.
  static CorrelationModel from_angle(double theta, int n_t);
  // Hermitian PSD matrices; throws ValidationError otherwise.
  static CorrelationModel custom(CMatrix rx, CMatrix tx);

  double theta() const { return theta_; }
  bool has_angle() const { return has_angle_; }
  const CMatrix& rx() const { return rx_; }
  const CMatrix& tx() const { return tx_; }
  const CMatrix& rx_sqrt() const { return rx_sqrt_; }
  const CMatrix& tx_sqrt() const { return tx_sqrt_; }
  bool tx_is_identity() const { return tx_identity_; }
  // Descending eigenvalues of R_r.
  const RVector& rx_eigenvalues() const { return rx_eig_; }

  int rx_size() const { return static_cast<int>(rx_.rows()); }
  int tx_size() const { return static_cast<int>(tx_.rows()); }

 private:
  CorrelationModel() = default;

  double theta_ = 0.0;
  bool has_angle_ = false;
  CMatrix rx_, tx_, rx_sqrt_, tx_sqrt_;
  RVector rx_eig_;
  bool tx_identity_ = false;
};

// Validates that theta lies in (-pi/2, pi/2].
void check_angle(double theta);

ChannelRealization sample_channel(int n_t, int n_r, const CorrelationModel& corr, std::uint64_t seed);
ChannelRealization sample_channel(int n_t, int n_r, const CorrelationModel& corr, rng::Engine& engine);

// full = false computes only the leading min(n_r, n_t) singular vectors.
SvdFactors svd(const CMatrix& H, bool full = true);

// Throws RankError when L exceeds min(n_r, n_t) or L < 1.
std::pair<SvdFactors, Precoder> svd_precode(const ChannelRealization& channel, int L, bool full = true);

// lambda_i * snr for the L strongest eigenmodes; snr must be > 0.
std::vector<double> per_layer_snr(const SvdFactors& factors, double snr, int n_t, int L);

struct EigenStat {
  double rx_eigenvalue = 0.0;       // lambda_{r,i}
  double mean = 0.0;                // empirical mean of lambda_i
  double predicted_mean = 0.0;      // n_t * lambda_{r,i} * power
  double empirical_variance = 0.0;  // var of sqrt(n_t) (lambda_i - mean)
  double predicted_variance = 0.0;  // lambda_{r,i}^2 ||Q R_t||_F^2 n_t
  double ratio = 0.0;               // empirical / predicted (NaN when predicted is 0)
};

struct EigenCovarianceReport {
  int n_t = 0;
  int trials = 0;
  double power = 1.0;
  bool asymptotic_regime = true;
  std::vector<EigenStat> stats;
  std::vector<std::string> notes;
};

// Monte-Carlo check of the large-array eigenvalue covariance
// (C)_ii = lambda_{r,i}^2 ||Q R_t||_F^2 n_t with Q = power * I. Requires
// trials >= 1e4 (ValidationError); n_t < 32 is flagged, not rejected.
EigenCovarianceReport eigenvalue_covariance_check(const CorrelationModel& corr, int n_t, int trials, std::uint64_t seed,
                                                  double power = 1.0, unsigned threads = 1);

}  // namespace mmct::channel
