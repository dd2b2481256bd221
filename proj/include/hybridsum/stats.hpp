#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hybridsum/sums.hpp"

namespace hybridsum {

/// The two Gaussian limit laws: VarHalf has density (1/sqrt(pi)) e^{-t^2}
/// (variance 1/2), Standard has density (1/sqrt(2 pi)) e^{-t^2/2}. An
/// optional location shift supports shifted-model comparisons.
struct GaussianModel {
  enum Variant { VarHalf, Standard };
  Variant variant = VarHalf;
  double shift = 0.0;

  double cdf(double t) const {
    const double z = t - shift;
    if (variant == VarHalf) return 0.5 * (1.0 + std::erf(z));
    return 0.5 * (1.0 + std::erf(z / std::numbers::sqrt2));
  }
};

inline double gaussian_cdf(const GaussianModel& model, double t) { return model.cdf(t); }

// k-th moment of the suitably rescaled model variable; both variants land on
// mu_k = (k-1)!! for even k and 0 for odd k (VarHalf after the sqrt(2) scale).
inline double gaussian_scaled_moment(u32 k) {
  if (k > 20) throw TooLargeError(k, 20);
  return gaussian_mu_k(k);
}

// Two-sided KS statistic over an ascending sample.
inline double ks_distance_sorted(const std::vector<double>& sorted, const GaussianModel& model) {
  const size_t n = sorted.size();
  if (n == 0) return 0.0;
  double d = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double f = model.cdf(sorted[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / static_cast<double>(n) - f));
    d = std::max(d, std::abs(static_cast<double>(i) / static_cast<double>(n) - f));
  }
  return d;
}

// Acceptance threshold: asymptotic 99% Kolmogorov quantile plus a fixed
// allowance for finite-p bias.
inline double ks_threshold(u64 n) {
  return 1.63 / std::sqrt(static_cast<double>(n)) + 0.02;
}

struct HistogramBin {
  u64 count = 0;
  double left = 0.0;
  double width = 0.0;
};

/// Empirical-distribution summary of the projections u_n.
struct DistributionReport {
  std::vector<double> sorted_u;
  double ks_var_half = 0.0;
  double ks_standard = 0.0;
  GaussianModel::Variant selected = GaussianModel::VarHalf;
  std::vector<HistogramBin> histogram;

  // G_p(lambda): how many samples are <= lambda.
  u64 counting(double lambda) const {
    return static_cast<u64>(std::upper_bound(sorted_u.begin(), sorted_u.end(), lambda) -
                            sorted_u.begin());
  }

  double empirical_cdf(double lambda) const {
    if (sorted_u.empty()) return 0.0;
    return static_cast<double>(counting(lambda)) / static_cast<double>(sorted_u.size());
  }
};

// Freedman-Diaconis bins; illustrative only, never part of pass/fail.
inline std::vector<HistogramBin> freedman_diaconis_bins(const std::vector<double>& sorted) {
  std::vector<HistogramBin> bins;
  const size_t n = sorted.size();
  if (n == 0) return bins;
  const double lo = sorted.front(), hi = sorted.back();
  const double q1 = sorted[n / 4], q3 = sorted[(3 * n) / 4];
  double width = 2.0 * (q3 - q1) / std::cbrt(static_cast<double>(n));
  if (!(width > 0.0)) width = hi > lo ? (hi - lo) : 1.0;
  const size_t nbins = std::min<size_t>(
      4096, static_cast<size_t>(std::max(1.0, std::ceil((hi - lo) / width + 0.5))));
  bins.assign(nbins, {});
  for (size_t b = 0; b < nbins; ++b) {
    bins[b].left = lo + static_cast<double>(b) * width;
    bins[b].width = width;
  }
  for (double v : sorted) {
    size_t b = width > 0 ? static_cast<size_t>((v - lo) / width) : 0;
    if (b >= nbins) b = nbins - 1;
    ++bins[b].count;
  }
  return bins;
}

// Model selection: Standard exactly in the quadratic-real regime, VarHalf
// otherwise.
inline GaussianModel::Variant select_model(const ExperimentConfig& cfg) {
  return quadratic_real_mode(cfg) ? GaussianModel::Standard : GaussianModel::VarHalf;
}

inline DistributionReport analyze_distribution(const SumSeries& series,
                                               GaussianModel::Variant selected) {
  DistributionReport rep;
  rep.sorted_u = series.u;
  std::sort(rep.sorted_u.begin(), rep.sorted_u.end());
  rep.ks_var_half = ks_distance_sorted(rep.sorted_u, {GaussianModel::VarHalf, 0.0});
  rep.ks_standard = ks_distance_sorted(rep.sorted_u, {GaussianModel::Standard, 0.0});
  rep.selected = selected;
  rep.histogram = freedman_diaconis_bins(rep.sorted_u);
  return rep;
}

}  // namespace hybridsum
