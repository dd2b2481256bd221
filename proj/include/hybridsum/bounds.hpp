#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hybridsum/stats.hpp"

namespace hybridsum {

/// Half-open integer interval [lo, hi) inside [0, p); hi == p means no
/// restriction on that coordinate.
struct CoordInterval {
  u64 lo = 0;
  u64 hi = 0;
  bool full(u64 p) const { return lo == 0 && hi == p; }
  bool contains(u64 v) const { return v >= lo && v < hi; }
  u64 length() const { return hi - lo; }
};

namespace detail {

struct CurvePoints {
  std::vector<u64> xs, ys;
};

inline CurvePoints all_curve_points(const BivarPoly& P) {
  const u64 p = P.modulus();
  const PointTable pt = enumerate_points(P, 0, p);
  CurvePoints out;
  out.xs.reserve(pt.count);
  out.ys.reserve(pt.count);
  for (u64 x = 0; x < p; ++x)
    for (u32 y : pt.bucket(x)) {
      out.xs.push_back(x);
      out.ys.push_back(y);
    }
  return out;
}

}  // namespace detail

// Complete hybrid sum over every F_p-point of the curve, with an optional
// additive twist psi_aux(-(tx*x + ty*y)); poles of f, g are skipped.
inline cplx complete_twisted_sum(const ExperimentConfig& cfg, const detail::CurvePoints& pts,
                                 const AddChar& psi_aux, u64 tx, u64 ty) {
  const u64 p = cfg.p();
  cplx acc(0.0, 0.0);
  for (size_t i = 0; i < pts.xs.size(); ++i) {
    const u64 x = pts.xs[i], y = pts.ys[i];
    bool pole = false;
    cplx v = point_term(cfg, x, y, pole);
    if (pole) continue;
    const u64 lin = (tx * x + ty * y) % p;
    if (lin) v *= psi_aux.eval(p - lin);
    acc += v;
  }
  return acc;
}

inline cplx complete_hybrid_sum(const ExperimentConfig& cfg) {
  if (cfg.p() > 2000) throw TooLargeError(cfg.p(), 2000);
  const auto pts = detail::all_curve_points(cfg.curve);
  return complete_twisted_sum(cfg, pts, cfg.psi, 0, 0);
}

// Complete sum over the x-shifted system defined by distinct shifts u_i and
// integer multiplicities m_i: chi is applied to prod g(x+u_i, y_i)^{m_i} and
// psi to sum m_i f(x+u_i, y_i), both evaluated as field elements.
inline cplx complete_shifted_hybrid_sum(const ExperimentConfig& cfg,
                                        const std::vector<std::pair<u64, int>>& shift_mults) {
  const u64 p = cfg.p();
  if (p > 2000) throw TooLargeError(p, 2000);
  std::vector<u64> shifts;
  shifts.reserve(shift_mults.size());
  for (const auto& [u, m] : shift_mults) shifts.push_back(u);
  const ShiftedCurve sc(cfg.curve, shifts);
  const PointTable pt = enumerate_points(cfg.curve, 0, p);
  const auto tuples = enumerate_shifted(sc, pt, 0, p - 1);

  cplx acc(0.0, 0.0);
  for (const auto& tuple : tuples) {
    const u64 x = tuple[0];
    bool skip = false;
    u64 gnum = 1, gden = 1, fval = 0;
    for (size_t i = 0; i < shift_mults.size() && !skip; ++i) {
      const auto [u, m] = shift_mults[i];
      const u64 xi = (x + u) % p, yi = tuple[i + 1];
      const auto gv = eval_rational(cfg.g, xi, yi);
      const auto fv = eval_rational(cfg.f, xi, yi);
      if (!gv || !fv) {
        skip = true;
        break;
      }
      const u64 mm = static_cast<u64>(m < 0 ? -m : m);
      const u64 gpow = mod_pow(*gv, mm, p);
      const u64 fmul = mod_mul(*fv % p, mm % p, p);
      if (m >= 0) {
        gnum = mod_mul(gnum, gpow, p);
        fval = (fval + fmul) % p;
      } else {
        gden = mod_mul(gden, gpow, p);
        fval = (fval + p - fmul) % p;
      }
    }
    if (skip) continue;
    cplx chi_factor(1.0, 0.0);
    if (!cfg.chi.trivial())
      chi_factor = (gnum == 0 || gden == 0)
                       ? cplx(0.0, 0.0)
                       : cfg.chi.eval(mod_mul(gnum, mod_inv(gden, p), p));
    acc += chi_factor * cfg.psi.eval(fval);
  }
  return acc;
}

// Restricted sum over the rectangle Jx x Jy, summed point by point.
inline cplx incomplete_direct(const ExperimentConfig& cfg, const CoordInterval& jx,
                              const CoordInterval& jy) {
  const u64 p = cfg.p();
  const PointTable pt = enumerate_points(cfg.curve, 0, p);
  cplx acc(0.0, 0.0);
  for (u64 x = jx.lo; x < jx.hi; ++x)
    for (u32 y : pt.bucket(x)) {
      if (!jy.contains(y)) continue;
      bool pole = false;
      const cplx v = point_term(cfg, x, y, pole);
      if (!pole) acc += v;
    }
  return acc;
}

// The same rectangle sum through the completion identity: every restricted
// coordinate contributes an average over p twisted complete sums, weighted by
// the interval transform W(t) = sum_{m in J} psi_aux(t m).
inline cplx incomplete_via_completion(const ExperimentConfig& cfg, const CoordInterval& jx,
                                      const CoordInterval& jy) {
  const u64 p = cfg.p();
  if (p > 500) throw TooLargeError(p, 500);
  const bool rx = !jx.full(p), ry = !jy.full(p);
  const AddChar psi_aux = cfg.psi.trivial() ? AddChar(cfg.field, 1) : cfg.psi;
  const auto pts = detail::all_curve_points(cfg.curve);

  auto interval_transform = [&](const CoordInterval& J) {
    std::vector<cplx> w(p);
    for (u64 t = 0; t < p; ++t) {
      cplx acc(0.0, 0.0);
      for (u64 m = J.lo; m < J.hi; ++m) acc += psi_aux.eval(t * m % p);
      w[t] = acc;
    }
    return w;
  };

  const std::vector<cplx> wx = rx ? interval_transform(jx) : std::vector<cplx>{};
  const std::vector<cplx> wy = ry ? interval_transform(jy) : std::vector<cplx>{};

  cplx acc(0.0, 0.0);
  const u64 tx_count = rx ? p : 1, ty_count = ry ? p : 1;
  for (u64 tx = 0; tx < tx_count; ++tx)
    for (u64 ty = 0; ty < ty_count; ++ty) {
      cplx w(1.0, 0.0);
      if (rx) w *= wx[tx];
      if (ry) w *= wy[ty];
      if (std::abs(w) == 0.0) continue;
      acc += w * complete_twisted_sum(cfg, pts, psi_aux, rx ? tx : 0, ry ? ty : 0);
    }
  const double denom = std::pow(static_cast<double>(p), static_cast<double>((rx ? 1 : 0) + (ry ? 1 : 0)));
  return acc / denom;
}

// Exact left side of the completion tail estimate together with its bound:
//   lhs = sum_t |sum_{m in J} psi(t m)|,  rhs = 2 p ln p + |J|.
inline std::pair<double, double> tail_bound_check(u64 p, u64 frequency, u64 j_lo, u64 j_hi) {
  if (frequency % p == 0) throw ConfigError("psi_k", "tail bound needs a nontrivial psi");
  std::vector<cplx> ep(p);
  for (u64 s = 0; s < p; ++s)
    ep[s] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(s) /
                                static_cast<double>(p));
  double lhs = 0.0;
  for (u64 t = 0; t < p; ++t) {
    const u64 kt = frequency % p * t % p;
    cplx acc(0.0, 0.0);
    for (u64 m = j_lo; m < j_hi; ++m) acc += ep[kt * m % p];
    lhs += std::abs(acc);
  }
  const double rhs = 2.0 * static_cast<double>(p) * std::log(static_cast<double>(p)) +
                     static_cast<double>(j_hi - j_lo);
  return {lhs, rhs};
}

// Weil-type bound for the box-restricted sum on a degree-D variety with m
// restricted coordinates. The leading coefficient is floored at D so the
// bound stays positive for D = 1, 2 with polynomial data; c_slack stands in
// for the unspecified O(D) constant.
inline double weil_type_bound(int D, int d_g, int d_f, u64 p, int m, double c_slack = 3.0) {
  const double lead =
      std::max(static_cast<double>(D) * D - 3.0 * D + 2.0 * D * d_g + 2.0 * D * d_f,
               static_cast<double>(D));
  const double dp = static_cast<double>(p);
  const double base = lead * std::sqrt(dp) + static_cast<double>(D) * D + c_slack * D;
  return base * std::pow(2.0 * std::log(dp) + 1.0, m);
}

struct BoundSweepItem {
  std::string config_id;
  ExperimentConfig cfg;
  CoordInterval jx;
  CoordInterval jy;
  double c_slack = 3.0;
};

struct BoundReport {
  std::string config_id;
  u64 p = 0;
  int D = 0, d_g = 0, d_f = 0, m = 0;
  double abs_S = 0.0, bound = 0.0, ratio = 0.0;
  Tri degenerate = Tri::Undecidable;
};

inline BoundReport bound_report(const BoundSweepItem& item) {
  const ExperimentConfig& cfg = item.cfg;
  const u64 p = cfg.p();
  BoundReport rep;
  rep.config_id = item.config_id;
  rep.p = p;
  rep.D = cfg.curve.total_degree();
  rep.d_g = cfg.g.denominator_degree();
  rep.d_f = cfg.f.denominator_degree();
  rep.m = (item.jx.full(p) ? 0 : 1) + (item.jy.full(p) ? 0 : 1);
  rep.abs_S = std::abs(incomplete_direct(cfg, item.jx, item.jy));
  rep.bound = weil_type_bound(rep.D, rep.d_g, rep.d_f, p, rep.m, item.c_slack);
  rep.ratio = rep.abs_S / rep.bound;

  TheoremMode mode = TheoremMode::Main;
  if (cfg.psi.trivial()) mode = cfg.chi.trivial() ? TheoremMode::Degenerate : TheoremMode::TrivialPsi;
  else if (cfg.chi.trivial()) mode = TheoremMode::TrivialChi;
  const auto hyp = check_hypotheses(cfg.f, cfg.g, cfg.curve, cfg.chi.order(), mode);
  rep.degenerate = hyp.overall == Tri::Fails  ? Tri::Holds
                   : hyp.overall == Tri::Holds ? Tri::Fails
                                               : Tri::Undecidable;
  return rep;
}

inline std::vector<BoundReport> bound_ratio_sweep(const std::vector<BoundSweepItem>& items) {
  std::vector<BoundReport> out(items.size());
  parallel_stripes(0, items.size(), [&](u64 lo, u64 hi) {
    for (u64 i = lo; i < hi; ++i) out[i] = bound_report(items[i]);
  });
  std::sort(out.begin(), out.end(),
            [](const BoundReport& a, const BoundReport& b) { return a.config_id < b.config_id; });
  return out;
}

}  // namespace hybridsum
