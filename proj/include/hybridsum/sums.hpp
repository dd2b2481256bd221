#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "hybridsum/characters.hpp"
#include "hybridsum/geometry.hpp"
#include "hybridsum/hypotheses.hpp"
#include "hybridsum/parallel.hpp"

namespace hybridsum {

/// One experiment: the curve, the pair (g, f), the character pair, the
/// rectangle and the projection angle. Immutable; cheap to copy.
struct ExperimentConfig {
  std::shared_ptr<const PrimeField> field;
  BivarPoly curve;
  RationalMap g;
  RationalMap f;
  MultChar chi;
  AddChar psi;
  Rectangle rect;
  double theta = 0.0;
  bool wrap = true;

  u64 p() const { return field->p(); }
};

// Davenport-Erdos style regime: quadratic chi, trivial psi, projection on the
// real line. Moments are then compared without the 2^{k/2} rescale and the
// limit law is the standard normal.
inline bool quadratic_real_mode(const ExperimentConfig& cfg) {
  return cfg.chi.order() == 2 && cfg.psi.trivial() && cfg.theta == 0.0;
}

/// Per-x aggregated character terms over the bucketed points:
/// term[x] = sum over points (x,y) of chi(g)psi(f), poles skipped.
struct TermTable {
  std::vector<cplx> term;
  std::vector<u32> points;  // points contributing (poles excluded)
  std::vector<u32> poles;   // pole points skipped at this x
};

inline cplx point_term(const ExperimentConfig& cfg, u64 x, u64 y, bool& pole) {
  const auto gv = eval_rational(cfg.g, x, y);
  const auto fv = eval_rational(cfg.f, x, y);
  if (!gv || !fv) {
    pole = true;
    return {0.0, 0.0};
  }
  pole = false;
  return cfg.chi.eval(*gv) * cfg.psi.eval(*fv);
}

inline TermTable build_term_table(const ExperimentConfig& cfg, const PointTable& pt) {
  const u64 p = cfg.p();
  TermTable t;
  t.term.assign(p, cplx(0.0, 0.0));
  t.points.assign(p, 0);
  t.poles.assign(p, 0);
  parallel_stripes(0, p, [&](u64 lo, u64 hi) {
    for (u64 x = lo; x < hi; ++x) {
      cplx acc(0.0, 0.0);
      u32 n = 0, np = 0;
      for (u32 y : pt.bucket(x)) {
        bool pole = false;
        const cplx v = point_term(cfg, x, y, pole);
        if (pole) {
          ++np;
          continue;
        }
        acc += v;
        ++n;
      }
      t.term[x] = acc;
      t.points[x] = n;
      t.poles[x] = np;
    }
  });
  return t;
}

/// The sums S_n over n in I, their projections u_n, and window metadata.
struct SumSeries {
  u64 n_lo = 0, n_hi = 0;
  double theta = 0.0;
  double norm = 1.0;  // sqrt((beta - alpha) * H)
  std::vector<cplx> s;
  std::vector<double> u;
  std::vector<u32> terms;
  std::vector<u32> poles;

  u64 size() const { return s.size(); }
};

namespace detail {

inline cplx window_sum(const std::vector<cplx>& t, u64 p, u64 n, u64 H, bool wrap) {
  cplx acc(0.0, 0.0);
  for (u64 h = 1; h <= H; ++h) {
    const u64 xr = n + h;
    if (xr >= p && !wrap) break;
    acc += t[xr % p];
  }
  return acc;
}

template <typename T>
inline T window_isum(const std::vector<T>& t, u64 p, u64 n, u64 H, bool wrap) {
  T acc = 0;
  for (u64 h = 1; h <= H; ++h) {
    const u64 xr = n + h;
    if (xr >= p && !wrap) break;
    acc += t[xr % p];
  }
  return acc;
}

inline void project(const ExperimentConfig& cfg, SumSeries& out) {
  const double bma_H = static_cast<double>(cfg.rect.j_length() * cfg.rect.H) /
                       static_cast<double>(cfg.p());
  out.norm = std::sqrt(bma_H);
  out.theta = cfg.theta;
  out.u.resize(out.s.size());
  const cplx rot = std::polar(1.0, -cfg.theta);
  for (size_t i = 0; i < out.s.size(); ++i) out.u[i] = (out.s[i] * rot).real() / out.norm;
}

}  // namespace detail

// Sliding-window evaluation: S_{n+1} = S_n - term(n+1) + term(n+1+H), with a
// fresh anchor every few thousand slides to keep rounding drift flat.
inline SumSeries compute_series(const ExperimentConfig& cfg, const PointTable& pt) {
  const u64 p = cfg.p();
  const Rectangle& r = cfg.rect;
  const TermTable tab = build_term_table(cfg, pt);

  SumSeries out;
  out.n_lo = r.n_lo;
  out.n_hi = r.n_hi;
  const u64 count = r.interval_size();
  out.s.resize(count);
  out.terms.resize(count);
  out.poles.resize(count);

  constexpr u64 kAnchorEvery = 4096;
  cplx s{};
  for (u64 i = 0; i < count; ++i) {
    const u64 n = r.n_lo + i;
    if (i % kAnchorEvery == 0) {
      s = detail::window_sum(tab.term, p, n, r.H, cfg.wrap);
    } else {
      // window moved from (n-1, n-1+H] to (n, n+H]
      if (n <= p - 1) s -= tab.term[n];
      const u64 incoming = n + r.H;
      if (incoming < p || cfg.wrap) s += tab.term[incoming % p];
    }
    out.s[i] = s;
    out.terms[i] = detail::window_isum(tab.points, p, n, r.H, cfg.wrap);
    out.poles[i] = detail::window_isum(tab.poles, p, n, r.H, cfg.wrap);
  }
  detail::project(cfg, out);
  return out;
}

// Reference path: every window summed independently; parallel over chunks of I.
// Produces the same values as compute_series up to rounding drift.
inline SumSeries compute_series_direct(const ExperimentConfig& cfg, const PointTable& pt,
                                       unsigned workers = worker_count()) {
  const u64 p = cfg.p();
  const Rectangle& r = cfg.rect;
  const TermTable tab = build_term_table(cfg, pt);

  SumSeries out;
  out.n_lo = r.n_lo;
  out.n_hi = r.n_hi;
  const u64 count = r.interval_size();
  out.s.resize(count);
  out.terms.resize(count);
  out.poles.resize(count);
  parallel_stripes(
      0, count,
      [&](u64 lo, u64 hi) {
        for (u64 i = lo; i < hi; ++i) {
          const u64 n = r.n_lo + i;
          out.s[i] = detail::window_sum(tab.term, p, n, r.H, cfg.wrap);
          out.terms[i] = detail::window_isum(tab.points, p, n, r.H, cfg.wrap);
          out.poles[i] = detail::window_isum(tab.poles, p, n, r.H, cfg.wrap);
        }
      },
      workers);
  detail::project(cfg, out);
  return out;
}

/// Moment table: M_k = sum u_n^k with the normalization of the active regime.
struct MomentEntry {
  u32 k = 0;
  cplx m;             // imaginary part identically 0 for the u_n path
  double normalized;  // 2^{k/2} Re(M_k)/|I|, or Re(M_k)/|I| in the quadratic real mode
  double mu;          // Gaussian target: (k-1)!! for even k, 0 for odd k
  double deviation;
};

struct MomentReport {
  std::vector<MomentEntry> entries;
  bool quadratic_real = false;
  bool duplicate_x_warning = false;
  u64 sample_count = 0;
};

inline double gaussian_mu_k(u32 k) {
  if (k % 2 == 1) return 0.0;
  double v = 1.0;
  for (u32 i = 1; i + 1 <= k; i += 2) v *= static_cast<double>(i);
  return v;
}

inline MomentReport moments(const SumSeries& series, u32 k_max, bool quadratic_real,
                            bool duplicate_x_warning = false) {
  MomentReport rep;
  rep.quadratic_real = quadratic_real;
  rep.duplicate_x_warning = duplicate_x_warning;
  rep.sample_count = series.size();
  const double inv_count = 1.0 / static_cast<double>(series.size());
  std::vector<double> mk(k_max + 1, 0.0);
  for (double u : series.u) {
    double pw = 1.0;
    for (u32 k = 0; k <= k_max; ++k) {
      mk[k] += pw;
      pw *= u;
    }
  }
  for (u32 k = 0; k <= k_max; ++k) {
    MomentEntry e;
    e.k = k;
    e.m = cplx(mk[k], 0.0);
    const double scale = quadratic_real ? 1.0 : std::pow(2.0, static_cast<double>(k) / 2.0);
    e.normalized = scale * mk[k] * inv_count;
    e.mu = gaussian_mu_k(k);
    e.deviation = e.normalized - e.mu;
    rep.entries.push_back(e);
  }
  return rep;
}

// S(j1, j2) = sum_n S_n^{j1} conj(S_n)^{j2}.
inline cplx pair_sum(const SumSeries& series, u32 j1, u32 j2) {
  cplx acc(0.0, 0.0);
  for (const cplx& s : series.s) {
    cplx v(1.0, 0.0);
    for (u32 a = 0; a < j1; ++a) v *= s;
    const cplx sc = std::conj(s);
    for (u32 b = 0; b < j2; ++b) v *= sc;
    acc += v;
  }
  return acc;
}

// Binomial route to the same moment:
//   M_k = (2^k ((beta-alpha)H)^{k/2})^{-1} sum_j C(k,j) e^{(k-2j)i theta} S(j, k-j).
inline cplx moments_via_binomial(const SumSeries& series, u32 k) {
  cplx acc(0.0, 0.0);
  double binom = 1.0;
  for (u32 j = 0; j <= k; ++j) {
    const double phase = static_cast<double>(static_cast<i64>(k) - 2 * static_cast<i64>(j)) *
                         series.theta;
    acc += binom * std::polar(1.0, phase) * pair_sum(series, j, k - j);
    binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
  }
  const double denom = std::pow(2.0, static_cast<double>(k)) *
                       std::pow(series.norm, static_cast<double>(k));
  return acc / denom;
}

// Natural error scale for the two-path moment comparison: sum_n |u-scale|^k.
inline double moment_comparison_scale(const SumSeries& series, u32 k) {
  double scale = 0.0;
  for (const cplx& s : series.s)
    scale += std::pow(std::abs(s) / series.norm, static_cast<double>(k));
  return std::max(scale, 1.0);
}

// |S_n|^{2j} two ways: directly from the window sum, and reassembled over the
// shift tuples h in [1,H]^{2j} via the x-shifted curve at x = n, evaluating
// chi and psi on the field-element values of the tilde functions.
inline std::pair<double, double> shifted_expansion_check(const ExperimentConfig& cfg,
                                                         const PointTable& pt, u64 n, u32 j) {
  if (pt.duplicate_x) throw DuplicateXError();
  const u64 p = cfg.p();
  const u64 H = cfg.rect.H;

  const cplx sn = detail::window_sum(build_term_table(cfg, pt).term, p, n, cfg.rect.H, cfg.wrap);
  const double direct = std::pow(std::abs(sn), 2.0 * static_cast<double>(j));

  const u32 L = 2 * j;
  std::vector<u64> h(L, 1);
  cplx assembled(0.0, 0.0);
  for (;;) {
    // distinct shifts, first-occurrence order, and the h -> shift index map
    std::vector<u64> shifts;
    std::vector<size_t> shift_of(L);
    for (u32 l = 0; l < L; ++l) {
      const u64 hv = h[l] % p;
      size_t idx = shifts.size();
      for (size_t i = 0; i < shifts.size(); ++i)
        if (shifts[i] == hv) {
          idx = i;
          break;
        }
      if (idx == shifts.size()) shifts.push_back(hv);
      shift_of[l] = idx;
    }
    const size_t m = shifts.size();

    // Cartesian product of buckets at x = n + u_i
    std::vector<std::span<const u32>> buckets(m);
    bool empty = false;
    for (size_t i = 0; i < m; ++i) {
      buckets[i] = pt.bucket((n + shifts[i]) % p);
      if (buckets[i].empty()) empty = true;
    }
    if (!empty) {
      std::vector<size_t> idx(m, 0);
      for (;;) {
        bool skip = false;
        u64 gnum = 1, gden = 1, fval = 0;
        for (u32 l = 0; l < L && !skip; ++l) {
          const u64 x = (n + h[l]) % p;
          const u64 y = buckets[shift_of[l]][idx[shift_of[l]]];
          const auto gv = eval_rational(cfg.g, x, y);
          const auto fv = eval_rational(cfg.f, x, y);
          if (!gv || !fv) {
            skip = true;  // pole points never enter S_n
            break;
          }
          if (l < j) {
            gnum = mod_mul(gnum, *gv, p);
            fval = (fval + *fv) % p;
          } else {
            gden = mod_mul(gden, *gv, p);
            fval = (fval + p - *fv) % p;
          }
        }
        if (!skip) {
          cplx chi_factor(1.0, 0.0);
          if (!cfg.chi.trivial())
            chi_factor = (gnum == 0 || gden == 0)
                             ? cplx(0.0, 0.0)
                             : cfg.chi.eval(mod_mul(gnum, mod_inv(gden, p), p));
          assembled += chi_factor * cfg.psi.eval(fval);
        }
        size_t i = m;
        bool done = true;
        while (i-- > 0) {
          if (++idx[i] < buckets[i].size()) {
            done = false;
            break;
          }
          idx[i] = 0;
        }
        if (done) break;
      }
    }

    // odometer over h in [1, H]^L
    u32 l = L;
    bool finished = true;
    while (l-- > 0) {
      if (++h[l] <= H) {
        finished = false;
        break;
      }
      h[l] = 1;
    }
    if (finished) break;
  }
  return {direct, assembled.real()};
}

}  // namespace hybridsum
