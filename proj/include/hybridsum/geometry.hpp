#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hybridsum/bigint.hpp"
#include "hybridsum/parallel.hpp"
#include "hybridsum/poly.hpp"

namespace hybridsum {

/// Window/interval data for one experiment: x runs over the closed interval
/// I = [n_lo, n_hi], y over the half-open J = [j_lo, j_hi), windows have
/// length H. alpha = j_lo/p and beta = j_hi/p are derived.
struct Rectangle {
  u64 n_lo = 0;
  u64 n_hi = 0;
  u64 j_lo = 0;
  u64 j_hi = 0;
  u64 H = 1;

  void validate(u64 p) const {
    if (n_lo > n_hi || n_hi > p - 1) throw ConfigError("I", "need 0 <= lo <= hi <= p-1");
    if (j_lo >= j_hi || j_hi > p) throw ConfigError("J", "need 0 <= lo < hi <= p");
    if (H < 1 || H > p) throw ConfigError("H", "need 1 <= H <= p");
  }

  u64 interval_size() const { return n_hi - n_lo + 1; }  // |I|, number of integers
  u64 j_length() const { return j_hi - j_lo; }

  // (beta - alpha) = (j_hi - j_lo)/p with one floating division.
  double beta_minus_alpha(u64 p) const {
    return static_cast<double>(j_hi - j_lo) / static_cast<double>(p);
  }
};

/// F_p-points of P(x,y)=0 with y in J, bucketed by x (CSR layout).
struct PointTable {
  u64 p = 0;
  u64 j_lo = 0, j_hi = 0;
  std::vector<u32> offsets;  // size p+1; bucket of x is ys[offsets[x]..offsets[x+1])
  std::vector<u32> ys;       // ascending within each bucket
  u64 count = 0;
  bool duplicate_x = false;

  std::span<const u32> bucket(u64 x) const {
    return {ys.data() + offsets[x], ys.data() + offsets[x + 1]};
  }
  u64 bucket_size(u64 x) const { return offsets[x + 1] - offsets[x]; }
};

// Exhaustive per-x root scan over y in [j_lo, j_hi). Curves linear in y get a
// closed-form fiber; everything else is a Horner scan. Striped across threads
// with a deterministic merge.
inline PointTable enumerate_points(const BivarPoly& P, u64 j_lo, u64 j_hi,
                                   unsigned workers = worker_count()) {
  const u64 p = P.modulus();
  if (P.degree_y() < 1) throw ConfigError("curve", "deg_y(P) must be >= 1");
  PointTable pt;
  pt.p = p;
  pt.j_lo = j_lo;
  pt.j_hi = j_hi;

  std::vector<std::vector<u32>> stripe_ys(workers == 0 ? 1 : workers);
  std::vector<u32> counts(p, 0);

  const bool linear_in_y = P.degree_y() == 1;
  auto scan = [&](u64 lo, u64 hi, std::vector<u32>& out) {
    for (u64 x = lo; x < hi; ++x) {
      if (linear_in_y) {
        // P(x, y) = a(x)*y + b(x)
        const auto cf = P.y_coefficients_at(x);
        const u64 b = cf[0], a = cf[1];
        if (a != 0) {
          const u64 y = mod_mul(b == 0 ? 0 : p - b, mod_inv(a, p), p);
          if (y >= j_lo && y < j_hi) {
            out.push_back(static_cast<u32>(y));
            counts[x] = 1;
          }
        } else if (b == 0) {
          for (u64 y = j_lo; y < j_hi; ++y) out.push_back(static_cast<u32>(y));
          counts[x] = static_cast<u32>(j_hi - j_lo);
        }
        continue;
      }
      const auto cf = P.y_coefficients_at(x);
      u32 n = 0;
      for (u64 y = j_lo; y < j_hi; ++y) {
        u64 v = 0;
        for (size_t j = cf.size(); j-- > 0;) v = (v * y + cf[j]) % p;
        if (v == 0) {
          out.push_back(static_cast<u32>(y));
          ++n;
        }
      }
      counts[x] = n;
    }
  };

  if (stripe_ys.size() <= 1 || p < 4096) {
    scan(0, p, stripe_ys[0]);
  } else {
    const u64 chunk = (p + stripe_ys.size() - 1) / stripe_ys.size();
    std::vector<std::thread> pool;
    for (size_t w = 0; w < stripe_ys.size(); ++w) {
      const u64 lo = std::min<u64>(p, w * chunk), hi = std::min<u64>(p, lo + chunk);
      if (lo < hi) pool.emplace_back([&, w, lo, hi] { scan(lo, hi, stripe_ys[w]); });
    }
    for (auto& t : pool) t.join();
  }

  pt.offsets.assign(p + 1, 0);
  for (u64 x = 0; x < p; ++x) {
    pt.offsets[x + 1] = pt.offsets[x] + counts[x];
    if (counts[x] >= 2) pt.duplicate_x = true;
  }
  pt.count = pt.offsets[p];
  pt.ys.reserve(pt.count);
  for (const auto& part : stripe_ys) pt.ys.insert(pt.ys.end(), part.begin(), part.end());
  return pt;
}

// Number of points with x in the window (n, n+H]. x wraps modulo p by default;
// wrap=false truncates the window at p-1. H may be 0 (empty window).
inline u64 count_rectangle(const PointTable& pt, u64 n, u64 H, bool wrap = true) {
  const u64 p = pt.p;
  if (H == 0) return 0;
  if (H > p) H = p;
  if (!wrap) {
    const u64 lo = n + 1;
    if (lo > p - 1) return 0;
    const u64 hi = std::min(n + H, p - 1);  // inclusive
    return pt.offsets[hi + 1] - pt.offsets[lo];
  }
  const u64 lo = (n + 1) % p;
  if (lo + H <= p) return pt.offsets[lo + H] - pt.offsets[lo];
  return (pt.offsets[p] - pt.offsets[lo]) + pt.offsets[(lo + H) - p];
}

/// x-shifted system: points are (x, y_1..y_m) with P(x + u_i, y_i) = 0 for the
/// pairwise-distinct shifts u_i.
struct ShiftedCurve {
  BivarPoly base;
  std::vector<u64> shifts;

  ShiftedCurve(BivarPoly curve, std::vector<u64> u) : base(std::move(curve)), shifts(std::move(u)) {
    const u64 p = base.modulus();
    for (auto& s : shifts) s %= p;
    for (size_t i = 0; i < shifts.size(); ++i)
      for (size_t j = i + 1; j < shifts.size(); ++j)
        if (shifts[i] == shifts[j]) throw Error("shift set has repeated elements");
  }

  size_t dimension() const { return shifts.size(); }
};

// Tuples (x, y_1..y_m) with x in [n_lo, n_hi], assembled as the Cartesian
// product of base buckets at x + u_i. Each inner vector is [x, y_1, .., y_m].
inline std::vector<std::vector<u32>> enumerate_shifted(const ShiftedCurve& sc,
                                                       const PointTable& pt, u64 n_lo,
                                                       u64 n_hi) {
  const u64 p = pt.p;
  const size_t m = sc.shifts.size();
  std::vector<std::vector<u32>> out;
  std::vector<std::span<const u32>> buckets(m);
  std::vector<size_t> idx(m, 0);
  for (u64 x = n_lo; x <= n_hi; ++x) {
    bool empty = false;
    for (size_t i = 0; i < m; ++i) {
      buckets[i] = pt.bucket((x + sc.shifts[i]) % p);
      if (buckets[i].empty()) {
        empty = true;
        break;
      }
    }
    if (empty) continue;
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      std::vector<u32> tuple(m + 1);
      tuple[0] = static_cast<u32>(x);
      for (size_t i = 0; i < m; ++i) tuple[i + 1] = buckets[i][idx[i]];
      out.push_back(std::move(tuple));
      size_t i = m;
      while (i-- > 0) {
        if (++idx[i] < buckets[i].size()) break;
        idx[i] = 0;
        if (i == 0) goto next_x;
      }
      if (m == 0) break;
    }
  next_x:;
  }
  return out;
}

namespace detail {

// Partitions of j in weakly decreasing part order.
inline void partitions_rec(u32 remaining, u32 max_part, std::vector<u32>& cur,
                           std::vector<std::vector<u32>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (u32 part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<u32>> partitions_of(u32 j) {
  std::vector<std::vector<u32>> out;
  std::vector<u32> cur;
  partitions_rec(j, j, cur, out);
  return out;
}

// C(n, k) exactly; the stepwise products/divisions stay integral.
inline BigUint big_binomial(u64 n, u64 k) {
  if (k > n) return BigUint(0);
  BigUint c(1);
  for (u64 i = 1; i <= k; ++i) {
    c.mul_small(n - k + i);
    c.div_small(i);
  }
  return c;
}

}  // namespace detail

// Exact number of tuples (h_1..h_2j) in [1,H]^{2j} whose first-half multiset
// equals the second-half multiset: sum over multisets of (orderings)^2,
// aggregated by multiplicity profile (partitions of j).
inline BigUint count_matching_tuples(u64 H, u32 j) {
  if (j == 0) return BigUint(1);
  if (H == 0) return BigUint(0);
  if (j > 64) throw TooLargeError(j, 64);
  BigUint total(0);
  for (const auto& parts : detail::partitions_of(j)) {
    // ways to pick the value set: distinct values per part, same-size parts unordered
    BigUint ways(1);
    u64 remaining = H;
    size_t i = 0;
    bool feasible = true;
    while (i < parts.size()) {
      size_t run = i;
      while (run < parts.size() && parts[run] == parts[i]) ++run;
      const u64 group = run - i;
      if (group > remaining) {
        feasible = false;
        break;
      }
      ways = ways * detail::big_binomial(remaining, group);
      remaining -= group;
      i = run;
    }
    if (!feasible) continue;
    // orderings of one half: multinomial j! / prod(parts!)
    BigUint perm(1);
    u64 used = 0;
    for (u32 part : parts) {
      perm = perm * detail::big_binomial(used + part, part);
      used += part;
    }
    total += ways * perm * perm;
  }
  return total;
}

}  // namespace hybridsum
