#pragma once

#include <chrono>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "hybridsum/bounds.hpp"
#include "hybridsum/config.hpp"

namespace hybridsum {

struct VerifyOptions {
  std::string filter;        // substring match on check names; empty = all
  std::string inject_fault;  // "field" corrupts a log table on purpose
};

struct Check {
  std::string name;
  std::function<std::pair<bool, std::string>(const VerifyOptions&)> run;
};

namespace verify_detail {

inline std::shared_ptr<const PrimeField> shared_field(u64 p) {
  return std::make_shared<const PrimeField>(p);
}

inline ExperimentConfig make_experiment(std::shared_ptr<const PrimeField> F,
                                        const std::string& curve, const std::string& g,
                                        const std::string& f, u64 a, u64 k, Rectangle rect,
                                        double theta = 0.0, bool wrap = true,
                                        u64 chi_power = 1) {
  const u64 p = F->p();
  return ExperimentConfig{F,
                          parse_poly(curve, p),
                          parse_rational(g, p),
                          parse_rational(f, p),
                          MultChar(F, a, chi_power),
                          AddChar(F, k),
                          rect,
                          theta,
                          wrap};
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

// ---- independent oracles (never reuse the code paths they check) ----

// Plain brute-force count of matching-half tuples in [1,H]^{2j}.
inline u64 brute_force_matching_tuples(u64 H, u32 j) {
  const u32 L = 2 * j;
  std::vector<u64> h(L, 1);
  u64 count = 0;
  for (;;) {
    std::vector<u64> a(h.begin(), h.begin() + j), b(h.begin() + j, h.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a == b) ++count;
    u32 l = L;
    bool done = true;
    while (l-- > 0) {
      if (++h[l] <= H) {
        done = false;
        break;
      }
      h[l] = 1;
    }
    if (done) break;
  }
  return count;
}

// Direct interpreter over the expression grammar; returns the value at
// (x0, y0) without building a coefficient table.
struct ExprValueOracle {
  std::string_view s;
  u64 p, x0, y0;
  size_t pos = 0;

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at(char c) {
    ws();
    return pos < s.size() && s[pos] == c;
  }
  u64 expr() {
    u64 v = term();
    for (;;) {
      if (at('+')) {
        ++pos;
        v = (v + term()) % p;
      } else if (at('-')) {
        ++pos;
        v = (v + p - term()) % p;
      } else {
        return v;
      }
    }
  }
  u64 term() {
    u64 v = factor();
    while (at('*')) {
      ++pos;
      v = v * factor() % p;
    }
    return v;
  }
  u64 factor() {
    if (at('-')) {
      ++pos;
      const u64 v = factor();
      return v == 0 ? 0 : p - v;
    }
    u64 v = atom();
    if (at('^')) {
      ++pos;
      ws();
      u64 e = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        e = e * 10 + static_cast<u64>(s[pos++] - '0');
      v = mod_pow(v, e, p);
    }
    return v;
  }
  u64 atom() {
    ws();
    if (s[pos] == 'x') {
      ++pos;
      return x0 % p;
    }
    if (s[pos] == 'y') {
      ++pos;
      return y0 % p;
    }
    if (s[pos] == '(') {
      ++pos;
      const u64 v = expr();
      ws();
      ++pos;  // ')'
      return v;
    }
    u64 v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      v = (v * 10 + static_cast<u64>(s[pos++] - '0')) % p;
    return v;
  }
};

inline u64 eval_expr_text(std::string_view text, u64 p, u64 x0, u64 y0) {
  ExprValueOracle o{text, p, x0, y0};
  return o.expr();
}

// Brute-force window sum: scans the full plane, checks the curve equation and
// window membership itself, evaluates chi via trial discrete logs.
inline cplx brute_force_window_sum(const ExperimentConfig& cfg, u64 n) {
  const u64 p = cfg.p();
  const u64 H = cfg.rect.H;
  cplx acc(0.0, 0.0);
  for (u64 x = 0; x < p; ++x) {
    bool in_window = false;
    for (u64 h = 1; h <= H; ++h) {
      const u64 xr = n + h;
      if (xr >= p && !cfg.wrap) break;
      if (xr % p == x) {
        in_window = true;
        break;
      }
    }
    if (!in_window) continue;
    for (u64 y = cfg.rect.j_lo; y < cfg.rect.j_hi; ++y) {
      // naive curve evaluation, term by term
      u64 pv = 0;
      for (const auto& [mo, c] : cfg.curve.terms()) {
        u64 t = c;
        for (int i = 0; i < mo.dx; ++i) t = t * x % p;
        for (int i = 0; i < mo.dy; ++i) t = t * y % p;
        pv = (pv + t) % p;
      }
      if (pv != 0) continue;
      const u64 gd = cfg.g.den.eval(x, y), fd = cfg.f.den.eval(x, y);
      if (gd == 0 || fd == 0) continue;
      const u64 gv = cfg.g.num.eval(x, y) * mod_pow(gd, p - 2, p) % p;
      const u64 fv = cfg.f.num.eval(x, y) * mod_pow(fd, p - 2, p) % p;
      cplx chi_v(1.0, 0.0);
      if (cfg.chi.order() > 1) {
        if (gv == 0) {
          chi_v = cplx(0.0, 0.0);
        } else {
          u64 t = 0, acc_g = 1;  // trial discrete log
          const u64 gen = cfg.field->generator();
          while (acc_g != gv) {
            acc_g = acc_g * gen % p;
            ++t;
          }
          chi_v = std::polar(1.0, 2.0 * std::numbers::pi *
                                      static_cast<double>(t % cfg.chi.order() * cfg.chi.power() %
                                                          cfg.chi.order()) /
                                      static_cast<double>(cfg.chi.order()));
        }
      }
      const cplx psi_v =
          std::polar(1.0, 2.0 * std::numbers::pi *
                              static_cast<double>(cfg.psi.frequency() * fv % p) /
                              static_cast<double>(p));
      acc += chi_v * psi_v;
    }
  }
  return acc;
}

// Composite Simpson rule for f on [a, b].
template <typename F>
double simpson(F f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

struct BoxMuller {
  std::mt19937_64 rng;
  explicit BoxMuller(u64 seed) : rng(seed) {}
  double operator()() {
    const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
};

inline BivarPoly random_poly(std::mt19937_64& rng, u64 p, int max_deg, bool force_y) {
  BivarPoly::Terms t;
  const int nterms = 2 + static_cast<int>(rng() % 4);
  for (int i = 0; i < nterms; ++i) {
    const int dx = static_cast<int>(rng() % static_cast<u64>(max_deg + 1));
    const int dy = static_cast<int>(rng() % static_cast<u64>(max_deg + 1 - dx));
    t[{dx, dy}] = 1 + rng() % (p - 1);
  }
  if (force_y) t[{static_cast<int>(rng() % 2), 1}] = 1 + rng() % (p - 1);
  return BivarPoly(p, std::move(t));
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// Acceptance criteria. Each runs at its pinned tolerance and reports detail.
// ---------------------------------------------------------------------------

namespace acceptance {

using namespace verify_detail;

// 1. moments() and moments_via_binomial() agree on randomized configs.
inline std::pair<bool, std::string> moment_identity() {
  std::mt19937_64 rng(0xA1u);
  const std::vector<u64> primes = {31, 101, 499};
  const double thetas[] = {0.0, std::numbers::pi / 6.0, std::numbers::pi / 2.0};
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const u64 p = primes[trial % primes.size()];
    auto F = shared_field(p);
    u64 a = 1 + rng() % 3;
    while ((p - 1) % a != 0) a = 1 + rng() % 3;
    const u64 k = rng() % 3;
    const double theta = thetas[rng() % 3];
    const u64 H = 2 + rng() % 30;
    const u64 i_lo = rng() % (p / 2), i_hi = i_lo + p / 3;
    const u64 j_lo = rng() % (p / 2);
    const u64 j_hi = j_lo + 1 + rng() % (p - j_lo);

    BivarPoly curve = random_poly(rng, p, 3, true);
    RationalMap g = rng() % 4 == 0
                        ? RationalMap(random_poly(rng, p, 2, false),
                                      parse_poly("x + 1", p))
                        : RationalMap::from_poly(random_poly(rng, p, 3, false));
    RationalMap f = rng() % 4 == 0
                        ? RationalMap(random_poly(rng, p, 2, false),
                                      parse_poly("y + 2", p))
                        : RationalMap::from_poly(random_poly(rng, p, 3, false));
    ExperimentConfig cfg{F,       std::move(curve), std::move(g), std::move(f),
                         MultChar(F, a),            AddChar(F, k), Rectangle{i_lo, i_hi, j_lo, j_hi, H},
                         theta,   true};
    const PointTable pt = enumerate_points(cfg.curve, j_lo, j_hi);
    const SumSeries series = compute_series(cfg, pt);
    const MomentReport direct = moments(series, 6, false);
    for (u32 kk = 1; kk <= 6; ++kk) {
      // raw M_k = sum u_n^k against the binomial route, scaled by sum |rho|^k
      const cplx via = moments_via_binomial(series, kk);
      const double raw = direct.entries[kk].m.real();
      const double d = std::abs(via - cplx(raw, 0.0)) / moment_comparison_scale(series, kk);
      worst = std::max(worst, d);
      if (d > 1e-8)
        return {false, "scaled deviation " + fmt(d) + " at k=" + std::to_string(kk) +
                           " (p=" + std::to_string(p) + ")"};
    }
  }
  return {true, "20 configs, k<=6, worst scaled deviation " + fmt(worst)};
}

// 2. |S_n|^{2j} equals the shifted-curve tuple reassembly.
inline std::pair<bool, std::string> shifted_expansion() {
  std::mt19937_64 rng(0xA2u);
  auto F = shared_field(31);
  double worst = 0.0;
  const struct {
    const char* curve;
    u64 j_hi;
  } curves[] = {{"y - x", 31}, {"x^2 + y^2 - 1", 16}};
  for (const auto& cv : curves) {
    for (u32 j : {1u, 2u}) {
      for (u64 H : {2ull, 3ull}) {
        ExperimentConfig cfg = make_experiment(F, cv.curve, "x", "x*y", 2, 1,
                                               Rectangle{0, 30, 0, cv.j_hi, H});
        const PointTable pt = enumerate_points(cfg.curve, 0, cv.j_hi);
        for (int rep = 0; rep < 5; ++rep) {
          const u64 n = rng() % 31;
          const auto [direct, via] = shifted_expansion_check(cfg, pt, n, j);
          worst = std::max(worst, std::abs(direct - via));
          if (std::abs(direct - via) > 1e-9)
            return {false, std::string(cv.curve) + " j=" + std::to_string(j) +
                               " H=" + std::to_string(H) + " n=" + std::to_string(n) +
                               ": |direct-via|=" + fmt(std::abs(direct - via))};
        }
      }
    }
  }
  return {true, "diagonal+circle, j<=2, H<=3, worst |direct-via| " + fmt(worst)};
}

// 3. Matching-tuple combinatorics: closed form vs brute force, and the
//    sandwich j!*H*(H-1)...(H-j+1) <= count <= j!*H^j*(1 + 4 j^2/H).
inline std::pair<bool, std::string> tuple_combinatorics() {
  for (u64 H = 1; H <= 6; ++H)
    for (u32 j = 1; j <= 3; ++j) {
      const BigUint closed = count_matching_tuples(H, j);
      const u64 brute = brute_force_matching_tuples(H, j);
      if (closed.to_u64_saturating() != brute)
        return {false, "H=" + std::to_string(H) + " j=" + std::to_string(j) + ": closed " +
                           closed.to_string() + " vs brute " + std::to_string(brute)};
    }
  const u64 H = 50;
  const u32 j = 2;
  const BigUint count = count_matching_tuples(H, j);
  BigUint lower(1);  // j! * falling(H, j)
  for (u64 i = 1; i <= j; ++i) lower.mul_small(i);
  for (u64 i = 0; i < j; ++i) lower.mul_small(H - i);
  BigUint upper(1);  // j! * H^{j-1} * (H + 4 j^2)  ==  j! H^j (1 + 4 j^2 / H)
  for (u64 i = 1; i <= j; ++i) upper.mul_small(i);
  for (u64 i = 0; i + 1 < j; ++i) upper.mul_small(H);
  upper.mul_small(H + 4ull * j * j);
  if (count < lower || upper < count)
    return {false, "H=50 j=2: count " + count.to_string() + " outside [" + lower.to_string() +
                       ", " + upper.to_string() + "]"};
  const double ratio_low = count.to_double() / lower.to_double();
  return {true, "brute force matches for H<=6, j<=3; H=50 j=2 count=" + count.to_string() +
                    ", count/(j! H falling j)=" + fmt(ratio_low)};
}

// 4. Completion identity (m=1) and the exact tail bound on a grid.
inline std::pair<bool, std::string> completion_and_tail() {
  std::mt19937_64 rng(0xA4u);
  double worst = 0.0;
  for (const u64 p : {101ull, 199ull}) {
    auto F = shared_field(p);
    for (int trial = 0; trial < 5; ++trial) {
      const char* curves[] = {"y - x", "x^2 + y^2 - 1", "y^2 - x^3 - x - 1"};
      u64 a = 1 + rng() % 3;
      while ((p - 1) % a != 0) a = 1 + rng() % 3;
      ExperimentConfig cfg = make_experiment(F, curves[rng() % 3], "x", "x*y", a,
                                             1 + rng() % 2, Rectangle{0, p - 1, 0, p, 1});
      const u64 lo = rng() % (p / 2);
      const CoordInterval jx{lo, lo + 1 + rng() % (p - lo)};
      const CoordInterval jy{0, p};
      const cplx direct = incomplete_direct(cfg, jx, jy);
      const cplx via = incomplete_via_completion(cfg, jx, jy);
      const double d = std::abs(direct - via);
      worst = std::max(worst, d);
      if (d > 1e-7 * static_cast<double>(p))
        return {false, "p=" + std::to_string(p) + ": |direct-completed| = " + fmt(d)};
    }
  }
  u64 grid_checks = 0;
  for (u64 p = 3; p < 500; p += 2) {
    if (!is_prime(p)) continue;
    std::vector<u64> grid;
    for (int i = 0; i <= 9; ++i) grid.push_back(i * p / 9);
    for (size_t ai = 0; ai < grid.size(); ++ai)
      for (size_t bi = ai + 1; bi < grid.size(); ++bi) {
        if (grid[ai] == grid[bi]) continue;
        const auto [lhs, rhs] = tail_bound_check(p, 1, grid[ai], grid[bi]);
        ++grid_checks;
        if (lhs > rhs)
          return {false, "tail bound violated at p=" + std::to_string(p) + " J=[" +
                             std::to_string(grid[ai]) + "," + std::to_string(grid[bi]) + ")"};
      }
  }
  return {true, "completion worst |diff| " + fmt(worst) + "; tail bound held for " +
                    std::to_string(grid_checks) + " (p, J) pairs"};
}

namespace regimes {

struct MomentBand {
  u32 k;
  double lo, hi;
};

inline std::pair<bool, std::string> gaussian_run(const ExperimentConfig& cfg,
                                                 const std::vector<MomentBand>& bands,
                                                 GaussianModel::Variant model,
                                                 double ks_limit, bool ks_above) {
  const PointTable pt = enumerate_points(cfg.curve, cfg.rect.j_lo, cfg.rect.j_hi);
  const SumSeries series = compute_series(cfg, pt);
  const MomentReport rep = moments(series, 4, quadratic_real_mode(cfg));
  std::string detail;
  bool ok = true;
  for (const auto& band : bands) {
    const double v = rep.entries[band.k].normalized;
    detail += "m" + std::to_string(band.k) + "=" + fmt(v);
    if (v < band.lo || v > band.hi) {
      detail += "(outside [" + fmt(band.lo) + "," + fmt(band.hi) + "])";
      ok = false;
    }
    detail += " ";
  }
  const DistributionReport dist = analyze_distribution(series, model);
  const double ks = model == GaussianModel::VarHalf ? dist.ks_var_half : dist.ks_standard;
  detail += "ks=" + fmt(ks) + " vs " + (ks_above ? ">" : "<") + fmt(ks_limit);
  if (!(ks_above ? ks > ks_limit : ks < ks_limit)) ok = false;
  return {ok, detail};
}

}  // namespace regimes

// 5. Main-regime Gaussian behaviour at p = 10007, theta in {0, pi/4}.
inline std::pair<bool, std::string> gaussian_main_regime() {
  auto F = shared_field(10007);
  const u64 p = F->p();
  std::string detail;
  bool all_ok = true;
  for (const double theta : {0.0, std::numbers::pi / 4.0}) {
    ExperimentConfig cfg = make_experiment(F, "y - x", "x", "x*y", 2, 1,
                                           Rectangle{0, p - 1, 0, p, 101}, theta);
    const auto [ok, d] = regimes::gaussian_run(
        cfg,
        {{2, 0.90, 1.10}, {4, 2.55, 3.45}, {3, -0.2, 0.2}},
        GaussianModel::VarHalf, ks_threshold(p), false);
    detail += "theta=" + fmt(theta) + ": " + d + "; ";
    all_ok = all_ok && ok;
  }
  return {all_ok, detail};
}

// 6. Quadratic-real regime (trivial psi) on the line y = 0.
//    J = [0, p): P = y pins y = 0 for every x, so beta - alpha = 1 equals the
//    point density exactly; a narrower J would rescale u_n by sqrt(p/|J|).
inline std::pair<bool, std::string> gaussian_quadratic_real_regime() {
  auto F = shared_field(10007);
  const u64 p = F->p();
  ExperimentConfig cfg =
      make_experiment(F, "y", "x", "0", 2, 0, Rectangle{0, p - 1, 0, p, 101}, 0.0);
  return regimes::gaussian_run(cfg, {{2, 0.90, 1.10}, {4, 2.55, 3.45}},
                               GaussianModel::Standard, ks_threshold(p), false);
}

// 7. Negative controls: imaginary-axis projections that must not be Gaussian.
inline std::pair<bool, std::string> negative_controls() {
  auto F = shared_field(10007);
  const u64 p = F->p();
  const u64 small = static_cast<u64>(std::pow(static_cast<double>(p), 0.45));
  const u64 large = static_cast<u64>(std::pow(static_cast<double>(p), 0.75));
  std::string detail;

  ExperimentConfig a = make_experiment(F, "y - x", "x", "x*y", 2, 1,
                                       Rectangle{0, small, 0, p, small},
                                       std::numbers::pi / 2.0);
  auto [ok_a, da] = regimes::gaussian_run(a, {}, GaussianModel::VarHalf, 0.2, true);
  detail += "(a) " + da + "; ";
  if (!ok_a) return {false, detail};

  ExperimentConfig b = make_experiment(F, "y - x", "x", "x + y", 2, 1,
                                       Rectangle{0, large, 0, p, small},
                                       std::numbers::pi / 2.0);
  auto [ok_b, db] = regimes::gaussian_run(b, {}, GaussianModel::VarHalf, 0.2, true);
  detail += "(b) " + db;
  return {ok_b, detail};
}

// 8. Trivial chi keeps the main-regime conclusions.
inline std::pair<bool, std::string> gaussian_trivial_chi_regime() {
  auto F = shared_field(10007);
  const u64 p = F->p();
  std::string detail;
  bool all_ok = true;
  for (const double theta : {0.0, std::numbers::pi / 4.0}) {
    ExperimentConfig cfg = make_experiment(F, "y - x", "x", "x*y", 1, 1,
                                           Rectangle{0, p - 1, 0, p, 101}, theta);
    const auto [ok, d] = regimes::gaussian_run(
        cfg, {{2, 0.90, 1.10}, {4, 2.55, 3.45}, {3, -0.2, 0.2}},
        GaussianModel::VarHalf, ks_threshold(p), false);
    detail += "theta=" + fmt(theta) + ": " + d + "; ";
    all_ok = all_ok && ok;
  }
  return {all_ok, detail};
}

// 9. Curated bound-ratio sweep plus the degenerate blow-up.
inline std::pair<bool, std::string> bound_sweep() {
  std::vector<BoundSweepItem> items;
  int id = 0;
  for (const u64 p : {101ull, 199ull, 499ull}) {
    auto F = shared_field(p);
    const u64 half = (p + 1) / 2;
    for (const char* curve : {"y - x", "x^2 + y^2 - 1", "y^2 - x^3 - x - 1"}) {
      for (const u64 a : {2ull, 3ull}) {
        if ((p - 1) % a != 0) continue;
        for (const u64 k : {1ull, 2ull}) {
          for (const bool restrict_y : {false, true}) {
            ExperimentConfig cfg = make_experiment(F, curve, "x", "x*y", a, k,
                                                   Rectangle{0, p - 1, 0, p, 1});
            BoundSweepItem item{"cfg" + std::to_string(id++), std::move(cfg),
                                CoordInterval{1, 1 + half},
                                restrict_y ? CoordInterval{0, half} : CoordInterval{0, p},
                                3.0};
            items.push_back(std::move(item));
          }
        }
      }
    }
    // one rational g to exercise a nonzero denominator degree
    items.push_back(BoundSweepItem{"cfg" + std::to_string(id++),
                                   make_experiment(F, "y - x", "x / (y + 1)", "x*y", 2, 1,
                                                   Rectangle{0, p - 1, 0, p, 1}),
                                   CoordInterval{1, 1 + half}, CoordInterval{0, p}, 3.0});
  }
  const auto reports = bound_ratio_sweep(items);
  double max_ratio = 0.0;
  for (const auto& r : reports) {
    if (r.degenerate != Tri::Fails) continue;
    max_ratio = std::max(max_ratio, r.ratio);
    if (r.ratio > 1.0)
      return {false, r.config_id + " (p=" + std::to_string(r.p) + ") ratio " + fmt(r.ratio)};
  }

  // degenerate control: chi quadratic on g = x^2 with trivial psi
  for (const u64 p : {101ull, 199ull, 499ull}) {
    auto F = shared_field(p);
    const u64 half = (p + 1) / 2;
    ExperimentConfig cfg = make_experiment(F, "y - x", "x^2", "0", 2, 0,
                                           Rectangle{0, p - 1, 0, half, p});
    const BoundSweepItem item{"degenerate", cfg, CoordInterval{0, p}, CoordInterval{0, half},
                              3.0};
    const BoundReport rep = bound_report(item);
    if (rep.degenerate != Tri::Holds)
      return {false, "degenerate config not flagged at p=" + std::to_string(p)};
    if (rep.abs_S < 0.4 * static_cast<double>(p))
      return {false, "degenerate |S| = " + fmt(rep.abs_S) + " < 0.4 |I| at p=" +
                         std::to_string(p)};
  }
  return {true, "max non-degenerate ratio " + fmt(max_ratio) +
                    " over " + std::to_string(reports.size()) + " configs; degenerate blow-up reproduced"};
}

// 10. Gaussian moment targets, closed form vs quadrature.
inline std::pair<bool, std::string> gaussian_moment_targets() {
  double worst = 0.0;
  for (u32 k = 0; k <= 10; ++k) {
    const double closed = gaussian_scaled_moment(k);
    double expect = k % 2 ? 0.0 : 1.0;
    for (u32 i = 1; k >= 2 && i <= k - 1; i += 2) expect *= i;
    if (closed != expect)
      return {false, "k=" + std::to_string(k) + ": closed form " + fmt(closed) + " != " +
                         fmt(expect)};
    // Gamma-function identity and direct quadrature of (sqrt2 t)^k exp(-t^2)/sqrt(pi).
    // The even-k parity factor carries a 1/2 so the identity lands on mu_k.
    const double gamma_form = 0.5 * (1.0 + (k % 2 ? -1.0 : 1.0)) *
                              std::pow(2.0, static_cast<double>(k) / 2.0) *
                              std::tgamma((1.0 + k) / 2.0) / std::sqrt(std::numbers::pi);
    const double quad = simpson(
        [k](double t) {
          return std::pow(std::numbers::sqrt2 * t, static_cast<double>(k)) *
                 std::exp(-t * t) / std::sqrt(std::numbers::pi);
        },
        -12.0, 12.0, 200000);
    worst = std::max({worst, std::abs(gamma_form - closed), std::abs(quad - closed)});
    if (std::abs(gamma_form - closed) > 1e-9 * std::max(1.0, closed))
      return {false, "gamma identity off at k=" + std::to_string(k)};
    if (std::abs(quad - closed) > 1e-6)
      return {false, "quadrature off by " + fmt(std::abs(quad - closed)) + " at k=" +
                         std::to_string(k)};
  }
  return {true, "k<=10 exact, worst quadrature gap " + fmt(worst)};
}

}  // namespace acceptance

// ---------------------------------------------------------------------------
// Module invariants as runnable property checks.
// ---------------------------------------------------------------------------

namespace props {

using namespace verify_detail;

inline std::pair<bool, std::string> field_invariants(const VerifyOptions& opt) {
  if (make_field(7).generator() != 3) return {false, "smallest primitive root of 7 is 3"};
  const PrimeField f5 = make_field(5);
  if (f5.generator() != 2 || f5.log(4) != 2) return {false, "log table of F_5 wrong"};

  PrimeField F = make_field(101);
  if (opt.inject_fault == "field") F.corrupt_log_entry(2, 7);
  std::vector<bool> seen(F.p() - 1, false);
  for (u64 x = 1; x < F.p(); ++x) {
    const u64 t = F.log(x);
    if (t >= F.p() - 1 || seen[t]) return {false, "log table is not a bijection"};
    seen[t] = true;
    if (F.pow(F.generator(), t) != x) return {false, "generator^log(x) != x"};
    if (F.mul(x, F.inv(x)) != 1) return {false, "x * inv(x) != 1"};
  }
  if (F.pow(2, F.p() - 1) != 1) return {false, "Fermat check failed"};
  bool threw = false;
  try {
    (void)make_field(4);
  } catch (const NotPrimeError&) {
    threw = true;
  }
  if (!threw) return {false, "p=4 accepted"};
  try {
    (void)F.inv(0);
    return {false, "inv(0) did not throw"};
  } catch (const ZeroInverseError&) {
  }
  return {true, "bijection, round trips, error paths"};
}

inline std::pair<bool, std::string> parser_cases(const VerifyOptions&) {
  const PrimeField f7 = make_field(7), f5 = make_field(5);
  const BivarPoly a = parse_poly("y - x", f7);
  if (a.coeff(0, 1) != 1 || a.coeff(1, 0) != 6 || a.terms().size() != 2)
    return {false, "'y - x' over F_7"};
  const BivarPoly b = parse_poly("x^2 + y^2 - 1", f5);
  if (b.coeff(2, 0) != 1 || b.coeff(0, 2) != 1 || b.coeff(0, 0) != 4)
    return {false, "'x^2 + y^2 - 1' over F_5"};
  try {
    (void)parse_poly("x^-1", f7);
    return {false, "x^-1 accepted"};
  } catch (const NegativeExponentError&) {
  }
  if (parse_rational("(x+1) / (y^2)", f7).denominator_degree() != 2)
    return {false, "denominator degree of (x+1)/(y^2)"};
  try {
    (void)parse_rational("x / 0", f7);
    return {false, "x / 0 accepted"};
  } catch (const ZeroDenominatorError&) {
  }
  if (!(parse_poly("-x^2", f7) == poly_neg(parse_poly("x^2", f7))))
    return {false, "-x^2 must read as -(x^2)"};
  if (!(parse_poly("x^2*y", f7) == parse_poly("(x^2)*y", f7)))
    return {false, "^ must bind tighter than *"};
  return {true, "grammar corner cases"};
}

inline std::pair<bool, std::string> parser_roundtrip(const VerifyOptions&) {
  std::mt19937_64 rng(0xB2u);
  for (int i = 0; i < 200; ++i) {
    const u64 p = i % 2 ? 13 : 101;
    const BivarPoly q = random_poly(rng, p, 4, i % 3 == 0);
    const BivarPoly back = parse_poly(to_string(q), p);
    if (!(back == q)) return {false, "print/parse mismatch: " + to_string(q)};
    const RationalMap r(q, parse_poly("y + 1", p));
    if (!(parse_rational(to_string(r), p) == r))
      return {false, "rational print/parse mismatch"};
  }
  // fuzz: parser must either produce a value or throw a typed error in range
  const std::string alphabet = "xy0123456789+-*^() ";
  std::mt19937_64 fuzz(0xB3u);
  for (int i = 0; i < 3000; ++i) {
    std::string s;
    const size_t len = 1 + fuzz() % 24;
    for (size_t j = 0; j < len; ++j) s += alphabet[fuzz() % alphabet.size()];
    try {
      (void)parse_poly(s, 13);
    } catch (const SyntaxError& e) {
      if (e.offset > s.size()) return {false, "offset out of range for: " + s};
    } catch (const NegativeExponentError&) {
    } catch (const ZeroDenominatorError&) {
    }
  }
  return {true, "200 canonical round trips, 3000 fuzzed strings"};
}

inline std::pair<bool, std::string> parser_evaluation(const VerifyOptions&) {
  std::mt19937_64 rng(0xB4u);
  const char* samples[] = {"(x + 2*y)^3 - x*y",   "-x^2 + y^2 - -3",
                           "x*(y + 1)*(y + 2)",   "((x))*((y^2 + 1))",
                           "7*x^4 - 2*y^3 + x*y", "1 + 2 + 3*x - 4*y^2"};
  for (const char* s : samples) {
    for (int i = 0; i < 10; ++i) {
      const u64 p = 101, x0 = rng() % p, y0 = rng() % p;
      const u64 via_poly = parse_poly(s, p).eval(x0, y0);
      const u64 via_text = eval_expr_text(s, p, x0, y0);
      if (via_poly != via_text) return {false, std::string("mismatch on ") + s};
    }
  }
  return {true, "expression evaluation matches expanded tables"};
}

inline std::pair<bool, std::string> algebra_ring_axioms(const VerifyOptions&) {
  std::mt19937_64 rng(0xB5u);
  const u64 p = 101;
  for (int i = 0; i < 50; ++i) {
    const BivarPoly q1 = random_poly(rng, p, 3, false), q2 = random_poly(rng, p, 3, false),
                    q3 = random_poly(rng, p, 3, false);
    if (!(poly_add(poly_add(q1, q2), q3) == poly_add(q1, poly_add(q2, q3))))
      return {false, "associativity"};
    if (!(poly_mul(q1, poly_add(q2, q3)) == poly_add(poly_mul(q1, q2), poly_mul(q1, q3))))
      return {false, "distributivity"};
    const u64 u = rng() % p, v = rng() % p, x0 = rng() % p, y0 = rng() % p;
    if (!(poly_shift_x(poly_shift_x(q1, u), v) == poly_shift_x(q1, (u + v) % p)))
      return {false, "shift composition"};
    if (!(poly_shift_x(q1, 0) == q1)) return {false, "shift by 0"};
    if (poly_mul(q1, q2).eval(x0, y0) != q1.eval(x0, y0) * q2.eval(x0, y0) % p)
      return {false, "eval multiplicativity"};
  }
  const BivarPoly sh = poly_shift_x(parse_poly("x^2", 5), 1);
  if (!(sh == parse_poly("x^2 + 2*x + 1", 5))) return {false, "binomial shift of x^2"};
  if (!(poly_mul(parse_poly("y - x", 7), parse_poly("y + x", 7)) ==
        parse_poly("y^2 - x^2", 7)))
    return {false, "(y-x)(y+x)"};
  const auto rv = eval_rational(parse_rational("x / (x - 1)", 5), 2, 0);
  if (!rv || *rv != 2) return {false, "x/(x-1) at (2,0) over F_5"};
  if (eval_rational(parse_rational("x / y", 7), 3, 0)) return {false, "pole not detected"};
  const auto [r1, r2] = split_r1_r2(parse_poly("x^3 + x*y", 7));
  if (!(r1 == parse_poly("x^3", 7)) || !(r2 == parse_poly("x*y", 7)))
    return {false, "split of x^3 + xy"};
  return {true, "ring axioms, shifts, eval, splits"};
}

inline std::pair<bool, std::string> algebra_perfect_power(const VerifyOptions&) {
  std::mt19937_64 rng(0xB6u);
  for (int i = 0; i < 40; ++i) {
    const u64 p = 101;
    const u64 a = std::vector<u64>{2, 3, 5}[rng() % 3];
    const BivarPoly h = random_poly(rng, p, 3, i % 2 == 0);
    const u64 c = 1 + rng() % (p - 1);
    if (!is_perfect_power(poly_scale(poly_pow(h, a), c), a))
      return {false, "c*h^a not recognized (a=" + std::to_string(a) + ")"};
  }
  if (!is_perfect_power(parse_poly("x^2 + 2*x*y + y^2", 7), 2)) return {false, "(x+y)^2"};
  if (is_perfect_power(parse_poly("x^2 + y", 7), 2)) return {false, "x^2 + y is no square"};
  if (!is_perfect_power(parse_poly("4*(x+1)^3", 7), 3)) return {false, "4*(x+1)^3, a=3"};

  // brute-force oracle: every h with deg <= 2, every constant, over F_5 and F_7
  for (const u64 p : {5ull, 7ull}) {
    std::vector<BivarPoly> powers;  // all c*h^2 with deg h <= 2
    const Monomial mons[] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    std::vector<u64> cf(6, 0);
    for (;;) {
      BivarPoly::Terms t;
      for (int m = 0; m < 6; ++m)
        if (cf[m]) t[mons[m]] = cf[m];
      const BivarPoly h(p, std::move(t));
      if (!h.is_zero()) powers.push_back(poly_pow(h, 2));
      int m = 0;
      while (m < 6 && ++cf[m] == p) cf[m++] = 0;
      if (m == 6) break;
    }
    std::mt19937_64 qrng(0xB7u + p);
    for (int i = 0; i < 24; ++i) {
      BivarPoly q = i % 2 ? poly_scale(powers[qrng() % powers.size()], 1 + qrng() % (p - 1))
                          : random_poly(qrng, p, 4, false);
      bool oracle = q.is_zero();
      for (const auto& hp : powers) {
        if (hp.terms().size() != q.terms().size() || hp.is_zero() != q.is_zero()) continue;
        const u64 c = q.terms().rbegin()->second *
                      mod_inv(hp.terms().rbegin()->second, p) % p;
        if (poly_scale(hp, c) == q) {
          oracle = true;
          break;
        }
      }
      if (is_perfect_power(q, 2) != oracle)
        return {false, "oracle disagrees over F_" + std::to_string(p) + " on " + to_string(q)};
    }
  }
  return {true, "random powers recognized; brute-force oracle agrees over F_5, F_7"};
}

inline std::pair<bool, std::string> character_identities(const VerifyOptions&) {
  auto F31 = shared_field(31);
  for (const u64 a : {2ull, 3ull, 5ull, 6ull, 15ull}) {
    const MultChar chi(F31, a);
    // multiplicativity and exact order
    std::mt19937_64 rng(0xC1u + a);
    for (int i = 0; i < 60; ++i) {
      const u64 x = 1 + rng() % 30, y = 1 + rng() % 30;
      if (std::abs(chi.eval(x * y % 31) - chi.eval(x) * chi.eval(y)) > 1e-12)
        return {false, "multiplicativity a=" + std::to_string(a)};
    }
    for (u64 m = 1; m < a; ++m) {
      cplx acc(0, 0);  // chi^m must be nontrivial for 0 < m < a
      for (u64 x = 1; x < 31; ++x) {
        cplx v(1, 0);
        for (u64 t = 0; t < m; ++t) v *= chi.eval(x);
        acc += v;
      }
      if (std::abs(acc) > 1e-9 * 31) return {false, "order not exact, a=" + std::to_string(a)};
    }
    if (std::abs(chi.conjugate().eval(7) - std::conj(chi.eval(7))) > 1e-12)
      return {false, "conjugate character"};
  }
  try {
    (void)MultChar(shared_field(7), 4);
    return {false, "order 4 accepted for p=7"};
  } catch (const OrderNotDividingError&) {
  }
  const MultChar q7(shared_field(7), 2);
  if (std::abs(q7.eval(2) - cplx(1, 0)) > 1e-12 || std::abs(q7.eval(3) - cplx(-1, 0)) > 1e-12)
    return {false, "quadratic values mod 7"};

  auto F = shared_field(10007);
  const u64 p = F->p();
  for (const u64 k : {1ull, 5ull}) {
    const AddChar psi(F, k);
    cplx acc(0, 0);
    for (u64 x = 0; x < p; ++x) acc += psi.eval(x);
    if (std::abs(acc) > 1e-10 * static_cast<double>(p))
      return {false, "psi orthogonality, k=" + std::to_string(k)};
    if (std::abs(psi.conjugate().eval(1234) - std::conj(psi.eval(1234))) > 1e-12)
      return {false, "psi conjugate"};
    if (std::abs(psi.eval(0) - cplx(1, 0)) != 0.0) return {false, "psi(0) != 1"};
  }
  const MultChar chi2(F, 2);
  cplx acc(0, 0);
  for (u64 x = 1; x < p; ++x) acc += chi2.eval(x);
  if (std::abs(acc) > 1e-10 * static_cast<double>(p)) return {false, "chi orthogonality"};
  return {true, "orthogonality, exact order, conjugation"};
}

inline std::pair<bool, std::string> geometry_point_tables(const VerifyOptions&) {
  {
    const PointTable pt = enumerate_points(parse_poly("x^2 + y^2 - 1", 5), 0, 5);
    std::vector<std::pair<u64, u64>> pts;
    for (u64 x = 0; x < 5; ++x)
      for (u32 y : pt.bucket(x)) pts.push_back({x, y});
    const std::vector<std::pair<u64, u64>> expect = {{0, 1}, {0, 4}, {1, 0}, {4, 0}};
    if (pts != expect || pt.count != 4) return {false, "circle over F_5"};
  }
  const u64 p = 10007;
  {
    const PointTable pt = enumerate_points(parse_poly("y - x", p), 0, p);
    if (pt.count != p || pt.duplicate_x) return {false, "diagonal full J"};
    for (const u64 n : {u64(0), u64(77), p - 3}) {
      if (count_rectangle(pt, n, 101) != 101) return {false, "diagonal window count"};
    }
    if (count_rectangle(pt, 5, p) != pt.count) return {false, "H=p must give r"};
    if (count_rectangle(pt, p - 5, 10, false) != 4) return {false, "no-wrap truncation"};
    if (count_rectangle(pt, 3, 0) != 0) return {false, "H=0 window"};
  }
  {
    const PointTable pt = enumerate_points(parse_poly("y - x", p), 0, (p + 1) / 2);
    if (pt.count != (p + 1) / 2) return {false, "diagonal, half J"};
  }
  {
    const BivarPoly circle = parse_poly("x^2 + y^2 - 1", p);
    const PointTable pt = enumerate_points(circle, 0, p);
    std::mt19937_64 rng(0xC2u);
    for (int i = 0; i < 1000; ++i) {
      const u64 x = rng() % p;
      const auto b = pt.bucket(x);
      if (b.empty()) continue;
      const u64 y = b[rng() % b.size()];
      if (circle.eval(x, y) != 0) return {false, "membership violated"};
    }
    for (u64 x = 1; x < p; x += 977) {
      const auto b = pt.bucket(x);
      for (size_t i = 1; i < b.size(); ++i)
        if (b[i - 1] >= b[i]) return {false, "bucket not ascending"};
    }
    const double slack = 10.0 * std::sqrt(static_cast<double>(p)) *
                         std::pow(std::log(static_cast<double>(p)), 2.0);
    const double n1000 = static_cast<double>(count_rectangle(pt, 0, 1000));
    if (std::abs(n1000 - 1000.0) > slack) return {false, "rectangle count far from (b-a)H"};
  }
  return {true, "frozen points, counts, membership, density"};
}

inline std::pair<bool, std::string> geometry_shifted(const VerifyOptions&) {
  const u64 p = 31;
  const BivarPoly circle = parse_poly("x^2 + y^2 - 1", p);
  const PointTable pt = enumerate_points(circle, 0, p);
  const ShiftedCurve sc(circle, {0, 1, 2});
  const auto tuples = enumerate_shifted(sc, pt, 0, p - 1);
  std::vector<u64> per_x(p, 0);
  for (const auto& t : tuples) {
    ++per_x[t[0]];
    for (size_t i = 0; i < sc.shifts.size(); ++i) {
      const u64 x = (t[0] + sc.shifts[i]) % p;
      if (circle.eval(x, t[i + 1]) != 0) return {false, "shifted tuple off the curve"};
    }
  }
  for (u64 x = 0; x < p; ++x) {
    const u64 expect = pt.bucket_size(x) * pt.bucket_size((x + 1) % p) *
                       pt.bucket_size((x + 2) % p);
    if (per_x[x] != expect) return {false, "tuple count != product of bucket sizes"};
  }
  // m = 1, u = 0 reduces to the base points
  const ShiftedCurve id(circle, {0});
  if (enumerate_shifted(id, pt, 0, p - 1).size() != pt.count)
    return {false, "m=1, u=0 is not the base point set"};
  // diagonal buckets are singletons: exactly one tuple per x
  const BivarPoly diag = parse_poly("y - x", p);
  const PointTable dt = enumerate_points(diag, 0, p);
  if (enumerate_shifted(ShiftedCurve(diag, {3, 11}), dt, 0, p - 1).size() != p)
    return {false, "diagonal m=2 tuples"};
  bool threw = false;
  try {
    (void)ShiftedCurve(diag, {4, 4});
  } catch (const Error&) {
    threw = true;
  }
  if (!threw) return {false, "repeated shifts accepted"};
  return {true, "bijection with bucket products; base-case reductions"};
}

inline std::pair<bool, std::string> sums_two_paths(const VerifyOptions&) {
  struct Case {
    u64 p, a, k, H;
    const char *curve, *g, *f;
    double theta;
    bool wrap;
    u64 j_lo, j_hi;
  };
  const Case cases[] = {
      {499, 2, 1, 37, "y - x", "x", "x*y", std::numbers::pi / 6.0, true, 100, 400},
      {101, 2, 1, 11, "x^2 + y^2 - 1", "x", "x*y", 0.0, true, 0, 101},
      {101, 2, 2, 17, "y - x", "x / (y + 1)", "(x + y) / (x + 2)", 1.0, true, 0, 101},
      {499, 2, 0, 25, "y - x", "x", "0", 0.0, true, 0, 499},
      {499, 3, 1, 13, "y^2 - x^3 - x - 1", "x", "x*y", 0.5, false, 0, 250},
  };
  for (const auto& c : cases) {
    auto F = shared_field(c.p);
    ExperimentConfig cfg = make_experiment(F, c.curve, c.g, c.f, c.a, c.k,
                                           Rectangle{0, c.p - 1, c.j_lo, c.j_hi, c.H},
                                           c.theta, c.wrap);
    const PointTable pt = enumerate_points(cfg.curve, c.j_lo, c.j_hi);
    const SumSeries inc = compute_series(cfg, pt);
    const SumSeries dir = compute_series_direct(cfg, pt, 1);
    const SumSeries par = compute_series_direct(cfg, pt, 2);
    double worst = 0.0;
    for (size_t i = 0; i < inc.s.size(); ++i) {
      worst = std::max(worst, std::abs(inc.s[i] - dir.s[i]));
      if (par.s[i] != dir.s[i]) return {false, "parallel direct differs from sequential"};
      if (inc.terms[i] != dir.terms[i] || inc.poles[i] != dir.poles[i])
        return {false, "window metadata differs between paths"};
      if (std::abs(inc.s[i]) >
          static_cast<double>(inc.terms[i]) + 1e-9 * (1.0 + std::abs(inc.s[i])))
        return {false, "|S_n| exceeds the number of summed terms"};
    }
    if (worst > 1e-9 * static_cast<double>(c.H))
      return {false, std::string(c.curve) + ": |inc - dir| = " + fmt(worst)};
  }
  return {true, "incremental, direct and striped paths agree on 5 configs"};
}

inline std::pair<bool, std::string> sums_symmetries(const VerifyOptions&) {
  auto F = shared_field(499);
  const u64 p = 499;
  const Rectangle rect{0, p - 1, 50, 450, 29};
  ExperimentConfig cfg = make_experiment(F, "y - x", "x", "x*y", 2, 3, rect,
                                         std::numbers::pi / 5.0);
  const PointTable pt = enumerate_points(cfg.curve, rect.j_lo, rect.j_hi);
  const SumSeries base = compute_series(cfg, pt);

  ExperimentConfig conj_cfg{cfg.field, cfg.curve, cfg.g,   cfg.f, cfg.chi.conjugate(),
                            cfg.psi.conjugate(),  cfg.rect, -cfg.theta, cfg.wrap};
  const SumSeries conj = compute_series(conj_cfg, pt);
  for (size_t i = 0; i < base.s.size(); ++i) {
    if (std::abs(conj.s[i] - std::conj(base.s[i])) > 1e-9 * (1.0 + std::abs(base.s[i])))
      return {false, "conjugating the characters must conjugate S_n"};
    if (std::abs(conj.u[i] - base.u[i]) > 1e-9)
      return {false, "u_n must be invariant under conjugation with theta -> -theta"};
  }

  // psi_k(f) == psi_1(k f), bit for bit
  ExperimentConfig lhs = make_experiment(F, "y - x", "x", "x*y", 2, 3, rect, 0.0);
  ExperimentConfig rhs = make_experiment(F, "y - x", "x", "3*x*y", 2, 1, rect, 0.0);
  const SumSeries ls = compute_series(lhs, pt), rs = compute_series(rhs, pt);
  for (size_t i = 0; i < ls.s.size(); ++i)
    if (ls.s[i] != rs.s[i]) return {false, "frequency reparameterization changed S_n"};

  // quadratic chi with trivial psi stays real
  ExperimentConfig real_cfg = make_experiment(F, "y - x", "x", "0", 2, 0, rect, 0.0);
  const SumSeries real_series = compute_series(real_cfg, pt);
  for (const cplx& s : real_series.s)
    if (std::abs(s.imag()) > 1e-9) return {false, "quadratic/trivial-psi S_n not real"};

  // H = 1 windows hold at most one unit term
  ExperimentConfig tiny = make_experiment(F, "y - x", "x", "x*y", 2, 1,
                                          Rectangle{0, p - 1, 0, p, 1});
  for (const cplx& s : compute_series(tiny, pt).s)
    if (std::abs(s) > 1.0 + 1e-12) return {false, "|S_n| > 1 with H = 1"};

  // full-window orthogonality on the diagonal
  ExperimentConfig full = make_experiment(F, "y - x", "x", "0", 2, 0,
                                          Rectangle{0, p - 1, 0, p, p});
  const PointTable full_pt = enumerate_points(full.curve, 0, p);
  for (const cplx& s : compute_series(full, full_pt).s)
    if (std::abs(s) > 1e-9 * static_cast<double>(p))
      return {false, "sum of chi over F_p did not vanish"};
  return {true, "conjugation, reparameterization, reality, H=1, orthogonality"};
}

inline std::pair<bool, std::string> sums_oracle_and_pairs(const VerifyOptions&) {
  auto F = shared_field(31);
  ExperimentConfig cfg = make_experiment(F, "y - x", "x", "x*y", 2, 1,
                                         Rectangle{0, 30, 0, 31, 5});
  const PointTable pt = enumerate_points(cfg.curve, 0, 31);
  const SumSeries series = compute_series(cfg, pt);
  const cplx brute = brute_force_window_sum(cfg, 0);
  if (std::abs(series.s[0] - brute) > 1e-12 * 5.0)
    return {false, "S_0 differs from the brute-force double loop: " +
                       fmt(std::abs(series.s[0] - brute))};

  const cplx s00 = pair_sum(series, 0, 0);
  if (s00 != cplx(static_cast<double>(series.size()), 0.0))
    return {false, "S(0,0) != |I| exactly"};
  const cplx s11 = pair_sum(series, 1, 1);
  if (s11.real() < 0 || std::abs(s11.imag()) > 1e-9 * std::abs(s11))
    return {false, "S(1,1) must be real and nonnegative"};
  for (u32 j : {1u, 2u, 3u}) {
    const cplx sjj = pair_sum(series, j, j);
    if (std::abs(sjj.imag()) > 1e-9 * (1.0 + std::abs(sjj)))
      return {false, "S(j,j) must be real"};
  }
  cplx direct_sum(0, 0);
  for (const cplx& s : series.s) direct_sum += s;
  if (std::abs(pair_sum(series, 1, 0) - direct_sum) > 1e-12 * (1.0 + std::abs(direct_sum)))
    return {false, "S(1,0) != sum of S_n"};

  // k = 1, theta = 0 binomial shortcut: (S(1,0) + S(0,1)) / (2 norm) == sum u_n
  const cplx via = moments_via_binomial(series, 1);
  double usum = 0;
  for (double u : series.u) usum += u;
  if (std::abs(via - cplx(usum, 0.0)) > 1e-10 * (1.0 + std::abs(usum)))
    return {false, "k=1 binomial identity"};

  const MomentReport rep = moments(series, 4, false);
  if (rep.entries[0].m.real() != static_cast<double>(series.size()))
    return {false, "M_0 != |I|"};
  SumSeries zero = series;
  for (auto& u : zero.u) u = 0.0;
  const MomentReport zrep = moments(zero, 4, false);
  for (u32 k = 1; k <= 4; ++k)
    if (zrep.entries[k].m.real() != 0.0) return {false, "M_k != 0 on the zero sample"};
  // expansion check error path: duplicate x-coordinates must be rejected
  const BivarPoly circle = parse_poly("x^2 + y^2 - 1", 31);
  const PointTable dup = enumerate_points(circle, 0, 31);
  ExperimentConfig dup_cfg = make_experiment(F, "x^2 + y^2 - 1", "x", "x*y", 2, 1,
                                             Rectangle{0, 30, 0, 31, 3});
  bool threw = false;
  try {
    (void)shifted_expansion_check(dup_cfg, dup, 0, 1);
  } catch (const DuplicateXError&) {
    threw = true;
  }
  if (!threw) return {false, "duplicate-x table accepted by the expansion check"};
  return {true, "brute-force oracle, pair sums, M_0, duplicate-x gating"};
}

inline std::pair<bool, std::string> stats_properties(const VerifyOptions&) {
  const GaussianModel vh{GaussianModel::VarHalf, 0.0};
  const GaussianModel st{GaussianModel::Standard, 0.0};
  if (std::abs(vh.cdf(0.0) - 0.5) > 1e-15) return {false, "VarHalf cdf(0)"};
  if (std::abs(st.cdf(40.0) - 1.0) > 1e-15) return {false, "Standard cdf(+inf)"};
  const double quad = simpson(
      [](double t) { return std::exp(-t * t) / std::sqrt(std::numbers::pi); }, -12.0, 1.0,
      400000);
  if (std::abs(vh.cdf(1.0) - quad) > 1e-10) return {false, "VarHalf cdf(1) vs quadrature"};
  for (u32 k = 2; k <= 20; k += 2)
    if (gaussian_scaled_moment(k) !=
        static_cast<double>(k - 1) * gaussian_scaled_moment(k - 2))
      return {false, "moment recurrence"};

  // quantile construction keeps KS at the grid resolution
  const size_t N = 1000;
  std::vector<double> sample(N);
  for (size_t i = 0; i < N; ++i) {
    const double target = (static_cast<double>(i) + 0.5) / static_cast<double>(N);
    double lo = -8, hi = 8;
    for (int it = 0; it < 80; ++it) {
      const double mid = (lo + hi) / 2;
      (vh.cdf(mid) < target ? lo : hi) = mid;
    }
    sample[i] = (lo + hi) / 2;
  }
  if (ks_distance_sorted(sample, vh) > 0.5 / static_cast<double>(N) + 1e-9)
    return {false, "KS on model quantiles"};

  const std::vector<double> zeros(17, 0.0);
  if (std::abs(ks_distance_sorted(zeros, vh) - 0.5) > 1e-12)
    return {false, "constant sample KS != 0.5"};

  BoxMuller bm(0xD1u);
  std::vector<double> gauss(10000);
  for (auto& v : gauss) v = bm();
  std::sort(gauss.begin(), gauss.end());
  const double ks = ks_distance_sorted(gauss, st);
  if (ks >= 0.02) return {false, "N=1e4 Gaussian sample KS = " + fmt(ks)};

  SumSeries fake;
  fake.u = {3, 1, 2, 5, 4};  // median of odd length
  const DistributionReport rep = analyze_distribution(fake, GaussianModel::VarHalf);
  if (rep.counting(0.5) != 0 || rep.counting(5.0) != 5 || rep.counting(3.0) != 3)
    return {false, "counting edges/median"};
  for (double lam : {-1.0, 1.5, 3.0, 4.5, 9.0})
    if (rep.empirical_cdf(lam) !=
        static_cast<double>(rep.counting(lam)) / static_cast<double>(rep.sorted_u.size()))
      return {false, "counting and empirical cdf disagree"};
  u64 prev = 0;
  for (double lam = -2.0; lam < 7.0; lam += 0.25) {
    const u64 c = rep.counting(lam);
    if (c < prev) return {false, "counting not monotone"};
    prev = c;
  }
  // shift invariance
  std::vector<double> shifted = gauss;
  for (auto& v : shifted) v += 0.5;
  const GaussianModel stsh{GaussianModel::Standard, 0.5};
  if (std::abs(ks_distance_sorted(shifted, stsh) - ks) > 1e-12)
    return {false, "KS not invariant under the symmetric shift"};
  return {true, "cdf quadrature, quantiles, counting, KS properties"};
}

inline std::pair<bool, std::string> bounds_properties(const VerifyOptions&) {
  auto F = shared_field(101);
  const u64 p = 101;
  // complete Gauss-type sum of modulus sqrt(p) on the line y = 0
  ExperimentConfig gauss = make_experiment(F, "y", "x", "x", 2, 1,
                                           Rectangle{0, p - 1, 0, p, 1});
  const double mod = std::abs(complete_hybrid_sum(gauss));
  if (std::abs(mod - std::sqrt(static_cast<double>(p))) > 1e-6)
    return {false, "complete Gauss-type modulus: " + fmt(mod)};
  // orthogonality zeros
  ExperimentConfig chi_only = make_experiment(F, "y", "x", "0", 2, 0,
                                              Rectangle{0, p - 1, 0, p, 1});
  if (std::abs(complete_hybrid_sum(chi_only)) > 1e-9 * p)
    return {false, "sum of chi over the line"};
  ExperimentConfig psi_only = make_experiment(F, "y - x", "1", "x", 1, 1,
                                              Rectangle{0, p - 1, 0, p, 1});
  if (std::abs(complete_hybrid_sum(psi_only)) > 1e-9 * p)
    return {false, "sum of psi over the diagonal"};

  ExperimentConfig cfg = make_experiment(F, "x^2 + y^2 - 1", "x", "x*y", 2, 1,
                                         Rectangle{0, p - 1, 0, p, 1});
  const CoordInterval full{0, p};
  const cplx complete = complete_hybrid_sum(cfg);
  const cplx via_full = incomplete_via_completion(cfg, full, full);
  if (std::abs(complete - via_full) > 1e-7 * p)
    return {false, "full-interval completion must collapse to the complete sum"};
  const CoordInterval empty{5, 5};
  if (std::abs(incomplete_direct(cfg, empty, full)) != 0.0 ||
      std::abs(incomplete_via_completion(cfg, empty, full)) > 1e-9)
    return {false, "empty J must give 0"};
  const CoordInterval jx{3, 40}, jy{10, 60};
  if (std::abs(incomplete_direct(cfg, jx, jy) - incomplete_via_completion(cfg, jx, jy)) >
      1e-7 * p)
    return {false, "m=2 completion identity"};

  // tail bound shapes: single point and the full interval
  const auto [lp, rp] = tail_bound_check(p, 1, 4, 5);
  if (std::abs(lp - static_cast<double>(p)) > 1e-9 * p || lp > rp)
    return {false, "single-point tail sum must be p"};
  const auto [lf, rf] = tail_bound_check(p, 1, 0, p);
  if (std::abs(lf - static_cast<double>(p)) > 1e-9 * p || lf > rf)
    return {false, "full-interval tail sum must be p"};
  // lhs is independent of the (coprime) frequency
  const auto [l1, r1] = tail_bound_check(p, 1, 10, 60);
  const auto [l2, r2] = tail_bound_check(p, 7, 10, 60);
  if (std::abs(l1 - l2) > 1e-9 * p) return {false, "tail lhs must not depend on k"};
  (void)r1;
  (void)r2;

  for (int D = 1; D <= 6; ++D)
    for (int m = 0; m <= 2; ++m)
      if (weil_type_bound(D, 0, 0, 499, m) <= 0) return {false, "bound not positive"};

  // complete shifted sum with a single zero shift is the plain complete sum
  const cplx shifted_one = complete_shifted_hybrid_sum(cfg, {{0, 1}});
  if (std::abs(shifted_one - complete) > 1e-9 * p)
    return {false, "single-shift complete sum mismatch"};
  // and on the diagonal the two-shift sum has a closed form
  ExperimentConfig diag = make_experiment(F, "y - x", "x", "x*y", 2, 1,
                                          Rectangle{0, p - 1, 0, p, 1});
  const cplx two = complete_shifted_hybrid_sum(diag, {{0, 1}, {1, -1}});
  cplx expect(0, 0);
  for (u64 x = 0; x < p; ++x) {
    const u64 xs = (x + 1) % p;
    if (x == 0 || xs == 0) continue;
    const u64 g = mod_mul(x, mod_inv(xs, p), p);
    const u64 f = (mod_mul(x, x, p) + p - mod_mul(xs, xs, p)) % p;
    expect += diag.chi.eval(g) * diag.psi.eval(f);
  }
  if (std::abs(two - expect) > 1e-9 * p) return {false, "two-shift tilde sum mismatch"};
  return {true, "Gauss modulus, completion collapse, tail shapes, tilde sums"};
}

inline std::pair<bool, std::string> hypothesis_reports(const VerifyOptions&) {
  const u64 p = 10007;
  const BivarPoly diag = parse_poly("y - x", p);
  const RationalMap gx = parse_rational("x", p);
  const auto pass_rep = check_hypotheses(parse_rational("x*y", p), gx, diag, 2,
                                         TheoremMode::Main);
  if (pass_rep.overall != Tri::Holds) return {false, "f = xy must pass the main checks"};
  if (pass_rep.r2_linear != Tri::Fails) return {false, "r2 = xy flagged linear"};
  const auto fail_rep = check_hypotheses(parse_rational("x + y", p), gx, diag, 2,
                                         TheoremMode::Main);
  if (fail_rep.overall != Tri::Fails) return {false, "f = x + y must fail"};
  if (fail_rep.r2_linear != Tri::Holds || fail_rep.deg_r1_ge_3 != Tri::Fails)
    return {false, "f = x + y flags"};
  const auto psi_rep = check_hypotheses(parse_rational("0", p), parse_rational("x^2", p),
                                        diag, 2, TheoremMode::TrivialPsi);
  if (psi_rep.overall != Tri::Fails || psi_rep.g_is_ath_power != Tri::Holds)
    return {false, "g = x^2 must fail the trivial-psi checks"};
  const auto rational_rep = check_hypotheses(parse_rational("x / (y + 1)", p), gx, diag, 2,
                                             TheoremMode::Main);
  if (rational_rep.f_is_polynomial != Tri::Fails ||
      rational_rep.denominator_pth_power != Tri::Fails ||
      rational_rep.overall != Tri::Holds)
    return {false, "rational f handling"};
  if (rational_rep.r2_linear != Tri::Undecidable) return {false, "tri-state flags"};
  const PointTable pt = enumerate_points(diag, 0, p);
  const auto with_table = check_hypotheses(parse_rational("x*y", p), gx, diag, 2,
                                           TheoremMode::Main, &pt);
  if (with_table.curve_has_duplicate_x != Tri::Fails)
    return {false, "duplicate-x flag from the table"};
  return {true, "canonical pass/fail cases and tri-states"};
}

}  // namespace props

inline std::vector<Check> property_checks() {
  auto wrap = [](std::string name,
                 std::pair<bool, std::string> (*fn)(const VerifyOptions&)) {
    return Check{std::move(name), fn};
  };
  return {
      wrap("field_invariants", &props::field_invariants),
      wrap("parser_grammar_cases", &props::parser_cases),
      wrap("parser_roundtrip_fuzz", &props::parser_roundtrip),
      wrap("parser_evaluation_oracle", &props::parser_evaluation),
      wrap("algebra_ring_axioms", &props::algebra_ring_axioms),
      wrap("algebra_perfect_power_oracle", &props::algebra_perfect_power),
      wrap("character_identities", &props::character_identities),
      wrap("geometry_point_tables", &props::geometry_point_tables),
      wrap("geometry_shifted_curves", &props::geometry_shifted),
      wrap("sums_two_paths", &props::sums_two_paths),
      wrap("sums_symmetries", &props::sums_symmetries),
      wrap("sums_oracle_and_pairs", &props::sums_oracle_and_pairs),
      wrap("stats_properties", &props::stats_properties),
      wrap("bounds_properties", &props::bounds_properties),
      wrap("hypothesis_reports", &props::hypothesis_reports),
  };
}

inline std::vector<Check> acceptance_checks() {
  auto wrap = [](std::string name, std::pair<bool, std::string> (*fn)()) {
    return Check{std::move(name),
                 [fn](const VerifyOptions&) { return fn(); }};
  };
  return {
      wrap("acceptance_01_moment_identity", &acceptance::moment_identity),
      wrap("acceptance_02_shifted_expansion", &acceptance::shifted_expansion),
      wrap("acceptance_03_tuple_combinatorics", &acceptance::tuple_combinatorics),
      wrap("acceptance_04_completion_and_tail", &acceptance::completion_and_tail),
      wrap("acceptance_05_gaussian_main_regime", &acceptance::gaussian_main_regime),
      wrap("acceptance_06_quadratic_real_regime", &acceptance::gaussian_quadratic_real_regime),
      wrap("acceptance_07_negative_controls", &acceptance::negative_controls),
      wrap("acceptance_08_trivial_chi_regime", &acceptance::gaussian_trivial_chi_regime),
      wrap("acceptance_09_bound_sweep", &acceptance::bound_sweep),
      wrap("acceptance_10_gaussian_moments", &acceptance::gaussian_moment_targets),
  };
}

inline std::vector<Check> verification_suite() {
  std::vector<Check> all = property_checks();
  auto acc = acceptance_checks();
  all.insert(all.end(), acc.begin(), acc.end());
  return all;
}

// Runs the suite (filtered by substring) and prints one line per check.
// Returns the number of failures.
inline int run_verification(std::ostream& os, const VerifyOptions& opt) {
  int failures = 0;
  int ran = 0;
  for (const auto& check : verification_suite()) {
    if (!opt.filter.empty() && check.name.find(opt.filter) == std::string::npos) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    std::pair<bool, std::string> result;
    try {
      result = check.run(opt);
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    os << (result.first ? "[PASS] " : "[FAIL] ") << std::left << std::setw(42) << check.name
       << std::right << std::setw(9) << std::fixed << std::setprecision(1) << ms << " ms  "
       << result.second << "\n";
    if (!result.first) ++failures;
  }
  os << (failures == 0 ? "all " + std::to_string(ran) + " checks passed"
                       : std::to_string(failures) + " of " + std::to_string(ran) +
                             " checks failed")
     << "\n";
  return failures;
}

}  // namespace hybridsum
