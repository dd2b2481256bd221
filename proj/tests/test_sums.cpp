#include <doctest.h>

#include <random>

#include "hybridsum/parse.hpp"
#include "hybridsum/sums.hpp"

using namespace hybridsum;

namespace {

std::shared_ptr<const PrimeField> F(u64 p) { return std::make_shared<const PrimeField>(p); }

ExperimentConfig cfg_of(std::shared_ptr<const PrimeField> f, const char* curve, const char* g,
                        const char* fn, u64 a, u64 k, Rectangle rect, double theta = 0.0,
                        bool wrap = true) {
  const u64 p = f->p();
  return ExperimentConfig{f,
                          parse_poly(curve, p),
                          parse_rational(g, p),
                          parse_rational(fn, p),
                          MultChar(f, a),
                          AddChar(f, k),
                          rect,
                          theta,
                          wrap};
}

}  // namespace

TEST_SUITE("sums") {
  TEST_CASE("full-window sums vanish by orthogonality") {
    auto f = F(499);
    const u64 p = 499;
    ExperimentConfig cfg = cfg_of(f, "y - x", "x", "0", 2, 0, Rectangle{0, p - 1, 0, p, p});
    const PointTable pt = enumerate_points(cfg.curve, 0, p);
    const SumSeries s = compute_series(cfg, pt);
    for (const cplx& v : s.s) CHECK(std::abs(v) < 1e-9 * static_cast<double>(p));
  }

  TEST_CASE("H = 1 windows are single unit terms") {
    auto f = F(101);
    ExperimentConfig cfg = cfg_of(f, "y - x", "x", "x*y", 2, 1, Rectangle{0, 100, 0, 101, 1});
    const PointTable pt = enumerate_points(cfg.curve, 0, 101);
    for (const cplx& v : compute_series(cfg, pt).s) CHECK(std::abs(v) <= 1.0 + 1e-12);
  }

  TEST_CASE("S_0 at p = 31 equals the independent double loop") {
    const u64 p = 31;
    auto f = F(p);
    ExperimentConfig cfg = cfg_of(f, "y - x", "x", "x*y", 2, 1, Rectangle{0, 30, 0, p, 5});
    const PointTable pt = enumerate_points(cfg.curve, 0, p);
    const SumSeries s = compute_series(cfg, pt);

    // oracle: direct scan over all residue pairs, quadratic chi by Euler criterion
    cplx brute(0, 0);
    for (u64 x = 0; x < p; ++x)
      for (u64 y = 0; y < p; ++y) {
        if ((y + p - x) % p != 0) continue;       // on the diagonal
        if (!(x >= 1 && x <= 5)) continue;        // window (0, 5]
        double chi = 0.0;
        if (x % p != 0) chi = mod_pow(x, (p - 1) / 2, p) == 1 ? 1.0 : -1.0;
        const u64 fv = x * y % p;
        brute += chi * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(fv) /
                                           static_cast<double>(p));
      }
    CHECK(std::abs(s.s[0] - brute) < 1e-12 * 5.0);
  }

  TEST_CASE("incremental equals direct on mixed configs") {
    struct Row {
      u64 p, a, k, H, j_lo, j_hi;
      const char *curve, *g, *f;
      double theta;
      bool wrap;
    };
    const Row rows[] = {
        {499, 2, 1, 37, 100, 400, "y - x", "x", "x*y", std::numbers::pi / 6.0, true},
        {101, 2, 1, 11, 0, 101, "x^2 + y^2 - 1", "x", "x*y", 0.0, true},
        {101, 2, 2, 17, 0, 101, "y - x", "x / (y + 1)", "(x + y) / (x + 2)", 1.0, true},
        {499, 3, 1, 13, 0, 250, "y^2 - x^3 - x - 1", "x", "x*y", 0.5, false},
    };
    for (const auto& r : rows) {
      CAPTURE(r.curve);
      auto f = F(r.p);
      ExperimentConfig cfg = cfg_of(f, r.curve, r.g, r.f, r.a, r.k,
                                    Rectangle{0, r.p - 1, r.j_lo, r.j_hi, r.H}, r.theta,
                                    r.wrap);
      const PointTable pt = enumerate_points(cfg.curve, r.j_lo, r.j_hi);
      const SumSeries inc = compute_series(cfg, pt);
      const SumSeries dir = compute_series_direct(cfg, pt, 1);
      const SumSeries par = compute_series_direct(cfg, pt, 3);
      REQUIRE(inc.s.size() == dir.s.size());
      double worst = 0.0;
      for (size_t i = 0; i < inc.s.size(); ++i) {
        worst = std::max(worst, std::abs(inc.s[i] - dir.s[i]));
        CHECK(std::abs(inc.s[i] - dir.s[i]) <= 1e-9 * static_cast<double>(r.H));
        CHECK(par.s[i] == dir.s[i]);
        CHECK(inc.terms[i] == dir.terms[i]);
        CHECK(inc.poles[i] == dir.poles[i]);
      }
      // the anchored slide keeps the two paths identical well below 1e-12
      CHECK(worst <= 1e-12);
    }
  }

  TEST_CASE("u_n is the rotated projection with the exact normalization") {
    auto f = F(101);
    const Rectangle rect{0, 100, 10, 90, 7};
    ExperimentConfig cfg = cfg_of(f, "y - x", "x", "x*y", 2, 1, rect,
                                  std::numbers::pi / 3.0);
    const PointTable pt = enumerate_points(cfg.curve, 10, 90);
    const SumSeries s = compute_series(cfg, pt);
    const double norm = std::sqrt(static_cast<double>((90 - 10) * 7) / 101.0);
    CHECK(s.norm == norm);
    for (size_t i = 0; i < s.s.size(); ++i) {
      const cplx rotated = s.s[i] * std::polar(1.0, -cfg.theta);
      CHECK(s.u[i] == rotated.real() / norm);
    }
  }

  TEST_CASE("moment report basics") {
    auto f = F(101);
    ExperimentConfig cfg = cfg_of(f, "y - x", "x", "x*y", 2, 1, Rectangle{0, 100, 0, 101, 9});
    const PointTable pt = enumerate_points(cfg.curve, 0, 101);
    const SumSeries s = compute_series(cfg, pt);
    const MomentReport rep = moments(s, 6, false);
    CHECK(rep.entries[0].m.real() == 101.0);
    CHECK(rep.entries[2].mu == 1.0);
    CHECK(rep.entries[3].mu == 0.0);
    CHECK(rep.entries[4].mu == 3.0);
    CHECK(rep.entries[6].mu == 15.0);

    SumSeries zeros = s;
    for (double& u : zeros.u) u = 0.0;
    const MomentReport zrep = moments(zeros, 5, false);
    for (u32 k = 1; k <= 5; ++k) CHECK(zrep.entries[k].m.real() == 0.0);
  }

  TEST_CASE("pair sums") {
    auto f = F(199);
    ExperimentConfig cfg = cfg_of(f, "y - x", "x", "x*y", 2, 1, Rectangle{0, 198, 0, 199, 12});
    const PointTable pt = enumerate_points(cfg.curve, 0, 199);
    const SumSeries s = compute_series(cfg, pt);
    CHECK(pair_sum(s, 0, 0) == cplx(199.0, 0.0));
    const cplx s11 = pair_sum(s, 1, 1);
    CHECK(s11.real() >= 0.0);
    CHECK(std::abs(s11.imag()) <= 1e-9 * std::abs(s11));
    for (u32 j : {1u, 2u, 3u})
      CHECK(std::abs(pair_sum(s, j, j).imag()) <= 1e-9 * (1.0 + std::abs(pair_sum(s, j, j))));
    cplx total(0, 0);
    for (const cplx& v : s.s) total += v;
    CHECK(std::abs(pair_sum(s, 1, 0) - total) <= 1e-12 * (1.0 + std::abs(total)));
  }

  TEST_CASE("binomial route equals the direct moments") {
    auto f = F(199);
    for (const double theta : {0.0, std::numbers::pi / 2.0}) {
      ExperimentConfig cfg = cfg_of(f, "y - x", "x", "x*y", 2, 1,
                                    Rectangle{0, 198, 20, 180, 15}, theta);
      const PointTable pt = enumerate_points(cfg.curve, 20, 180);
      const SumSeries s = compute_series(cfg, pt);
      const MomentReport rep = moments(s, 8, false);
      for (u32 k = 1; k <= 8; ++k) {
        const cplx via = moments_via_binomial(s, k);
        const double scale = moment_comparison_scale(s, k);
        CHECK(std::abs(via - cplx(rep.entries[k].m.real(), 0.0)) <= 1e-8 * scale);
      }
      // k = 1, theta = 0: (S(1,0) + S(0,1)) / (2 norm) is just sum u_n
      if (theta == 0.0) {
        double usum = 0;
        for (double u : s.u) usum += u;
        CHECK(std::abs(moments_via_binomial(s, 1) - cplx(usum, 0)) <=
              1e-10 * (1.0 + std::abs(usum)));
      }
    }
  }

  TEST_CASE("conjugation symmetry and frequency reparameterization") {
    auto f = F(199);
    const Rectangle rect{0, 198, 0, 199, 21};
    ExperimentConfig cfg = cfg_of(f, "y - x", "x", "x*y", 2, 5, rect, 0.7);
    const PointTable pt = enumerate_points(cfg.curve, 0, 199);
    const SumSeries base = compute_series(cfg, pt);

    ExperimentConfig conj{cfg.field,           cfg.curve, cfg.g,      cfg.f,
                          cfg.chi.conjugate(), cfg.psi.conjugate(), rect, -0.7, true};
    const SumSeries cs = compute_series(conj, pt);
    for (size_t i = 0; i < base.s.size(); ++i) {
      CHECK(std::abs(cs.s[i] - std::conj(base.s[i])) <= 1e-9 * (1.0 + std::abs(base.s[i])));
      CHECK(std::abs(cs.u[i] - base.u[i]) <= 1e-9);
    }

    ExperimentConfig lhs = cfg_of(f, "y - x", "x", "x*y", 2, 5, rect);
    ExperimentConfig rhs = cfg_of(f, "y - x", "x", "5*x*y", 2, 1, rect);
    const SumSeries l = compute_series(lhs, pt), r = compute_series(rhs, pt);
    for (size_t i = 0; i < l.s.size(); ++i) CHECK(l.s[i] == r.s[i]);
  }

  TEST_CASE("quadratic chi with trivial psi is real") {
    auto f = F(499);
    ExperimentConfig cfg = cfg_of(f, "y - x", "x", "0", 2, 0, Rectangle{0, 498, 0, 499, 33});
    const PointTable pt = enumerate_points(cfg.curve, 0, 499);
    for (const cplx& v : compute_series(cfg, pt).s) CHECK(std::abs(v.imag()) <= 1e-9);
    CHECK(quadratic_real_mode(cfg));
    ExperimentConfig other = cfg_of(f, "y - x", "x", "x*y", 2, 1,
                                    Rectangle{0, 498, 0, 499, 33});
    CHECK_FALSE(quadratic_real_mode(other));
  }

  TEST_CASE("shifted expansion equals |S_n|^{2j}") {
    const u64 p = 31;
    auto f = F(p);
    SUBCASE("H = 1: powers of a single unit term") {
      ExperimentConfig cfg = cfg_of(f, "y - x", "x", "x*y", 2, 1, Rectangle{0, 30, 0, p, 1});
      const PointTable pt = enumerate_points(cfg.curve, 0, p);
      for (u32 j : {1u, 2u, 3u}) {
        const auto [direct, via] = shifted_expansion_check(cfg, pt, 4, j);
        CHECK(std::abs(direct - via) <= 1e-12);
        CHECK((std::abs(direct) <= 1e-12 || std::abs(direct - 1.0) <= 1e-12));
      }
    }
    SUBCASE("j = 2, H = 3 on the diagonal (81 shift tuples)") {
      ExperimentConfig cfg = cfg_of(f, "y - x", "x", "x*y", 2, 1, Rectangle{0, 30, 0, p, 3});
      const PointTable pt = enumerate_points(cfg.curve, 0, p);
      std::mt19937_64 rng(11);
      for (int i = 0; i < 5; ++i) {
        const auto [direct, via] = shifted_expansion_check(cfg, pt, rng() % p, 2);
        CHECK(std::abs(direct - via) <= 1e-9);
      }
    }
    SUBCASE("rational g and f with poles in the window") {
      ExperimentConfig cfg = cfg_of(f, "y - x", "x / (y + 1)", "x*y / (x + 2)", 2, 1,
                                    Rectangle{0, 30, 0, p, 3});
      const PointTable pt = enumerate_points(cfg.curve, 0, p);
      for (u64 n : {27ull, 28ull, 29ull}) {  // windows straddling the poles
        const auto [direct, via] = shifted_expansion_check(cfg, pt, n, 1);
        CHECK(std::abs(direct - via) <= 1e-9);
      }
    }
    SUBCASE("duplicate x-coordinates are rejected") {
      ExperimentConfig cfg = cfg_of(f, "x^2 + y^2 - 1", "x", "x*y", 2, 1,
                                    Rectangle{0, 30, 0, p, 2});
      const PointTable pt = enumerate_points(cfg.curve, 0, p);
      CHECK_THROWS_AS((void)shifted_expansion_check(cfg, pt, 0, 1), DuplicateXError);
    }
  }
}
