#include <doctest.h>

#include "hybridsum/bounds.hpp"
#include "hybridsum/parse.hpp"

using namespace hybridsum;

namespace {

std::shared_ptr<const PrimeField> F(u64 p) { return std::make_shared<const PrimeField>(p); }

ExperimentConfig cfg_of(std::shared_ptr<const PrimeField> f, const char* curve, const char* g,
                        const char* fn, u64 a, u64 k) {
  const u64 p = f->p();
  return ExperimentConfig{f,
                          parse_poly(curve, p),
                          parse_rational(g, p),
                          parse_rational(fn, p),
                          MultChar(f, a),
                          AddChar(f, k),
                          Rectangle{0, p - 1, 0, p, 1},
                          0.0,
                          true};
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("complete sums: orthogonality zeros and the Gauss modulus") {
    auto f = F(101);
    const u64 p = 101;
    // line y = 0, quadratic chi alone
    CHECK(std::abs(complete_hybrid_sum(cfg_of(f, "y", "x", "0", 2, 0))) <
          1e-9 * static_cast<double>(p));
    // diagonal, additive character alone
    CHECK(std::abs(complete_hybrid_sum(cfg_of(f, "y - x", "1", "x", 1, 1))) <
          1e-9 * static_cast<double>(p));
    // chi(x) e_p(x) on the line: modulus sqrt(p)
    const double mod = std::abs(complete_hybrid_sum(cfg_of(f, "y", "x", "x", 2, 1)));
    CHECK(std::abs(mod - std::sqrt(static_cast<double>(p))) < 1e-6);
    CHECK_THROWS_AS((void)complete_hybrid_sum(cfg_of(F(10007), "y", "x", "x", 2, 1)),
                    TooLargeError);
  }

  TEST_CASE("completion identity at p = 101") {
    auto f = F(101);
    const u64 p = 101;
    ExperimentConfig cfg = cfg_of(f, "x^2 + y^2 - 1", "x", "x*y", 2, 1);
    const CoordInterval full{0, p};

    SUBCASE("full intervals collapse to the complete sum") {
      CHECK(std::abs(incomplete_via_completion(cfg, full, full) - complete_hybrid_sum(cfg)) <
            1e-7 * static_cast<double>(p));
    }
    SUBCASE("m = 1") {
      const CoordInterval jx{0, 50};
      CHECK(std::abs(incomplete_direct(cfg, jx, full) -
                     incomplete_via_completion(cfg, jx, full)) <
            1e-7 * static_cast<double>(p));
    }
    SUBCASE("m = 2") {
      const CoordInterval jx{3, 40}, jy{10, 60};
      CHECK(std::abs(incomplete_direct(cfg, jx, jy) -
                     incomplete_via_completion(cfg, jx, jy)) <
            1e-7 * static_cast<double>(p));
    }
    SUBCASE("trivial psi borrows an auxiliary frequency") {
      ExperimentConfig tp = cfg_of(f, "x^2 + y^2 - 1", "x", "0", 2, 0);
      const CoordInterval jx{5, 60};
      CHECK(std::abs(incomplete_direct(tp, jx, full) -
                     incomplete_via_completion(tp, jx, full)) <
            1e-7 * static_cast<double>(p));
    }
    SUBCASE("empty interval gives zero") {
      const CoordInterval empty{5, 5};
      CHECK(std::abs(incomplete_direct(cfg, empty, full)) == 0.0);
      CHECK(std::abs(incomplete_via_completion(cfg, empty, full)) < 1e-9);
    }
  }

  TEST_CASE("tail bound") {
    const auto [lhs, rhs] = tail_bound_check(101, 1, 0, 50);
    CHECK(lhs <= rhs);
    CHECK(rhs == doctest::Approx(2.0 * 101.0 * std::log(101.0) + 50.0));
    // single point: each inner sum has modulus 1, so the lhs is exactly p
    const auto [lp, rp] = tail_bound_check(101, 1, 4, 5);
    CHECK(lp == doctest::Approx(101.0).epsilon(1e-12));
    CHECK(lp <= rp);
    // full interval: only t = 0 survives
    const auto [lf, rf] = tail_bound_check(101, 1, 0, 101);
    CHECK(lf == doctest::Approx(101.0).epsilon(1e-12));
    CHECK(lf <= rf);
    // lhs does not depend on the (coprime) frequency
    const auto [l1, r1] = tail_bound_check(101, 1, 10, 60);
    const auto [l2, r2] = tail_bound_check(101, 7, 10, 60);
    CHECK(l1 == doctest::Approx(l2).epsilon(1e-12));
    CHECK(r1 == r2);
    CHECK_THROWS_AS((void)tail_bound_check(101, 0, 0, 50), ConfigError);
  }

  TEST_CASE("bound stays positive and reports ratios") {
    for (int D = 1; D <= 6; ++D)
      for (int m = 0; m <= 2; ++m) {
        CAPTURE(D);
        CHECK(weil_type_bound(D, 0, 0, 499, m) > 0.0);
        CHECK(weil_type_bound(D, 2, 3, 499, m) > 0.0);
      }

    auto f = F(101);
    const BoundSweepItem item{"t0", cfg_of(f, "y - x", "x", "x*y", 2, 1),
                              CoordInterval{1, 52}, CoordInterval{0, 101}, 3.0};
    const BoundReport rep = bound_report(item);
    CHECK(rep.D == 1);
    CHECK(rep.m == 1);
    CHECK(rep.bound > 0.0);
    CHECK(rep.ratio >= 0.0);
    CHECK(rep.ratio <= 1.0);
    CHECK(rep.degenerate == Tri::Fails);

    // empty window: |S| = 0, ratio 0
    const BoundSweepItem empty{"t1", cfg_of(f, "y - x", "x", "x*y", 2, 1),
                               CoordInterval{5, 5}, CoordInterval{0, 101}, 3.0};
    CHECK(bound_report(empty).ratio == 0.0);

    // the degenerate square: every term is 1 on half the diagonal
    const BoundSweepItem degen{"t2", cfg_of(f, "y - x", "x^2", "0", 2, 0),
                               CoordInterval{0, 101}, CoordInterval{0, 51}, 3.0};
    const BoundReport drep = bound_report(degen);
    CHECK(drep.degenerate == Tri::Holds);
    CHECK(drep.abs_S == doctest::Approx(50.0).epsilon(1e-9));
  }

  TEST_CASE("sweep ordering is deterministic by config id") {
    auto f = F(101);
    std::vector<BoundSweepItem> items;
    items.push_back({"zz", cfg_of(f, "y - x", "x", "x*y", 2, 1), CoordInterval{1, 20},
                     CoordInterval{0, 101}, 3.0});
    items.push_back({"aa", cfg_of(f, "y - x", "x", "x*y", 2, 2), CoordInterval{1, 20},
                     CoordInterval{0, 101}, 3.0});
    const auto reports = bound_ratio_sweep(items);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].config_id == "aa");
    CHECK(reports[1].config_id == "zz");
  }

  TEST_CASE("shifted complete sums") {
    auto f = F(101);
    ExperimentConfig cfg = cfg_of(f, "x^2 + y^2 - 1", "x", "x*y", 2, 1);
    const cplx whole = complete_hybrid_sum(cfg);
    CHECK(std::abs(complete_shifted_hybrid_sum(cfg, {{0, 1}}) - whole) < 1e-9 * 101.0);

    // diagonal with shifts {0, +1} and multiplicities {+1, -1}: closed form
    ExperimentConfig diag = cfg_of(f, "y - x", "x", "x*y", 2, 1);
    cplx expect(0, 0);
    for (u64 x = 0; x < 101; ++x) {
      const u64 xs = (x + 1) % 101;
      if (x == 0 || xs == 0) continue;
      const u64 g = mod_mul(x, mod_inv(xs, 101), 101);
      const u64 fv = (mod_mul(x, x, 101) + 101 - mod_mul(xs, xs, 101)) % 101;
      expect += diag.chi.eval(g) * diag.psi.eval(fv);
    }
    CHECK(std::abs(complete_shifted_hybrid_sum(diag, {{0, 1}, {1, -1}}) - expect) <
          1e-9 * 101.0);
  }
}
