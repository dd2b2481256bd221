#include <doctest.h>

#include "hybridsum/hypotheses.hpp"
#include "hybridsum/parse.hpp"

using namespace hybridsum;

TEST_SUITE("algebra") {
  TEST_CASE("shift in x expands binomially") {
    CHECK(poly_shift_x(parse_poly("x^2", 5), 1) == parse_poly("x^2 + 2*x + 1", 5));
    const BivarPoly q = parse_poly("x^3*y + 2*x - y^2", 11);
    CHECK(poly_shift_x(q, 0) == q);
    // oracle: shifted polynomial evaluates like the unshifted one at x+u
    for (u64 u : {1ull, 4ull, 10ull})
      for (u64 x = 0; x < 11; ++x)
        for (u64 y = 0; y < 11; ++y)
          CHECK(poly_shift_x(q, u).eval(x, y) == q.eval((x + u) % 11, y));
  }

  TEST_CASE("product and degrees") {
    const BivarPoly prod = poly_mul(parse_poly("y - x", 7), parse_poly("y + x", 7));
    CHECK(prod == parse_poly("y^2 - x^2", 7));
    CHECK(prod.total_degree() == 2);
    CHECK(parse_poly("0", 7).total_degree() == -1);
    CHECK_THROWS_AS((void)poly_add(parse_poly("x", 7), parse_poly("x", 11)),
                    FieldMismatchError);
  }

  TEST_CASE("rational evaluation and poles") {
    CHECK_FALSE(eval_rational(parse_rational("x / y", 7), 3, 0).has_value());
    CHECK(eval_rational(parse_rational("(x + 1) / 1", 7), 4, 2) == 5);
    CHECK(eval_rational(parse_rational("x / (x - 1)", 5), 2, 0) == 2);
  }

  TEST_CASE("split into y-free and y-carrying parts") {
    auto [r1, r2] = split_r1_r2(parse_poly("x^3 + x*y", 7));
    CHECK(r1 == parse_poly("x^3", 7));
    CHECK(r2 == parse_poly("x*y", 7));
    auto [s1, s2] = split_r1_r2(parse_poly("y^2", 7));
    CHECK(s1.is_zero());
    CHECK(s2 == parse_poly("y^2", 7));
    auto [t1, t2] = split_r1_r2(parse_poly("5", 7));
    CHECK(t1 == parse_poly("5", 7));
    CHECK(t2.is_zero());
    CHECK_THROWS_AS((void)split_r1_r2(parse_rational("x / y", 7)), NotPolynomialError);
  }

  TEST_CASE("perfect powers with constant multiples") {
    CHECK(is_perfect_power(parse_poly("x^2 + 2*x*y + y^2", 7), 2));
    CHECK_FALSE(is_perfect_power(parse_poly("x^2 + y", 7), 2));
    CHECK(is_perfect_power(parse_poly("4*(x + 1)^3", 7), 3));
    CHECK(is_perfect_power(parse_poly("0", 7), 2));
    CHECK(is_perfect_power(parse_poly("3", 7), 5));
    CHECK_FALSE(is_perfect_power(parse_poly("x^2*y + x", 5), 2));
    // the root carries many monomials below its lex-leading term
    CHECK(is_perfect_power(poly_pow(parse_poly("x^2 + y^5 + y^3 + y + 1", 101), 2), 2));
    CHECK(is_perfect_power(poly_pow(parse_poly("x + y^7 + 2*y^2 + 3", 101), 3), 3));
    CHECK_FALSE(is_perfect_power(
        poly_add(poly_pow(parse_poly("x^2 + y^5 + y^3 + y + 1", 101), 2),
                 parse_poly("y^9", 101)),
        2));

    // brute force over F_5: no h with deg <= 1 squares to x^2 + y
    const BivarPoly target = parse_poly("x^2 + y", 5);
    bool found = false;
    for (u64 c = 1; c < 5 && !found; ++c)
      for (u64 a0 = 0; a0 < 5 && !found; ++a0)
        for (u64 a1 = 0; a1 < 5 && !found; ++a1)
          for (u64 a2 = 0; a2 < 5 && !found; ++a2) {
            BivarPoly::Terms t;
            if (a0) t[{0, 0}] = a0;
            if (a1) t[{1, 0}] = a1;
            if (a2) t[{0, 1}] = a2;
            const BivarPoly h(5, std::move(t));
            if (poly_scale(poly_pow(h, 2), c) == target) found = true;
          }
    CHECK_FALSE(found);
  }

  TEST_CASE("hypothesis reports follow the canonical examples") {
    const u64 p = 10007;
    const BivarPoly diag = parse_poly("y - x", p);
    const RationalMap gx = parse_rational("x", p);

    const auto ok = check_hypotheses(parse_rational("x*y", p), gx, diag, 2, TheoremMode::Main);
    CHECK(ok.overall == Tri::Holds);
    CHECK(ok.r2_linear == Tri::Fails);

    const auto bad = check_hypotheses(parse_rational("x + y", p), gx, diag, 2,
                                      TheoremMode::Main);
    CHECK(bad.overall == Tri::Fails);
    CHECK(bad.r2_linear == Tri::Holds);
    CHECK(bad.deg_r1_ge_3 == Tri::Fails);

    const auto sq = check_hypotheses(parse_rational("0", p), parse_rational("x^2", p), diag,
                                     2, TheoremMode::TrivialPsi);
    CHECK(sq.overall == Tri::Fails);
    CHECK(sq.g_is_ath_power == Tri::Holds);

    const auto deg = check_hypotheses(parse_rational("0", p), gx, diag, 1,
                                      TheoremMode::Degenerate);
    CHECK(deg.overall == Tri::Fails);

    CHECK_THROWS_AS((void)check_hypotheses(gx, gx, parse_poly("x", p), 2, TheoremMode::Main),
                    ConfigError);
  }
}
