#include <doctest.h>

#include <random>

#include "hybridsum/geometry.hpp"
#include "hybridsum/parse.hpp"

using namespace hybridsum;

TEST_SUITE("geometry") {
  TEST_CASE("circle points over F_5 match the 25-pair brute force") {
    const BivarPoly circle = parse_poly("x^2 + y^2 - 1", 5);
    std::vector<std::pair<u64, u64>> brute;
    for (u64 x = 0; x < 5; ++x)
      for (u64 y = 0; y < 5; ++y)
        if ((x * x + y * y + 4) % 5 == 0) brute.push_back({x, y});

    const PointTable pt = enumerate_points(circle, 0, 5);
    std::vector<std::pair<u64, u64>> got;
    for (u64 x = 0; x < 5; ++x)
      for (u32 y : pt.bucket(x)) got.push_back({x, y});
    CHECK(got == brute);
    CHECK(pt.count == 4);
    CHECK(pt.duplicate_x);  // x = 0 carries both y = 1 and y = 4
  }

  TEST_CASE("diagonal tables") {
    const u64 p = 101;
    const PointTable full = enumerate_points(parse_poly("y - x", p), 0, p);
    CHECK(full.count == p);
    for (u64 x = 0; x < p; ++x) CHECK(full.bucket_size(x) == 1);
    const PointTable half = enumerate_points(parse_poly("y - x", p), 0, (p + 1) / 2);
    CHECK(half.count == (p + 1) / 2);
  }

  TEST_CASE("window counts on the diagonal") {
    const u64 p = 101;
    const PointTable pt = enumerate_points(parse_poly("y - x", p), 0, p);
    for (u64 n : {0ull, 50ull, 99ull})
      for (u64 H : {1ull, 7ull, 100ull}) CHECK(count_rectangle(pt, n, H) == H);
    CHECK(count_rectangle(pt, 13, p) == pt.count);
    CHECK(count_rectangle(pt, p - 5, 10, /*wrap=*/false) == 4);
    CHECK(count_rectangle(pt, p - 5, 10, /*wrap=*/true) == 10);
    CHECK(count_rectangle(pt, 3, 0) == 0);
  }

  TEST_CASE("deg_y = 1 closed form agrees with the generic scan") {
    const u64 p = 97;
    const BivarPoly line = parse_poly("(x^2 + 3)*y - x - 5", p);
    const PointTable fast = enumerate_points(line, 10, 80);
    std::vector<std::pair<u64, u64>> brute;
    for (u64 x = 0; x < p; ++x)
      for (u64 y = 10; y < 80; ++y)
        if (line.eval(x, y) == 0) brute.push_back({x, y});
    std::vector<std::pair<u64, u64>> got;
    for (u64 x = 0; x < p; ++x)
      for (u32 y : fast.bucket(x)) got.push_back({x, y});
    CHECK(got == brute);
  }

  TEST_CASE("duplicate-x detection") {
    const PointTable pt = enumerate_points(parse_poly("x^2 + y^2 - 1", 31), 0, 31);
    CHECK(pt.duplicate_x);
    const PointTable half = enumerate_points(parse_poly("x^2 + y^2 - 1", 31), 0, 16);
    CHECK_FALSE(half.duplicate_x);
  }

  TEST_CASE("shifted tuples: circle over F_5 with U = {0,1}") {
    const BivarPoly circle = parse_poly("x^2 + y^2 - 1", 5);
    const PointTable pt = enumerate_points(circle, 0, 5);
    const auto tuples = enumerate_shifted(ShiftedCurve(circle, {0, 1}), pt, 0, 4);

    // brute-force pairing oracle over all point pairs
    std::vector<std::pair<u64, u64>> pts;
    for (u64 x = 0; x < 5; ++x)
      for (u32 y : pt.bucket(x)) pts.push_back({x, y});
    size_t expect = 0, at_x0 = 0;
    for (const auto& q1 : pts)
      for (const auto& q2 : pts)
        if (q2.first == (q1.first + 1) % 5) {
          ++expect;
          if (q1.first == 0) ++at_x0;
        }
    CHECK(tuples.size() == expect);
    CHECK(at_x0 == 2);
    for (const auto& t : tuples) {
      CHECK(circle.eval(t[0], t[1]) == 0);
      CHECK(circle.eval((t[0] + 1) % 5, t[2]) == 0);
    }
  }

  TEST_CASE("shifted tuples reduce to the base points for U = {0}") {
    const BivarPoly diag = parse_poly("y - x", 31);
    const PointTable pt = enumerate_points(diag, 0, 31);
    CHECK(enumerate_shifted(ShiftedCurve(diag, {0}), pt, 0, 30).size() == pt.count);
    CHECK(enumerate_shifted(ShiftedCurve(diag, {2, 9}), pt, 0, 30).size() == 31);
    CHECK_THROWS_AS((void)ShiftedCurve(diag, {1, 1}), Error);
  }

  TEST_CASE("matching tuples: frozen values and brute force") {
    CHECK(count_matching_tuples(2, 1).to_string() == "2");
    CHECK(count_matching_tuples(3, 2).to_string() == "15");
    for (u64 H : {1ull, 4ull, 9ull, 100ull})
      CHECK(count_matching_tuples(H, 1).to_u64_saturating() == H);
    CHECK(count_matching_tuples(5, 0).to_string() == "1");

    for (u64 H = 1; H <= 6; ++H)
      for (u32 j = 1; j <= 3; ++j) {
        u64 brute = 0;
        std::vector<u64> h(2 * j, 1);
        for (;;) {
          std::vector<u64> a(h.begin(), h.begin() + j), b(h.begin() + j, h.end());
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          if (a == b) ++brute;
          u32 l = 2 * j;
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
        CAPTURE(H);
        CAPTURE(j);
        CHECK(count_matching_tuples(H, j).to_u64_saturating() == brute);
      }
  }

  TEST_CASE("matching tuples: closed form for j = 3 across sizes") {
    // count(H, 3) = H + 9 H(H-1) + 6 H(H-1)(H-2), derived from the three
    // multiplicity profiles of a 3-element multiset
    for (u64 H : {1ull, 2ull, 10ull, 1000ull, 1000000ull}) {
      const u64 expect = H + 9 * H * (H - 1) + 6 * H * (H - 1) * (H - 2);
      CHECK(count_matching_tuples(H, 3).to_u64_saturating() == expect);
    }
  }

  TEST_CASE("matching tuples sandwich") {
    for (u64 H : {10ull, 50ull, 200ull})
      for (u32 j = 1; j <= 3; ++j) {
        const BigUint count = count_matching_tuples(H, j);
        BigUint lower(1), upper(1);
        for (u64 i = 1; i <= j; ++i) {
          lower.mul_small(i);
          upper.mul_small(i);
        }
        for (u64 i = 0; i < j; ++i) lower.mul_small(H - i);
        for (u64 i = 0; i + 1 < j; ++i) upper.mul_small(H);
        upper.mul_small(H + 4ull * j * j);
        CAPTURE(H);
        CAPTURE(j);
        CHECK(lower <= count);
        CHECK(count <= upper);
      }
  }

  TEST_CASE("big counts stay exact") {
    // H = 10^6, j = 3: value exceeds 2^62, printed exactly
    const BigUint big = count_matching_tuples(1000000, 3);
    const u64 H = 1000000;
    const u64 expect = H + 9 * H * (H - 1) + 6 * H * (H - 1) * (H - 2);
    CHECK(big.to_string() == std::to_string(expect));
    // j = 2 closed form 2 H^2 - H
    CHECK(count_matching_tuples(4, 2).to_u64_saturating() == 28);
    // far beyond u64: the sandwich still brackets the exact count
    const BigUint huge = count_matching_tuples(100, 12);
    BigUint lower(1), upper(1);
    for (u64 i = 1; i <= 12; ++i) {
      lower.mul_small(i);
      upper.mul_small(i);
    }
    for (u64 i = 0; i < 12; ++i) lower.mul_small(100 - i);
    for (u64 i = 0; i + 1 < 12; ++i) upper.mul_small(100);
    upper.mul_small(100 + 4ull * 12 * 12);
    CHECK(lower <= huge);
    CHECK(huge <= upper);
    CHECK(huge.to_u64_saturating() == UINT64_MAX);
    CHECK_THROWS_AS((void)count_matching_tuples(10, 100), TooLargeError);
  }

  TEST_CASE("membership sampling on a larger curve") {
    const u64 p = 499;
    const BivarPoly cubic = parse_poly("y^2 - x^3 - x - 1", p);
    const PointTable pt = enumerate_points(cubic, 0, p);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
      const u64 x = rng() % p;
      const auto b = pt.bucket(x);
      if (b.empty()) continue;
      CHECK(cubic.eval(x, b[rng() % b.size()]) == 0);
    }
    CHECK(pt.offsets.size() == p + 1);
    CHECK(pt.offsets[p] == pt.count);
  }

  TEST_CASE("rectangle validation") {
    Rectangle r{0, 100, 0, 101, 5};
    CHECK_NOTHROW(r.validate(101));
    CHECK_THROWS_AS((Rectangle{5, 3, 0, 101, 5}).validate(101), ConfigError);
    CHECK_THROWS_AS((Rectangle{0, 100, 50, 50, 5}).validate(101), ConfigError);
    CHECK_THROWS_AS((Rectangle{0, 100, 0, 101, 0}).validate(101), ConfigError);
    CHECK_THROWS_AS((Rectangle{0, 100, 0, 102, 5}).validate(101), ConfigError);
  }
}
