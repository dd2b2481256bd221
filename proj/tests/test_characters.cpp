#include <doctest.h>

#include "hybridsum/characters.hpp"

using namespace hybridsum;

namespace {
std::shared_ptr<const PrimeField> F(u64 p) { return std::make_shared<const PrimeField>(p); }
}  // namespace

TEST_SUITE("characters") {
  TEST_CASE("quadratic character values match the Euler criterion") {
    auto f7 = F(7);
    const MultChar chi(f7, 2);
    for (u64 x = 1; x < 7; ++x) {
      const double expect = mod_pow(x, 3, 7) == 1 ? 1.0 : -1.0;  // x^((p-1)/2)
      CHECK(std::abs(chi.eval(x) - cplx(expect, 0.0)) < 1e-12);
    }
    CHECK(std::abs(chi.eval(2) - cplx(1, 0)) < 1e-12);
    CHECK(std::abs(chi.eval(3) - cplx(-1, 0)) < 1e-12);
    CHECK(chi.eval(0) == cplx(0, 0));
  }

  TEST_CASE("trivial character is 1 away from 0") {
    const MultChar chi(F(7), 1);
    for (u64 x = 1; x < 7; ++x) CHECK(chi.eval(x) == cplx(1, 0));
    CHECK(chi.eval(0) == cplx(1, 0));  // only true poles are excluded
  }

  TEST_CASE("order must divide p-1 and the power must be coprime") {
    CHECK_THROWS_AS((void)MultChar(F(7), 4), OrderNotDividingError);
    CHECK_THROWS_AS((void)MultChar(F(7), 0), OrderNotDividingError);
    CHECK_THROWS_AS((void)MultChar(F(7), 6, 2), CharPowerError);
    CHECK_NOTHROW((void)MultChar(F(7), 6, 5));
  }

  TEST_CASE("multiplicativity and additivity") {
    auto f31 = F(31);
    const MultChar chi(f31, 5, 2);
    const AddChar psi(f31, 3);
    for (u64 x = 1; x < 31; ++x)
      for (u64 y = 1; y < 31; y += 5) {
        CHECK(std::abs(chi.eval(x * y % 31) - chi.eval(x) * chi.eval(y)) < 1e-12);
        CHECK(std::abs(psi.eval((x + y) % 31) - psi.eval(x) * psi.eval(y)) < 1e-12);
        CHECK(std::abs(std::abs(psi.eval(x)) - 1.0) < 1e-12);
      }
  }

  TEST_CASE("value set is exactly the a-th roots of unity") {
    auto f31 = F(31);
    for (u64 a : {2ull, 3ull, 5ull, 6ull}) {
      const MultChar chi(f31, a);
      std::vector<bool> seen(a, false);
      for (u64 x = 1; x < 31; ++x) {
        const cplx v = chi.eval(x);
        bool matched = false;
        for (u64 j = 0; j < a; ++j) {
          const cplx root = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                                static_cast<double>(a));
          if (std::abs(v - root) < 1e-12) {
            seen[j] = true;
            matched = true;
          }
        }
        CHECK(matched);
      }
      for (u64 j = 0; j < a; ++j) CHECK(seen[j]);
    }
  }

  TEST_CASE("orthogonality at p = 10007") {
    auto f = F(10007);
    const u64 p = 10007;
    const AddChar psi(f, 1);
    cplx acc(0, 0);
    for (u64 x = 0; x < p; ++x) acc += psi.eval(x);
    CHECK(std::abs(acc) < 1e-10 * static_cast<double>(p));
    CHECK(psi.eval(0) == cplx(1, 0));

    const MultChar chi(f, 2);
    acc = cplx(0, 0);
    for (u64 x = 1; x < p; ++x) acc += chi.eval(x);
    CHECK(std::abs(acc) < 1e-10 * static_cast<double>(p));
  }

  TEST_CASE("conjugation flips the power / frequency") {
    auto f31 = F(31);
    const MultChar chi(f31, 5, 2);
    const AddChar psi(f31, 4);
    for (u64 x = 0; x < 31; ++x) {
      CHECK(std::abs(chi.conjugate().eval(x) - std::conj(chi.eval(x))) < 1e-12);
      CHECK(std::abs(psi.conjugate().eval(x) - std::conj(psi.eval(x))) < 1e-12);
    }
    CHECK(psi.conjugate().frequency() == 27);
  }
}
