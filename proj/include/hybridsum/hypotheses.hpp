#pragma once

#include <string>
#include <vector>

#include "hybridsum/geometry.hpp"
#include "hybridsum/poly.hpp"

namespace hybridsum {

enum class Tri { Holds, Fails, Undecidable };

inline const char* to_cstr(Tri t) {
  switch (t) {
    case Tri::Holds: return "holds";
    case Tri::Fails: return "fails";
    default: return "undecidable";
  }
}

enum class TheoremMode { Main, TrivialChi, TrivialPsi, Degenerate };

inline const char* to_cstr(TheoremMode m) {
  switch (m) {
    case TheoremMode::Main: return "main";
    case TheoremMode::TrivialChi: return "trivial_chi";
    case TheoremMode::TrivialPsi: return "trivial_psi";
    default: return "degenerate";
  }
}

/// Syntactically decidable hypothesis flags. Conditions that live in the curve
/// ideal (the Q*P^b and Artin-Schreier h^p - h shapes) are reported
/// Undecidable and listed in caveats; they are user assertions, not gates.
struct HypothesisReport {
  TheoremMode mode = TheoremMode::Main;
  Tri f_is_polynomial = Tri::Undecidable;
  Tri deg_f_lt_p = Tri::Undecidable;
  Tri r2_linear = Tri::Undecidable;
  Tri deg_r1_ge_3 = Tri::Undecidable;
  Tri denominator_pth_power = Tri::Undecidable;
  Tri g_is_ath_power = Tri::Undecidable;
  Tri curve_has_duplicate_x = Tri::Undecidable;
  Tri overall = Tri::Undecidable;
  std::vector<std::string> caveats;
  std::vector<std::string> failures;
};

// Decides the checkable parts of the main-theorem / trivial-psi hypotheses.
// a is the order of chi; pass the point table when J is already fixed so the
// duplicate-x flag can be filled in.
inline HypothesisReport check_hypotheses(const RationalMap& f, const RationalMap& g,
                                         const BivarPoly& P, u64 a, TheoremMode mode,
                                         const PointTable* pt = nullptr) {
  if (P.is_zero() || P.degree_y() < 1) throw ConfigError("curve", "need deg_y(P) >= 1");
  const u64 p = P.modulus();

  HypothesisReport rep;
  rep.mode = mode;
  if (pt != nullptr)
    rep.curve_has_duplicate_x = pt->duplicate_x ? Tri::Holds : Tri::Fails;

  // f-side flags (used by the Main and TrivialChi regimes).
  rep.f_is_polynomial = f.is_polynomial() ? Tri::Holds : Tri::Fails;
  if (f.is_polynomial()) {
    const BivarPoly fp = f.as_polynomial();
    rep.deg_f_lt_p = static_cast<u64>(std::max(fp.total_degree(), 0)) < p ? Tri::Holds
                                                                          : Tri::Fails;
    const auto [r1, r2] = split_r1_r2(fp);
    rep.r2_linear = r2.total_degree() <= 1 ? Tri::Holds : Tri::Fails;
    rep.deg_r1_ge_3 = r1.total_degree() >= 3 ? Tri::Holds : Tri::Fails;
    rep.denominator_pth_power = Tri::Holds;  // constant denominators are c*1^p
  } else {
    // Desk scale keeps deg f2 < p, so only constants can be p-th powers.
    rep.denominator_pth_power = Tri::Fails;
    rep.r2_linear = Tri::Undecidable;
    rep.deg_r1_ge_3 = Tri::Undecidable;
    rep.deg_f_lt_p = Tri::Undecidable;
  }

  // g-side flag (gates the TrivialPsi regime). For a rational g the quotient
  // is a constant times an a-th power iff numerator and denominator both are.
  if (a >= 2) {
    const bool num_pow = is_perfect_power(g.num, a);
    const bool den_pow = g.den.is_constant() || is_perfect_power(g.den, a);
    rep.g_is_ath_power = (num_pow && den_pow) ? Tri::Holds : Tri::Fails;
  } else {
    rep.g_is_ath_power = Tri::Undecidable;
  }

  auto fail = [&rep](const std::string& why) {
    rep.failures.push_back(why);
    rep.overall = Tri::Fails;
  };
  rep.overall = Tri::Holds;

  switch (mode) {
    case TheoremMode::Main:
    case TheoremMode::TrivialChi:
      if (rep.f_is_polynomial == Tri::Holds) {
        if (rep.deg_f_lt_p == Tri::Fails) fail("deg f >= p");
        if (rep.r2_linear == Tri::Holds && rep.deg_r1_ge_3 == Tri::Fails)
          fail("r2 is linear and deg r1 < 3");
        rep.caveats.push_back("r2 + Q*P^b membership over the curve ideal not decided");
      } else {
        rep.caveats.push_back("f1, f2 coprimality asserted by the caller, not verified");
      }
      rep.caveats.push_back("Artin-Schreier shape h^p - h + linear + Q*P^b not decided");
      break;
    case TheoremMode::TrivialPsi:
      if (a < 2) {
        fail("trivial psi requires a nontrivial chi");
        break;
      }
      if (rep.g_is_ath_power == Tri::Holds) fail("g is a constant multiple of an a-th power");
      rep.caveats.push_back("g + Q*P^b membership over the curve ideal not decided");
      break;
    case TheoremMode::Degenerate:
      fail("both characters trivial: the sums are plain point counts");
      break;
  }
  return rep;
}

}  // namespace hybridsum
