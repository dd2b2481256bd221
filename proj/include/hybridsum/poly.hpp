#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hybridsum/field.hpp"

namespace hybridsum {

struct Monomial {
  int dx = 0;
  int dy = 0;
  auto operator<=>(const Monomial&) const = default;
};

/// Sparse bivariate polynomial over F_p. Zero coefficients are never stored;
/// total degree and y-degree are cached at construction.
class BivarPoly {
 public:
  using Terms = std::map<Monomial, u64>;

  explicit BivarPoly(u64 p) : p_(p) {}
  BivarPoly(u64 p, Terms terms) : p_(p), terms_(std::move(terms)) { normalize(); }

  static BivarPoly constant(u64 p, u64 v) {
    Terms t;
    if (v % p != 0) t[{0, 0}] = v % p;
    return BivarPoly(p, std::move(t));
  }
  static BivarPoly monomial(u64 p, int dx, int dy, u64 c) {
    Terms t;
    if (c % p != 0) t[{dx, dy}] = c % p;
    return BivarPoly(p, std::move(t));
  }
  static BivarPoly var_x(u64 p) { return monomial(p, 1, 0, 1); }
  static BivarPoly var_y(u64 p) { return monomial(p, 0, 1, 1); }

  u64 modulus() const noexcept { return p_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return deg_ <= 0; }

  // Degree conventions: the zero polynomial has degree -1.
  int total_degree() const noexcept { return deg_; }
  int degree_y() const noexcept { return degy_; }
  int degree_x() const noexcept { return degx_; }

  u64 coeff(int dx, int dy) const {
    auto it = terms_.find({dx, dy});
    return it == terms_.end() ? 0 : it->second;
  }

  u64 eval(u64 x, u64 y) const {
    if (terms_.empty()) return 0;
    const auto xs = power_table(x, degx_);
    const auto ys = power_table(y, degy_);
    u64 acc = 0;
    for (const auto& [m, c] : terms_)
      acc = (acc + c * xs[static_cast<size_t>(m.dx)] % p_ * ys[static_cast<size_t>(m.dy)]) % p_;
    return acc;
  }

  // Coefficients of the univariate specialization P(x0, y) as a dense vector in y.
  std::vector<u64> y_coefficients_at(u64 x0) const {
    std::vector<u64> out(static_cast<size_t>(std::max(degy_, 0)) + 1, 0);
    if (terms_.empty()) return out;
    const auto xs = power_table(x0, degx_);
    for (const auto& [m, c] : terms_) {
      size_t j = static_cast<size_t>(m.dy);
      out[j] = (out[j] + c * xs[static_cast<size_t>(m.dx)]) % p_;
    }
    return out;
  }

  bool operator==(const BivarPoly& o) const { return p_ == o.p_ && terms_ == o.terms_; }

 private:
  void normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second %= p_;
      if (it->second == 0)
        it = terms_.erase(it);
      else
        ++it;
    }
    deg_ = degy_ = degx_ = -1;
    for (const auto& [m, c] : terms_) {
      deg_ = std::max(deg_, m.dx + m.dy);
      degx_ = std::max(degx_, m.dx);
      degy_ = std::max(degy_, m.dy);
    }
  }

  std::vector<u64> power_table(u64 v, int maxdeg) const {
    std::vector<u64> t(static_cast<size_t>(std::max(maxdeg, 0)) + 1);
    t[0] = 1 % p_;
    for (size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * (v % p_) % p_;
    return t;
  }

  u64 p_;
  Terms terms_;
  int deg_ = -1;
  int degy_ = -1;
  int degx_ = -1;
};

namespace detail {
inline void check_same_field(const BivarPoly& a, const BivarPoly& b) {
  if (a.modulus() != b.modulus()) throw FieldMismatchError();
}
}  // namespace detail

inline BivarPoly poly_add(const BivarPoly& a, const BivarPoly& b) {
  detail::check_same_field(a, b);
  auto t = a.terms();
  const u64 p = a.modulus();
  for (const auto& [m, c] : b.terms()) t[m] = (t[m] + c) % p;
  return BivarPoly(p, std::move(t));
}

inline BivarPoly poly_neg(const BivarPoly& a) {
  auto t = a.terms();
  const u64 p = a.modulus();
  for (auto& [m, c] : t) c = p - c;
  return BivarPoly(p, std::move(t));
}

inline BivarPoly poly_sub(const BivarPoly& a, const BivarPoly& b) {
  return poly_add(a, poly_neg(b));
}

inline BivarPoly poly_scale(const BivarPoly& a, u64 s) {
  auto t = a.terms();
  const u64 p = a.modulus();
  for (auto& [m, c] : t) c = c * (s % p) % p;
  return BivarPoly(p, std::move(t));
}

inline BivarPoly poly_mul(const BivarPoly& a, const BivarPoly& b) {
  detail::check_same_field(a, b);
  const u64 p = a.modulus();
  BivarPoly::Terms t;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m{ma.dx + mb.dx, ma.dy + mb.dy};
      t[m] = (t[m] + ca * cb) % p;
    }
  return BivarPoly(p, std::move(t));
}

inline BivarPoly poly_pow(const BivarPoly& a, u64 e) {
  BivarPoly r = BivarPoly::constant(a.modulus(), 1);
  BivarPoly base = a;
  while (e) {
    if (e & 1) r = poly_mul(r, base);
    base = poly_mul(base, base);
    e >>= 1;
  }
  return r;
}

// q(x+u, y) by binomial expansion of each monomial.
inline BivarPoly poly_shift_x(const BivarPoly& q, u64 u) {
  const u64 p = q.modulus();
  u %= p;
  if (u == 0) return q;
  const int dmax = std::max(q.degree_x(), 0);
  // Pascal triangle mod p up to the x-degree of q.
  std::vector<std::vector<u64>> binom(static_cast<size_t>(dmax) + 1);
  for (int n = 0; n <= dmax; ++n) {
    binom[n].assign(static_cast<size_t>(n) + 1, 1);
    for (int k = 1; k < n; ++k) binom[n][k] = (binom[n - 1][k - 1] + binom[n - 1][k]) % p;
  }
  std::vector<u64> upow(static_cast<size_t>(dmax) + 1, 1);
  for (int i = 1; i <= dmax; ++i) upow[i] = upow[i - 1] * u % p;

  BivarPoly::Terms t;
  for (const auto& [m, c] : q.terms()) {
    for (int k = 0; k <= m.dx; ++k) {
      Monomial mm{k, m.dy};
      u64 add = c * binom[m.dx][k] % p * upow[m.dx - k] % p;
      t[mm] = (t[mm] + add) % p;
    }
  }
  return BivarPoly(p, std::move(t));
}

// f = r1(x) + r2(x,y) with every monomial of r2 having a positive y-exponent.
inline std::pair<BivarPoly, BivarPoly> split_r1_r2(const BivarPoly& f) {
  BivarPoly::Terms t1, t2;
  for (const auto& [m, c] : f.terms()) (m.dy == 0 ? t1 : t2)[m] = c;
  return {BivarPoly(f.modulus(), std::move(t1)), BivarPoly(f.modulus(), std::move(t2))};
}

// Decides q == c * h^a for some polynomial h and constant c, by monic-normalized
// iterated root extraction on the coefficient table, verified by re-expansion.
inline bool is_perfect_power(const BivarPoly& q, u64 a) {
  if (a < 2) return true;
  if (q.is_zero()) return true;
  const u64 p = q.modulus();
  const auto lead = *q.terms().rbegin();  // lex-leading term, multiplicative order
  if (lead.first.dx % static_cast<int>(a) != 0 || lead.first.dy % static_cast<int>(a) != 0)
    return false;
  if (a % p == 0) return false;  // cannot divide by a below; never hit since a | p-1
  const u64 c = lead.second;
  const BivarPoly qm = poly_scale(q, mod_inv(c, p));
  const Monomial hlead{lead.first.dx / static_cast<int>(a), lead.first.dy / static_cast<int>(a)};

  BivarPoly h = BivarPoly::monomial(p, hlead.dx, hlead.dy, 1);
  const u64 inv_a = mod_inv(a % p, p);
  // h has x-degree <= deg_x(q)/a and y-degree <= deg_y(q)/a
  const size_t max_steps =
      (static_cast<size_t>(q.degree_x()) / a + 1) * (static_cast<size_t>(q.degree_y()) / a + 1) +
      4;
  for (size_t step = 0; step < max_steps; ++step) {
    BivarPoly r = poly_sub(qm, poly_pow(h, a));
    if (r.is_zero()) return poly_scale(poly_pow(h, a), c) == q;
    const auto rl = *r.terms().rbegin();
    // Next correction term: rl / (a * hlead^(a-1)).
    const Monomial delta{rl.first.dx - (static_cast<int>(a) - 1) * hlead.dx,
                         rl.first.dy - (static_cast<int>(a) - 1) * hlead.dy};
    if (delta.dx < 0 || delta.dy < 0) return false;
    if (!(delta < hlead)) return false;  // corrections must shrink strictly
    h = poly_add(h, BivarPoly::monomial(p, delta.dx, delta.dy, rl.second * inv_a % p));
  }
  return false;
}

/// Quotient of two bivariate polynomials; the denominator is nonzero.
/// No gcd cancellation is performed.
struct RationalMap {
  BivarPoly num;
  BivarPoly den;

  RationalMap(BivarPoly n, BivarPoly d) : num(std::move(n)), den(std::move(d)) {
    detail::check_same_field(num, den);
    if (den.is_zero()) throw ZeroDenominatorError();
  }

  static RationalMap from_poly(BivarPoly n) {
    const u64 p = n.modulus();
    return RationalMap(std::move(n), BivarPoly::constant(p, 1));
  }

  u64 modulus() const { return num.modulus(); }
  int denominator_degree() const { return den.total_degree(); }
  bool is_polynomial() const { return den.is_constant(); }

  // Valid only when is_polynomial(); folds the constant denominator in.
  BivarPoly as_polynomial() const {
    if (!is_polynomial()) throw NotPolynomialError();
    return poly_scale(num, mod_inv(den.coeff(0, 0), num.modulus()));
  }

  bool operator==(const RationalMap& o) const { return num == o.num && den == o.den; }
};

struct Pole {};  // marker; eval returns nullopt at a pole

inline std::optional<u64> eval_rational(const RationalMap& r, u64 x, u64 y) {
  const u64 d = r.den.eval(x, y);
  if (d == 0) return std::nullopt;
  return r.num.eval(x, y) * mod_inv(d, r.modulus()) % r.modulus();
}

inline std::pair<BivarPoly, BivarPoly> split_r1_r2(const RationalMap& f) {
  return split_r1_r2(f.as_polynomial());
}

// Canonical text form, reparseable by the expression parser.
inline std::string to_string(const BivarPoly& q) {
  if (q.is_zero()) return "0";
  std::string out;
  for (auto it = q.terms().rbegin(); it != q.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (!out.empty()) out += " + ";
    std::string term;
    if (c != 1 || (m.dx == 0 && m.dy == 0)) term = std::to_string(c);
    auto append_var = [&term](char v, int d) {
      if (d == 0) return;
      if (!term.empty()) term += "*";
      term += v;
      if (d > 1) term += "^" + std::to_string(d);
    };
    append_var('x', m.dx);
    append_var('y', m.dy);
    out += term;
  }
  return out;
}

inline std::string to_string(const RationalMap& r) {
  if (r.is_polynomial() && r.den.coeff(0, 0) == 1) return to_string(r.num);
  return "(" + to_string(r.num) + ") / (" + to_string(r.den) + ")";
}

}  // namespace hybridsum
