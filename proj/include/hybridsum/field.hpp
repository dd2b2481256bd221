#pragma once

#include <cstdint>
#include <vector>

#include "hybridsum/errors.hpp"

namespace hybridsum {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Modular helpers valid for moduli below 2^32 (products fit in u64).
inline u64 mod_mul(u64 a, u64 b, u64 p) { return a * b % p; }

inline u64 mod_pow(u64 x, u64 e, u64 p) {
  u64 r = 1 % p;
  x %= p;
  while (e) {
    if (e & 1) r = mod_mul(r, x, p);
    x = mod_mul(x, x, p);
    e >>= 1;
  }
  return r;
}

inline u64 mod_inv(u64 x, u64 p) {
  if (x % p == 0) throw ZeroInverseError();
  return mod_pow(x, p - 2, p);
}

inline u64 mod_reduce_signed(i64 c, u64 p) {
  i64 r = c % static_cast<i64>(p);
  if (r < 0) r += static_cast<i64>(p);
  return static_cast<u64>(r);
}

namespace detail {
inline u64 mulmod_wide(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}
}  // namespace detail

// Deterministic Miller-Rabin, valid for all n < 3.3e18 with this witness set.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = 1 % n, base = a % n, e = d;
    while (e) {
      if (e & 1) x = detail::mulmod_wide(x, base, n);
      base = detail::mulmod_wide(base, base, n);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod_wide(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// F_p with a fixed smallest primitive root and a full discrete-log table.
/// Immutable after construction; safe to share across threads.
class PrimeField {
 public:
  static constexpr u64 kDefaultMaxModulus = 10'000'019;

  explicit PrimeField(u64 p, u64 max_modulus = kDefaultMaxModulus) : p_(p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) throw NotPrimeError(p);
    if (p > max_modulus) throw TooLargeError(p, max_modulus);
    gen_ = find_smallest_generator(p);
    log_.assign(p, 0);
    u64 v = 1;
    for (u64 i = 0; i + 1 < p; ++i) {
      log_[v] = static_cast<u32>(i);
      v = mod_mul(v, gen_, p);
    }
  }

  u64 p() const noexcept { return p_; }
  u64 generator() const noexcept { return gen_; }

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 mul(u64 a, u64 b) const { return a * b % p_; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 pow(u64 x, u64 e) const { return mod_pow(x, e, p_); }
  u64 inv(u64 x) const { return mod_inv(x, p_); }
  u64 reduce_signed(i64 c) const { return mod_reduce_signed(c, p_); }

  // Discrete log base the generator, defined for x in [1, p-1].
  u64 log(u64 x) const { return log_[x % p_]; }

  // Verification fault-injection hook; never used by library code paths.
  void corrupt_log_entry(u64 x, u32 value) { log_[x % p_] = value; }

 private:
  static u64 find_smallest_generator(u64 p) {
    const auto qs = prime_factors(p - 1);
    for (u64 g = 2; g < p; ++g) {
      bool ok = true;
      for (u64 q : qs) {
        if (mod_pow(g, (p - 1) / q, p) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) return g;
    }
    throw Error("no primitive root found");  // unreachable for prime p
  }

  u64 p_;
  u64 gen_;
  std::vector<u32> log_;
};

inline PrimeField make_field(u64 p, u64 max_modulus = PrimeField::kDefaultMaxModulus) {
  return PrimeField(p, max_modulus);
}

}  // namespace hybridsum
