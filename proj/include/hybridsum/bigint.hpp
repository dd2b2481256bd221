#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hybridsum/errors.hpp"

namespace hybridsum {

/// Minimal unsigned big integer (base 1e9 limbs), enough for exact tuple
/// counting: add, multiply, exact small division, compare, decimal output.
class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v) {  // NOLINT(google-explicit-constructor)
    while (v) {
      d_.push_back(static_cast<std::uint32_t>(v % kBase));
      v /= kBase;
    }
  }

  bool is_zero() const noexcept { return d_.empty(); }

  BigUint& operator+=(const BigUint& o) {
    std::uint64_t carry = 0;
    const size_t n = std::max(d_.size(), o.d_.size());
    d_.resize(n, 0);
    for (size_t i = 0; i < n; ++i) {
      std::uint64_t cur = carry + d_[i] + (i < o.d_.size() ? o.d_[i] : 0);
      d_[i] = static_cast<std::uint32_t>(cur % kBase);
      carry = cur / kBase;
    }
    if (carry) d_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
  }

  BigUint operator*(const BigUint& o) const {
    BigUint r;
    if (is_zero() || o.is_zero()) return r;
    std::vector<std::uint64_t> acc(d_.size() + o.d_.size(), 0);
    for (size_t i = 0; i < d_.size(); ++i) {
      std::uint64_t carry = 0;
      for (size_t j = 0; j < o.d_.size(); ++j) {
        unsigned __int128 cur =
            static_cast<unsigned __int128>(d_[i]) * o.d_[j] + acc[i + j] + carry;
        acc[i + j] = static_cast<std::uint64_t>(cur % kBase);
        carry = static_cast<std::uint64_t>(cur / kBase);
      }
      size_t k = i + o.d_.size();
      while (carry) {
        std::uint64_t cur = acc[k] + carry;
        acc[k] = cur % kBase;
        carry = cur / kBase;
        ++k;
      }
    }
    r.d_.assign(acc.begin(), acc.end());
    r.trim();
    return r;
  }

  BigUint& mul_small(std::uint64_t m) {
    if (m >= kBase) {
      *this = *this * BigUint(m);
      return *this;
    }
    if (m == 0 || is_zero()) {
      d_.clear();
      return *this;
    }
    std::uint64_t carry = 0;
    for (auto& limb : d_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
      limb = static_cast<std::uint32_t>(cur % kBase);
      carry = cur / kBase;
    }
    while (carry) {
      d_.push_back(static_cast<std::uint32_t>(carry % kBase));
      carry /= kBase;
    }
    return *this;
  }

  // Floor-divide by a small divisor; remainder via out-param when wanted.
  BigUint& div_small(std::uint64_t dvs, std::uint64_t* rem_out = nullptr) {
    if (dvs == 0) throw Error("BigUint division by zero");
    std::uint64_t rem = 0;
    for (size_t i = d_.size(); i-- > 0;) {
      std::uint64_t cur = rem * kBase + d_[i];
      d_[i] = static_cast<std::uint32_t>(cur / dvs);
      rem = cur % dvs;
    }
    trim();
    if (rem_out) *rem_out = rem;
    return *this;
  }

  int compare(const BigUint& o) const {
    if (d_.size() != o.d_.size()) return d_.size() < o.d_.size() ? -1 : 1;
    for (size_t i = d_.size(); i-- > 0;)
      if (d_[i] != o.d_[i]) return d_[i] < o.d_[i] ? -1 : 1;
    return 0;
  }
  bool operator==(const BigUint& o) const { return compare(o) == 0; }
  bool operator<(const BigUint& o) const { return compare(o) < 0; }
  bool operator<=(const BigUint& o) const { return compare(o) <= 0; }

  std::string to_string() const {
    if (d_.empty()) return "0";
    std::string s = std::to_string(d_.back());
    for (size_t i = d_.size() - 1; i-- > 0;) {
      std::string part = std::to_string(d_[i]);
      s += std::string(9 - part.size(), '0') + part;
    }
    return s;
  }

  double to_double() const {
    double v = 0;
    for (size_t i = d_.size(); i-- > 0;) v = v * static_cast<double>(kBase) + d_[i];
    return v;
  }

  std::uint64_t to_u64_saturating() const {
    std::uint64_t v = 0;
    for (size_t i = d_.size(); i-- > 0;) {
      if (v > (UINT64_MAX - d_[i]) / kBase) return UINT64_MAX;
      v = v * kBase + d_[i];
    }
    return v;
  }

 private:
  void trim() {
    while (!d_.empty() && d_.back() == 0) d_.pop_back();
  }

  static constexpr std::uint64_t kBase = 1'000'000'000;
  std::vector<std::uint32_t> d_;  // little-endian limbs, each < kBase
};

}  // namespace hybridsum
