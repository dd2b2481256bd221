#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <numeric>

#include "hybridsum/field.hpp"

namespace hybridsum {

using cplx = std::complex<double>;

/// Multiplicative character of exact order a, canonical with respect to the
/// field's smallest primitive root g: chi(g^t) = e^{2*pi*i * t*m / a}.
/// Order a = 1 is the trivial character. chi(0) = 0 when nontrivial, 1 when
/// trivial (so a trivial chi excludes nothing but true poles).
class MultChar {
 public:
  MultChar(std::shared_ptr<const PrimeField> field, u64 order, u64 power = 1)
      : field_(std::move(field)), order_(order), power_(order == 0 ? 0 : power % order) {
    if (order_ == 0 || (field_->p() - 1) % order_ != 0)
      throw OrderNotDividingError(order, field_->p());
    if (std::gcd(power_, order_) != 1 && order_ != 1) throw CharPowerError(power, order_);
    roots_.resize(order_);
    for (u64 j = 0; j < order_; ++j)
      roots_[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                      static_cast<double>(order_));
  }

  u64 order() const noexcept { return order_; }
  u64 power() const noexcept { return power_; }
  bool trivial() const noexcept { return order_ == 1; }
  const PrimeField& field() const noexcept { return *field_; }

  cplx eval(u64 x) const {
    x %= field_->p();
    if (x == 0) return trivial() ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    return roots_[field_->log(x) % order_ * power_ % order_];
  }

  MultChar conjugate() const {
    if (trivial()) return *this;
    return MultChar(field_, order_, order_ - power_);
  }

 private:
  std::shared_ptr<const PrimeField> field_;
  u64 order_;
  u64 power_;
  std::vector<cplx> roots_;
};

/// Additive character psi(x) = e^{2*pi*i * k*x / p}; k = 0 is trivial.
class AddChar {
 public:
  AddChar(std::shared_ptr<const PrimeField> field, u64 frequency)
      : field_(std::move(field)), k_(frequency % field_->p()) {}

  u64 frequency() const noexcept { return k_; }
  bool trivial() const noexcept { return k_ == 0; }
  const PrimeField& field() const noexcept { return *field_; }

  cplx eval(u64 x) const {
    const u64 p = field_->p();
    const u64 s = k_ * (x % p) % p;
    if (s == 0) return {1.0, 0.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(s) /
                               static_cast<double>(p));
  }

  AddChar conjugate() const { return AddChar(field_, (field_->p() - k_) % field_->p()); }

 private:
  std::shared_ptr<const PrimeField> field_;
  u64 k_;
};

inline MultChar make_mult_char(std::shared_ptr<const PrimeField> field, u64 order,
                               u64 power = 1) {
  return MultChar(std::move(field), order, power);
}

inline AddChar make_add_char(std::shared_ptr<const PrimeField> field, u64 frequency) {
  return AddChar(std::move(field), frequency);
}

}  // namespace hybridsum
