#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "wedgekit/errors.hpp"

namespace wedgekit {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// The coefficient field of a computation: Q or F_p with p prime.
///
/// All arithmetic in the library is exact; there is no floating point
/// anywhere. A FieldSpec is a small value object used to mint constants,
/// parse literals and check that operands live over the same field.
class FieldSpec {
 public:
  static FieldSpec rationals() { return FieldSpec(0); }

  static FieldSpec prime_field(std::uint64_t p) {
    if (!is_prime(p)) {
      throw FieldError("modulus " + std::to_string(p) + " is not prime");
    }
    return FieldSpec(p);
  }

  bool is_rationals() const { return p_ == 0; }

  std::uint64_t modulus() const {
    if (p_ == 0) throw FieldError("rationals have no modulus");
    return p_;
  }

  std::string name() const {
    return p_ == 0 ? std::string("Q") : "F" + std::to_string(p_);
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  explicit FieldSpec(std::uint64_t p) : p_(p) {}

  std::uint64_t p_;  // 0 encodes Q
};

/// Arbitrary-precision rational scalar. GMP keeps values in lowest terms
/// with positive denominator, so equality is representation equality.
using Rat = mpq_class;

/// Element of F_p with the modulus carried at runtime.
class Fp {
 public:
  Fp(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    a.require_same(b);
    std::uint64_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return Fp(s, a.p_);
  }

  friend Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }

  friend Fp operator*(const Fp& a, const Fp& b) {
    a.require_same(b);
    using u128 = unsigned __int128;
    return Fp(static_cast<std::uint64_t>(u128(a.v_) * b.v_ % a.p_), a.p_);
  }

  Fp inverse() const;

  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    a.require_same(b);
    return a.v_ == b.v_;
  }

 private:
  void require_same(const Fp& o) const {
    if (p_ != o.p_) {
      throw FieldError("mixed moduli " + std::to_string(p_) + " and " +
                       std::to_string(o.p_));
    }
  }

  std::uint64_t v_;
  std::uint64_t p_;
};

/// Uniform scalar interface used by the generic linear algebra.
template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rat> {
  static FieldSpec spec_of(const Rat&) { return FieldSpec::rationals(); }
  static Rat zero(const FieldSpec&) { return Rat(0); }
  static Rat one(const FieldSpec&) { return Rat(1); }
  static Rat from_int(const FieldSpec&, long long n) {
    return Rat(static_cast<long>(n));
  }
  static bool is_zero(const Rat& x) { return sgn(x) == 0; }
  static std::string str(const Rat& x) { return x.get_str(); }
  /// Strict literal grammar: -? digits ( "/" digits )?, nonzero denominator.
  static Rat parse(const FieldSpec& f, std::string_view text);
};

template <>
struct FieldTraits<Fp> {
  static FieldSpec spec_of(const Fp& x) {
    return FieldSpec::prime_field(x.modulus());
  }
  static Fp zero(const FieldSpec& f) { return Fp(0, f.modulus()); }
  static Fp one(const FieldSpec& f) { return Fp(1, f.modulus()); }
  static Fp from_int(const FieldSpec& f, long long n) {
    std::uint64_t p = f.modulus();
    long long r = n % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return Fp(static_cast<std::uint64_t>(r), p);
  }
  static bool is_zero(const Fp& x) { return x.is_zero(); }
  static std::string str(const Fp& x) { return std::to_string(x.value()); }
  static Fp parse(const FieldSpec& f, std::string_view text);
};

}  // namespace wedgekit
