#include "wedgekit/field.hpp"

#include <cctype>
#include <utility>

namespace wedgekit {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  using u128 = unsigned __int128;
  return static_cast<std::uint64_t>(u128(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// text must match: -? digits ( "/" digits )?
struct Literal {
  bool negative = false;
  std::string num;
  std::string den;  // empty when no slash
};

Literal split_literal(std::string_view text) {
  Literal lit;
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') {
    lit.negative = true;
    ++i;
  }
  std::size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    ++i;
  }
  if (i == num_start) {
    throw FieldError("bad scalar literal '" + std::string(text) + "'");
  }
  lit.num = std::string(text.substr(num_start, i - num_start));
  if (i == text.size()) return lit;
  if (text[i] != '/') {
    throw FieldError("bad scalar literal '" + std::string(text) + "'");
  }
  ++i;
  std::size_t den_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    ++i;
  }
  if (i == den_start || i != text.size()) {
    throw FieldError("bad scalar literal '" + std::string(text) + "'");
  }
  lit.den = std::string(text.substr(den_start, i - den_start));
  return lit;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses decide primality for all n < 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Fp Fp::inverse() const {
  if (v_ == 0) throw FieldError("division by zero in F_" + std::to_string(p_));
  // Extended Euclid on (v, p); p prime so the gcd is 1.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p_);
  std::int64_t new_r = static_cast<std::int64_t>(v_);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(p_);
  return Fp(static_cast<std::uint64_t>(t), p_);
}

Rat FieldTraits<Rat>::parse(const FieldSpec& f, std::string_view text) {
  (void)f;
  Literal lit = split_literal(text);
  if (!lit.den.empty() && mpz_class(lit.den) == 0) {
    throw FieldError("zero denominator in '" + std::string(text) + "'");
  }
  Rat value(mpz_class(lit.num), lit.den.empty() ? mpz_class(1) : mpz_class(lit.den));
  value.canonicalize();
  if (lit.negative) value = -value;
  return value;
}

Fp FieldTraits<Fp>::parse(const FieldSpec& f, std::string_view text) {
  Literal lit = split_literal(text);
  std::uint64_t p = f.modulus();
  mpz_class num(lit.num);
  Fp value(mpz_class(num % p).get_ui(), p);
  if (lit.negative) value = -value;
  if (!lit.den.empty()) {
    mpz_class den(lit.den);
    Fp d(mpz_class(den % p).get_ui(), p);
    value = value / d;  // throws FieldError when den ≡ 0 (mod p)
  }
  return value;
}

}  // namespace wedgekit
