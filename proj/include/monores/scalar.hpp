#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "monores/error.hpp"

namespace monores {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
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

}  // namespace detail

/// An element of Q (characteristic 0) or of GF(p).
///
/// The characteristic travels with the value. A characteristic-0 value whose
/// denominator is coprime to p is promoted when combined with a GF(p) value,
/// which lets integer constants such as Scalar(1) mix with field elements.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}  // NOLINT: integer literals promote
  Scalar(const mpq_class& q) : q_(q) { q_.canonicalize(); }  // NOLINT

  static Scalar modular(std::int64_t v, std::uint64_t p) {
    Scalar s;
    s.p_ = p;
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    s.r_ = static_cast<std::uint64_t>(r);
    return s;
  }

  std::uint64_t characteristic() const { return p_; }
  bool is_zero() const { return p_ ? r_ == 0 : sgn(q_) == 0; }
  bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }
  explicit operator bool() const { return !is_zero(); }

  /// Residue in [0, p) for GF(p) values.
  std::uint64_t residue() const { return r_; }
  const mpq_class& rational() const { return q_; }

  Scalar inverse() const {
    if (is_zero()) throw Error(ErrorKind::ShapeError, "inverse of zero");
    if (p_) return from_residue(detail::powmod(r_, p_ - 2, p_), p_);
    return Scalar(mpq_class(1) / q_);
  }

  Scalar operator-() const {
    if (p_) return from_residue(r_ ? p_ - r_ : 0, p_);
    return Scalar(mpq_class(-q_));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    auto p = common(a, b);
    if (p) {
      std::uint64_t x = a.as_residue(p), y = b.as_residue(p);
      std::uint64_t s = x + y;
      if (s >= p || s < x) s -= p;
      return from_residue(s, p);
    }
    return Scalar(mpq_class(a.q_ + b.q_));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    auto p = common(a, b);
    if (p) return from_residue(detail::mulmod(a.as_residue(p), b.as_residue(p), p), p);
    return Scalar(mpq_class(a.q_ * b.q_));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    auto p = common(a, b);
    if (p) return a.as_residue(p) == b.as_residue(p);
    return a.q_ == b.q_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const {
    if (p_) return std::to_string(r_);
    return q_.get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  static Scalar from_residue(std::uint64_t r, std::uint64_t p) {
    Scalar s;
    s.p_ = p;
    s.r_ = r;
    return s;
  }

  static std::uint64_t common(const Scalar& a, const Scalar& b) {
    if (a.p_ == b.p_) return a.p_;
    if (a.p_ == 0) return b.p_;
    if (b.p_ == 0) return a.p_;
    throw Error(ErrorKind::InvalidField, "mixing scalars of different characteristic");
  }

  std::uint64_t as_residue(std::uint64_t p) const {
    if (p_) return r_;
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    auto reduce = [p](const mpz_class& z) -> std::uint64_t {
      return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p));
    };
    std::uint64_t num = reduce(q_.get_num());
    std::uint64_t den = reduce(q_.get_den());
    if (den == 0) throw Error(ErrorKind::InvalidField, "denominator divisible by the characteristic");
    return detail::mulmod(num, detail::powmod(den, p - 2, p), p);
  }

  std::uint64_t p_ = 0;
  std::uint64_t r_ = 0;
  mpq_class q_;
};

/// The ground field: characteristic 0 means Q, otherwise GF(p) for prime p.
struct FieldSpec {
  std::uint64_t characteristic = 0;

  void validate() const {
    if (characteristic != 0 && !detail::is_prime(characteristic)) {
      throw Error(ErrorKind::InvalidField,
                  "characteristic " + std::to_string(characteristic) + " is neither 0 nor prime");
    }
  }

  Scalar from_int(long v) const {
    return characteristic ? Scalar::modular(v, characteristic) : Scalar(v);
  }
  Scalar zero() const { return from_int(0); }
  /// Maps a value into this field (integers and rationals reduce mod p).
  Scalar coerce(const Scalar& s) const {
    if (characteristic == 0 || s.characteristic() == characteristic) return s;
    return s + zero();
  }
  Scalar one() const { return from_int(1); }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline FieldSpec rationals() { return FieldSpec{0}; }
inline FieldSpec prime_field(std::uint64_t p) {
  FieldSpec f{p};
  f.validate();
  return f;
}

}  // namespace monores
