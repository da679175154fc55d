#pragma once

// Exact scalar fields: rationals (GMP) and a prime field F_p.

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace gentle {

using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

// Prime field with a process-wide modulus (default 32003).
class Fp {
 public:
  Fp() = default;
  explicit Fp(int64_t v) {
    int64_t m = v % static_cast<int64_t>(p_);
    if (m < 0) m += p_;
    v_ = static_cast<uint32_t>(m);
  }

  static void set_modulus(uint32_t p);
  static uint32_t modulus() { return p_; }

  uint32_t value() const { return v_; }

  Fp operator+(Fp o) const { return raw((v_ + o.v_) % p_); }
  Fp operator-(Fp o) const { return raw((v_ + p_ - o.v_) % p_); }
  Fp operator-() const { return raw((p_ - v_) % p_); }
  Fp operator*(Fp o) const {
    return raw(static_cast<uint32_t>(static_cast<uint64_t>(v_) * o.v_ % p_));
  }
  Fp operator/(Fp o) const { return *this * o.inverse(); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }
  bool operator==(const Fp& o) const { return v_ == o.v_; }
  bool operator!=(const Fp& o) const { return v_ != o.v_; }

  Fp inverse() const;

 private:
  static Fp raw(uint32_t v) {
    Fp r;
    r.v_ = v;
    return r;
  }
  uint32_t v_ = 0;
  static inline uint32_t p_ = 32003;
};

std::string to_string(const Fp& x);

// Uniform interface used by the templated linear algebra.
template <class F>
struct FieldOps;

template <>
struct FieldOps<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational from_rational(const Rational& q) { return q; }
  static Rational from_int(int64_t v) { return Rational(static_cast<long>(v)); }
  static Rational to_rational(const Rational& x) { return x; }
  static const char* name() { return "rat"; }
};

template <>
struct FieldOps<Fp> {
  static Fp zero() { return Fp(0); }
  static Fp one() { return Fp(1); }
  static bool is_zero(const Fp& x) { return x.value() == 0; }
  // Throws if the denominator vanishes modulo p.
  static Fp from_rational(const Rational& q);
  static Fp from_int(int64_t v) { return Fp(v); }
  // The residue in [0, p) as an integer.
  static Rational to_rational(const Fp& x) { return Rational(static_cast<long>(x.value())); }
  static const char* name() { return "fp"; }
};

}  // namespace gentle
