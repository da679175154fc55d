#include "gentle/field.hpp"

#include <cctype>

#include "gentle/error.hpp"

namespace gentle {

Rational parse_rational(const std::string& text) {
  std::string s = text;
  if (!s.empty() && s[0] == '+') s = s.substr(1);
  auto slash = s.find('/');
  auto digits = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    size_t i = (allow_sign && t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits(s, true)) throw Error("SyntaxError", "bad rational '" + text + "'");
    return Rational(mpz_class(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false))
    throw Error("SyntaxError", "bad rational '" + text + "'");
  mpz_class d(den);
  if (d == 0) throw Error("SyntaxError", "zero denominator in '" + text + "'");
  Rational q(mpz_class(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

void Fp::set_modulus(uint32_t p) {
  if (p < 2) throw Error("SyntaxError", "modulus must be a prime >= 2");
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) throw Error("SyntaxError", "modulus " + std::to_string(p) + " is not prime");
  p_ = p;
}

Fp Fp::inverse() const {
  if (v_ == 0) throw Error("DivisionByZero", "inverse of 0 in F_p");
  // Fermat: v^(p-2).
  uint64_t result = 1, base = v_, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return raw(static_cast<uint32_t>(result));
}

std::string to_string(const Fp& x) { return std::to_string(x.value()); }

Fp FieldOps<Fp>::from_rational(const Rational& q) {
  mpz_class p(Fp::modulus());
  mpz_class n = q.get_num() % p, d = q.get_den() % p;
  if (n < 0) n += p;
  if (d == 0)
    throw Error("DivisionByZero", "denominator of " + q.get_str() + " vanishes mod " +
                                      std::to_string(Fp::modulus()));
  return Fp(static_cast<int64_t>(n.get_si())) / Fp(static_cast<int64_t>(d.get_si()));
}

}  // namespace gentle
