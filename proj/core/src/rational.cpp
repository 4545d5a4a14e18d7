#include "ndsent/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>

#include "ndsent/errors.hpp"

namespace nds {

Rational::Rational(long long n) {
  Integer z;
  // mpz has no long long constructor on LLP64; go through string only when
  // the value does not fit in a long.
  if (n >= static_cast<long long>(std::numeric_limits<long>::min()) &&
      n <= static_cast<long long>(std::numeric_limits<long>::max())) {
    z = static_cast<long>(n);
  } else {
    z = Integer(std::to_string(n));
  }
  v_ = mpq_class(z);
}

Rational::Rational(long long num, long long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = Rational(num).v_ / Rational(den).v_;
  canon();
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num) / mpq_class(den);
  canon();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

static bool valid_int_token(std::string_view t, bool allow_sign) {
  if (t.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && t[0] == '-') {
    if (t.size() == 1) return false;
    i = 1;
  }
  for (; i < t.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  }
  return true;
}

Rational Rational::parse(std::string_view text) {
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!valid_int_token(den, /*allow_sign=*/false)) {
      throw DomainError("bad rational literal: '" + std::string(text) + "'");
    }
  }
  if (!valid_int_token(num, /*allow_sign=*/true)) {
    throw DomainError("bad rational literal: '" + std::string(text) + "'");
  }
  Integer n{std::string(num)};
  if (den.empty()) return Rational(n);
  Integer d{std::string(den)};
  if (d == 0) {
    throw DomainError("bad rational literal (zero denominator): '" +
                      std::string(text) + "'");
  }
  return Rational(n, d);
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

double Rational::to_double() const { return v_.get_d(); }

Integer Rational::floor() const {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

Integer Rational::ceil() const {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

Rational Rational::abs() const {
  return sign() < 0 ? Rational(mpq_class(-v_)) : *this;
}

Rational Rational::pow2(long k) {
  mpq_class r;
  if (k >= 0) {
    mpz_class n = 1;
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    r = mpq_class(n);
  } else {
    mpz_class d = 1;
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    r = mpq_class(1) / mpq_class(d);
  }
  return Rational(r);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace nds
