#include "mforge/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "mforge/errors.hpp"

namespace mforge {

Rat::Rat(long num, long den) : v_(num, den) {
  if (den == 0) throw ParseError("rational with zero denominator");
  v_.canonicalize();
}

Rat Rat::parse(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  const auto slash = text.find('/');
  const auto dot = text.find('.');
  if (slash != std::string::npos) {
    mpq_class v;
    if (v.set_str(text, 10) != 0) throw ParseError("bad rational literal: " + text);
    if (sgn(v.get_den()) == 0) throw ParseError("zero denominator: " + text);
    v.canonicalize();
    return Rat(std::move(v));
  }
  if (dot != std::string::npos) {
    // decimal: sign, integer part, fractional part -> n / 10^k
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw ParseError("bad decimal literal: " + text);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i == 0 && (digits[i] == '-' || digits[i] == '+')) continue;
      if (!std::isdigit(static_cast<unsigned char>(digits[i])))
        throw ParseError("bad decimal literal: " + text);
    }
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    mpq_class v(num, den);
    v.canonicalize();
    return Rat(std::move(v));
  }
  mpq_class v;
  if (v.set_str(text, 10) != 0) throw ParseError("bad integer literal: " + text);
  return Rat(std::move(v));
}

Rat Rat::operator-() const { return Rat(mpq_class(-v_)); }

Rat& Rat::operator+=(const Rat& o) {
  v_ += o.v_;
  return *this;
}

Rat& Rat::operator-=(const Rat& o) {
  v_ -= o.v_;
  return *this;
}

Rat& Rat::operator*=(const Rat& o) {
  v_ *= o.v_;
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw ParameterOutOfRange("division by zero rational");
  v_ /= o.v_;
  return *this;
}

}  // namespace mforge
