#include "endoquant/algebra/gaussian_rational.hpp"

#include <cctype>
#include <ostream>

#include "endoquant/algebra/errors.hpp"

namespace endoquant {

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+') {
    throw InvalidInput("malformed rational '" + std::string(text) + "'");
  }
  std::string n(num[0] == '+' ? num.substr(1) : num);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (zd == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  Rational q(zn, zd);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw SingularValue("division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  *this *= o.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return format_rational(re_);
  if (sgn(re_) == 0) return format_rational(im_) + "*i";
  std::string out = format_rational(re_);
  out += sgn(im_) > 0 ? "+" : "-";
  out += format_rational(abs(im_));
  out += "*i";
  return out;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw InvalidInput("empty complex literal");
  if (s.back() != 'i') return {parse_rational(s)};
  std::string body = s.substr(0, s.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  // Split at the last sign that is not in leading position.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& t) -> Rational {
    if (t.empty() || t == "+") return 1;
    if (t == "-") return -1;
    return parse_rational(t);
  };
  if (split == std::string::npos) return {Rational(0), imag_part(body)};
  return {parse_rational(body.substr(0, split)), imag_part(body.substr(split))};
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

}  // namespace endoquant
