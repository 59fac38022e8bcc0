#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "symctr/error.hpp"

namespace symctr {

namespace detail {

inline int sign_of(const mpq_class &q) { return sgn(q); }

inline mpq_class parse_rational(std::string_view text) {
  if (text.empty())
    throw Error("malformed rational: empty string");
  std::string s(text);
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw Error("malformed rational: '" + s + "'");
  if (q.get_den() == 0)
    throw Error("malformed rational: zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rational_string(const mpq_class &q) { return q.get_str(10); }

} // namespace detail

/// Exact complex scalar re + im*i over arbitrary-precision rationals.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v), im_(0) {} // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }
  static GaussianRational rational(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return {q, 0};
  }
  static GaussianRational from_strings(std::string_view re, std::string_view im) {
    return {detail::parse_rational(re), detail::parse_rational(im)};
  }

  const mpq_class &re() const { return re_; }
  const mpq_class &im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_imaginary() const { return re_ == 0 && im_ != 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational inverse() const {
    if (is_zero())
      throw Error("division by zero scalar");
    mpq_class n = norm();
    return {mpq_class(re_ / n), mpq_class(-im_ / n)};
  }

  GaussianRational operator-() const { return {mpq_class(-re_), mpq_class(-im_)}; }

  GaussianRational &operator+=(const GaussianRational &o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational &operator-=(const GaussianRational &o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational &operator*=(const GaussianRational &o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussianRational &operator/=(const GaussianRational &o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational &b) { return a /= b; }

  friend bool operator==(const GaussianRational &a, const GaussianRational &b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Lexicographic on (re, im); used only to order keys.
  friend std::strong_ordering operator<=>(const GaussianRational &a, const GaussianRational &b) {
    int c = cmp(a.re_, b.re_);
    if (c == 0)
      c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Compact form such as `3/2`, `-i`, `1/2+3*i`.
  std::string to_string() const {
    if (im_ == 0)
      return detail::rational_string(re_);
    std::string imag;
    if (im_ == 1)
      imag = "i";
    else if (im_ == -1)
      imag = "-i";
    else
      imag = detail::rational_string(im_) + "*i";
    if (re_ == 0)
      return imag;
    std::string out = detail::rational_string(re_);
    if (im_ > 0)
      out += "+";
    return out + imag;
  }

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

inline std::ostream &operator<<(std::ostream &os, const GaussianRational &z) { return os << z.to_string(); }

/// Parses `p/q`, `i`, `-3/2*i`, `1/2+3*i` and similar compact forms.
inline GaussianRational parse_scalar(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ')
      s.push_back(c);
  if (s.empty())
    throw Error("malformed scalar: empty");
  // split at a +/- that is not the leading sign
  std::size_t split = std::string::npos;
  for (std::size_t k = 1; k < s.size(); ++k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/')
      split = k;
  auto imag_part = [](std::string part) -> mpq_class {
    if (part.empty() || part.back() != 'i')
      throw Error("malformed scalar: '" + part + "'");
    part.pop_back();
    if (!part.empty() && part.back() == '*')
      part.pop_back();
    if (part.empty() || part == "+")
      return 1;
    if (part == "-")
      return -1;
    return detail::parse_rational(part[0] == '+' ? part.substr(1) : part);
  };
  auto real_part = [](const std::string &part) {
    return detail::parse_rational(part[0] == '+' ? part.substr(1) : part);
  };
  if (split == std::string::npos) {
    if (s.back() == 'i')
      return {mpq_class(0), imag_part(s)};
    return {real_part(s), 0};
  }
  std::string a = s.substr(0, split), b = s.substr(split);
  if (b.back() != 'i')
    throw Error("malformed scalar: '" + s + "'");
  return {real_part(a), imag_part(b)};
}

} // namespace symctr
