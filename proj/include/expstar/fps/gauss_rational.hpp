#pragma once

#include <complex>
#include <gmpxx.h>
#include <string>

namespace expstar::fps {

/// Exact element re + i*im of Q(i). Both parts are kept canonical by GMP,
/// so structural equality is value equality.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long value) : re_(value) {}  // NOLINT(implicit)
  GaussRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRational i() { return {mpq_class(0), mpq_class(1)}; }
  static GaussRational fraction(long num, long den) { return {mpq_class(num, den)}; }

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  /// |z|^2 = re^2 + im^2, exact.
  mpq_class norm_sq() const { return re_ * re_ + im_ * im_; }

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);
  /// *this += a * b without temporaries for the product.
  void add_product(const GaussRational& a, const GaussRational& b);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// "3/2", "-i", "1/2 - 3/4*i".
  std::string str() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// i^k for integer k (any sign).
GaussRational i_power(int k);

/// Parses "p", "p/q" or a finite decimal "1.25" into an exact rational.
/// Throws std::invalid_argument on malformed text.
mpq_class parse_rational(const std::string& text);

}  // namespace expstar::fps
