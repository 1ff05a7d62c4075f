#include "expstar/fps/gauss_rational.hpp"

#include <cctype>
#include <stdexcept>

namespace expstar::fps {

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

void GaussRational::add_product(const GaussRational& a, const GaussRational& b) {
  thread_local mpq_class t;
  const bool a_real = sgn(a.im_) == 0, b_real = sgn(b.im_) == 0;
  mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.re_.get_mpq_t());
  re_ += t;
  if (a_real && b_real) return;
  if (!a_real && !b_real) {
    mpq_mul(t.get_mpq_t(), a.im_.get_mpq_t(), b.im_.get_mpq_t());
    re_ -= t;
  }
  if (!b_real) {
    mpq_mul(t.get_mpq_t(), a.re_.get_mpq_t(), b.im_.get_mpq_t());
    im_ += t;
  }
  if (!a_real) {
    mpq_mul(t.get_mpq_t(), a.im_.get_mpq_t(), b.re_.get_mpq_t());
    im_ += t;
  }
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussRational: division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const mpq_class den = o.norm_sq();
  *this *= o.conj();
  re_ /= den;
  im_ /= den;
  return *this;
}

std::string GaussRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "*i";
  }
  if (sgn(re_) == 0) return imag;
  if (imag.front() == '-') return re_.get_str() + " - " + imag.substr(1);
  return re_.get_str() + " + " + imag;
}

GaussRational i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return GaussRational(1);
    case 1: return GaussRational::i();
    case 2: return GaussRational(-1);
    default: return -GaussRational::i();
  }
}

mpq_class parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty rational");
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  std::string body = s.substr(pos);
  if (body.empty()) throw std::invalid_argument("malformed rational '" + text + "'");
  auto all_digits = [](const std::string& d) {
    if (d.empty()) return false;
    for (char c : d) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  mpq_class value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed rational '" + text + "'");
    }
    mpz_class d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    value = mpq_class(mpz_class(num, 10), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string whole = body.substr(0, dot);
    std::string frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw std::invalid_argument("malformed decimal '" + text + "'");
    }
    mpz_class scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    mpz_class digits(whole + frac, 10);
    value = mpq_class(digits, scale);
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed rational '" + text + "'");
    value = mpq_class(mpz_class(body, 10));
  }
  value.canonicalize();
  return negative ? mpq_class(-value) : value;
}

}  // namespace expstar::fps
