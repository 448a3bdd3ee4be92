#include <edifice/scalar.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

namespace edifice {

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(Int(s));
    }
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    return rat(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
}

std::string rat_to_string(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::pair<Int, Int> squarefree_split(const Int& n) {
  if (n < 0) throw std::invalid_argument("squarefree_split of negative value");
  Int square = 1, rest = n;
  if (n <= 1) return {square, rest};
  const long trial_cap = 2'000'000;  // plenty for desk-scale radicands
  for (Int p = 2; p * p <= rest && p <= trial_cap; p == 2 ? p = 3 : p += 2) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      square *= p;
    }
  }
  // rest may still be a perfect square of a prime above the trial bound.
  Int r = sqrt(rest);
  if (r * r == rest && rest > 1) {
    square *= r;
    rest = 1;
  }
  return {square, rest};
}

bool rational_root(const Rat& q, unsigned long s, Rat& root) {
  if (s == 0) throw std::invalid_argument("0-th root");
  if (q == 0) {
    root = 0;
    return true;
  }
  if (q < 0 && s % 2 == 0) return false;
  Int num = q.get_num(), den = q.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  Int rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), s) == 0) return false;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), s) == 0) return false;
  if (neg) rn = -rn;
  root = rat(rn, rd);
  return true;
}

Rat simplest_between(const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_between: empty interval");
  // Continued-fraction descent: take the smallest integer > lo if it fits,
  // otherwise recurse on the reciprocal fractional parts.
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
  if (Rat(fl + 1) < hi) return Rat(fl + 1);
  Rat f(fl);
  Rat lo_frac = lo - f, hi_frac = hi - f;  // 0 <= lo_frac < hi_frac <= 1
  if (lo_frac == 0) {
    // interval (fl, fl + hi_frac): fl + 1/k with the smallest workable k
    Int k = hi_frac.get_den() / hi_frac.get_num() + 1;
    return f + rat(Int(1), k);
  }
  return f + 1 / simplest_between(1 / hi_frac, 1 / lo_frac);
}

Scalar::Scalar(const Rat& a, const Rat& b, unsigned long d) : a_(a), b_(b), d_(d) {
  normalize();
}

void Scalar::normalize() {
  if (b_ == 0) {
    d_ = 0;
    return;
  }
  if (d_ == 0) throw std::invalid_argument("radical part with d = 0");
  auto [sq, rest] = squarefree_split(Int(d_));
  if (rest <= 1) {  // d was a perfect square: the value is rational
    a_ += b_ * Rat(sq);
    b_ = 0;
    d_ = 0;
    return;
  }
  if (sq > 1) {
    b_ *= Rat(sq);
    d_ = static_cast<unsigned long>(rest.get_ui());
  }
}

const Rat& Scalar::rational() const {
  if (!is_rational()) throw std::domain_error("scalar is irrational");
  return a_;
}

int Scalar::sign() const {
  if (b_ == 0) return sgn(a_);
  if (a_ == 0) return sgn(b_);
  int sa = sgn(a_), sb = sgn(b_);
  if (sa == sb) return sa;
  // a and b*sqrt(d) have opposite signs: compare a^2 against b^2 d.
  int cmp = ::cmp(a_ * a_, b_ * b_ * Rat(static_cast<long>(d_)));
  if (cmp == 0) throw std::logic_error("sqrt(d) rational despite square-free d");
  return cmp > 0 ? sa : sb;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (d_ != 0 && o.d_ != 0 && d_ != o.d_)
    throw std::invalid_argument("mixing different quadratic fields");
  a_ += o.a_;
  b_ += o.b_;
  if (d_ == 0) d_ = o.d_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (d_ != 0 && o.d_ != 0 && d_ != o.d_)
    throw std::invalid_argument("mixing different quadratic fields");
  unsigned long d = d_ != 0 ? d_ : o.d_;
  Rat rd(static_cast<long>(d));
  Rat a = a_ * o.a_ + b_ * o.b_ * rd;
  Rat b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::invalid_argument("division by zero scalar");
  if (o.b_ == 0) {
    a_ /= o.a_;
    b_ /= o.a_;
    normalize();
    return *this;
  }
  // multiply by the conjugate: 1/(a + b sqrt d) = (a - b sqrt d)/(a^2 - b^2 d)
  Rat rd(static_cast<long>(o.d_));
  Rat norm = o.a_ * o.a_ - o.b_ * o.b_ * rd;
  Scalar conj(o.a_ / norm, -o.b_ / norm, o.d_);
  return *this *= conj;
}

Rat Scalar::abs_lower_bound() const {
  if (is_zero()) throw std::domain_error("abs_lower_bound of zero");
  if (b_ == 0) return abs(a_);
  if (a_ == 0) {
    // |b| sqrt(d) >= |b| since d >= 2
    return abs(b_);
  }
  // |a + b sqrt d| = |a^2 - b^2 d| / |a - b sqrt d| and
  // |a - b sqrt d| <= |a| + |b| (floor(sqrt d) + 1).
  Rat num = abs(a_ * a_ - b_ * b_ * Rat(static_cast<long>(d_)));
  Int isq = sqrt(Int(d_));
  Rat den = abs(a_) + abs(b_) * Rat(isq + 1);
  return num / den;
}

double Scalar::approx() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

std::string Scalar::to_string() const {
  if (b_ == 0) return rat_to_string(a_);
  std::ostringstream os;
  if (a_ != 0) os << a_;
  if (b_ > 0 && a_ != 0) os << "+";
  if (b_ == -1)
    os << "-";
  else if (b_ != 1)
    os << b_ << "*";
  os << "sqrt" << d_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

}  // namespace edifice
