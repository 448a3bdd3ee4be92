#pragma once

#include <edifice/rational.hpp>

#include <iosfwd>

namespace edifice {

/// Exact element a + b*sqrt(d) of a real quadratic field (d = 0 encodes a
/// plain rational, in which case b = 0).  d is kept square-free; mixing two
/// different irrationalities in one operation is an error.
class Scalar {
 public:
  Scalar() : a_(0), b_(0), d_(0) {}
  Scalar(const Rat& a) : a_(a), b_(0), d_(0) {}  // NOLINT(google-explicit-constructor)
  Scalar(long a) : a_(rat(a)), b_(0), d_(0) {}   // NOLINT(google-explicit-constructor)
  Scalar(const Rat& a, const Rat& b, unsigned long d);

  const Rat& rational_part() const { return a_; }
  const Rat& radical_part() const { return b_; }
  unsigned long radicand() const { return d_; }

  bool is_rational() const { return d_ == 0; }
  /// The value as a rational; throws unless is_rational().
  const Rat& rational() const;

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  /// Exact sign in {-1, 0, +1}, decided by comparing a^2 with b^2 d.
  int sign() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar l, const Scalar& r) { return l += r; }
  friend Scalar operator-(Scalar l, const Scalar& r) { return l -= r; }
  friend Scalar operator*(Scalar l, const Scalar& r) { return l *= r; }
  friend Scalar operator/(Scalar l, const Scalar& r) { return l /= r; }

  friend bool operator==(const Scalar& l, const Scalar& r) {
    return l.a_ == r.a_ && l.b_ == r.b_ && l.d_ == r.d_;
  }
  friend bool operator!=(const Scalar& l, const Scalar& r) { return !(l == r); }
  friend bool operator<(const Scalar& l, const Scalar& r) {
    return (l - r).sign() < 0;
  }
  friend bool operator<=(const Scalar& l, const Scalar& r) {
    return (l - r).sign() <= 0;
  }
  friend bool operator>(const Scalar& l, const Scalar& r) { return r < l; }
  friend bool operator>=(const Scalar& l, const Scalar& r) { return r <= l; }

  /// A positive rational q with q <= |value|; requires value != 0.  Used to
  /// size exact perturbation bounds.
  Rat abs_lower_bound() const;

  double approx() const;
  std::string to_string() const;

 private:
  void normalize();

  Rat a_, b_;
  unsigned long d_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

using SVec = std::vector<Scalar>;

}  // namespace edifice
