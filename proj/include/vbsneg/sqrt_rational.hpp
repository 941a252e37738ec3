#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vbsneg {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Rational -> double that survives numerators/denominators far outside the
/// double range (factorials get large fast).
inline double to_double(const BigRat& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (num == 0) return 0.0;
  long nbits = static_cast<long>(boost::multiprecision::msb(boost::multiprecision::abs(num)));
  long dbits = static_cast<long>(boost::multiprecision::msb(den));
  long shift = std::max(nbits, dbits) - 960;  // keep both within ~2^1000
  if (shift <= 0) return static_cast<double>(num) / static_cast<double>(den);
  const BigInt ns = num >> shift;
  const BigInt ds = den >> shift;
  if (ds == 0) return num < 0 ? -HUGE_VAL : HUGE_VAL;
  return static_cast<double>(ns) / static_cast<double>(ds);
}

inline int sign_of(const BigRat& r) {
  if (r == 0) return 0;
  return r < 0 ? -1 : 1;
}

/// Exact number of the form sign * sqrt(p/q), p/q >= 0 in lowest terms.
/// Closed under product and quotient; sums generally leave the form (see
/// SqrtRationalSum). Every Clebsch-Gordan/6j/F value fits here.
class SignedSqrtRational {
 public:
  SignedSqrtRational() : sign_(0), radicand_(0) {}

  static SignedSqrtRational zero() { return SignedSqrtRational(); }

  /// sign * sqrt(radicand)
  static SignedSqrtRational sqrt_of(int sign, BigRat radicand) {
    if (radicand < 0) throw std::domain_error("negative radicand");
    SignedSqrtRational v;
    v.sign_ = radicand == 0 ? 0 : (sign < 0 ? -1 : (sign > 0 ? 1 : 0));
    v.radicand_ = v.sign_ == 0 ? BigRat(0) : std::move(radicand);
    return v;
  }

  /// Embeds an ordinary rational: value = v, stored as sgn(v)*sqrt(v^2).
  static SignedSqrtRational from_rational(const BigRat& v) {
    return sqrt_of(sign_of(v), v * v);
  }

  int sign() const { return sign_; }
  const BigRat& radicand() const { return radicand_; }
  bool is_zero() const { return sign_ == 0; }

  double to_double() const {
    return sign_ * std::sqrt(vbsneg::to_double(radicand_));
  }

  SignedSqrtRational operator-() const {
    SignedSqrtRational v = *this;
    v.sign_ = -v.sign_;
    return v;
  }

  friend SignedSqrtRational operator*(const SignedSqrtRational& a,
                                      const SignedSqrtRational& b) {
    return sqrt_of(a.sign_ * b.sign_, a.radicand_ * b.radicand_);
  }

  friend SignedSqrtRational operator/(const SignedSqrtRational& a,
                                      const SignedSqrtRational& b) {
    if (b.sign_ == 0) throw std::domain_error("division by zero");
    return sqrt_of(a.sign_ * b.sign_, a.radicand_ / b.radicand_);
  }

  SignedSqrtRational times_rational(const BigRat& r) const {
    return sqrt_of(sign_ * sign_of(r), radicand_ * r * r);
  }

  friend bool operator==(const SignedSqrtRational& a,
                         const SignedSqrtRational& b) {
    return a.sign_ == b.sign_ && a.radicand_ == b.radicand_;
  }

 private:
  int sign_;
  BigRat radicand_;
};

namespace detail {

/// Is r the square of a rational? If so store its exact root.
inline bool exact_sqrt(const BigRat& r, BigRat* root) {
  if (r < 0) return false;
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const BigInt sn = boost::multiprecision::sqrt(num);
  const BigInt sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return false;
  *root = BigRat(sn, sd);
  return true;
}

}  // namespace detail

/// Exact accumulator for sums of SignedSqrtRational terms. Terms are grouped
/// by square class (two radicands share a class iff their ratio is a rational
/// square), each class keeping an exact rational coefficient:
///   sum = SUM_s coeff_s * sqrt(rep_s).
/// Zero- and equality-tests are then exact, which is what the orthogonality
/// and contraction-oracle checks need.
class SqrtRationalSum {
 public:
  void add(const SignedSqrtRational& term) {
    if (term.is_zero()) return;
    for (auto& [rep, coeff] : classes_) {
      BigRat root;
      if (detail::exact_sqrt(term.radicand() / rep, &root)) {
        coeff += term.sign() * root;
        return;
      }
    }
    classes_.emplace_back(term.radicand(), BigRat(term.sign()));
  }

  void add_product(const SignedSqrtRational& a, const SignedSqrtRational& b) {
    add(a * b);
  }

  bool is_zero() const {
    for (const auto& [rep, coeff] : classes_)
      if (coeff != 0) return false;
    return true;
  }

  bool equals(const SignedSqrtRational& v) const {
    SqrtRationalSum diff = *this;
    diff.add(-v);
    return diff.is_zero();
  }

  bool equals_rational(const BigRat& v) const {
    return equals(SignedSqrtRational::from_rational(v));
  }

  double to_double() const {
    double s = 0.0;
    for (const auto& [rep, coeff] : classes_)
      s += vbsneg::to_double(coeff) * std::sqrt(vbsneg::to_double(rep));
    return s;
  }

 private:
  std::vector<std::pair<BigRat, BigRat>> classes_;
};

}  // namespace vbsneg
