#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace vbsneg {

/// Angular-momentum label stored as twice its value, so spin-1/2 quantities
/// are exact integers. Covers both magnitudes (j >= 0) and projections m.
class HalfInt {
 public:
  constexpr HalfInt() : twice_(0) {}
  constexpr HalfInt(int whole) : twice_(2 * whole) {}  // NOLINT: implicit by design

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr bool is_magnitude() const { return twice_ >= 0; }
  constexpr double to_double() const { return 0.5 * twice_; }

  /// Valid (j, m) pairing: |m| <= j and j - m integral.
  constexpr bool admits_projection(HalfInt m) const {
    return std::abs(m.twice_) <= twice_ && (twice_ - m.twice_) % 2 == 0;
  }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
    return from_twice(a.twice_ + b.twice_);
  }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
    return from_twice(a.twice_ - b.twice_);
  }
  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  /// Parses "3/2", "-1/2", "2". Only /2 denominators are representable.
  static HalfInt parse(const std::string& text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        size_t used = 0;
        int whole = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return HalfInt(whole);
      }
      size_t used = 0;
      int num = std::stoi(text.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(text);
      int den = std::stoi(text.substr(slash + 1), &used);
      if (used != text.size() - slash - 1 || den != 2)
        throw std::invalid_argument(text);
      return from_twice(num);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a half-integer: '" + text + "'");
    }
  }

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  int twice_;
};

/// (-1)^x for an integer-valued exponent; half-odd exponents are a usage bug.
inline int phase(HalfInt x) {
  if (!x.is_integer())
    throw std::domain_error("phase(-1)^x needs integer x, got " + x.str());
  return (x.twice() / 2) % 2 == 0 ? 1 : -1;
}

inline int phase(int x) { return x % 2 == 0 ? 1 : -1; }

}  // namespace vbsneg
