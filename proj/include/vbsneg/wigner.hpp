#pragma once

#include "vbsneg/half_int.hpp"
#include "vbsneg/sqrt_rational.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace vbsneg {

/// Factorial arguments beyond this are outside anything the VBS tensors can
/// produce (2*(4S+2) stays far below it for any spin handled here).
inline constexpr int kFactorialArgCap = 200;

/// Memo tables for factorials and the three symbol kinds. Reads may run
/// concurrently; writes are serialized. A hit is bit-identical to a fresh
/// computation because values are stored exactly.
class SymbolCache {
 public:
  using Key = std::array<int, 6>;

  static SymbolCache& global() {
    static SymbolCache cache;
    return cache;
  }

  const BigInt& factorial(int n) {
    if (n < 0) throw std::domain_error("factorial of negative argument");
    if (n > kFactorialArgCap)
      throw std::domain_error("factorial argument " + std::to_string(n) +
                              " exceeds cap " + std::to_string(kFactorialArgCap));
    {
      std::shared_lock lock(fact_mutex_);
      if (n < static_cast<int>(factorials_.size())) return factorials_[n];
    }
    std::unique_lock lock(fact_mutex_);
    while (static_cast<int>(factorials_.size()) <= n)
      factorials_.push_back(factorials_.back() * static_cast<int>(factorials_.size()));
    return factorials_[n];
  }

  template <typename Compute>
  SignedSqrtRational memoize(int table, const Key& key, Compute&& compute) {
    {
      std::shared_lock lock(memo_mutex_);
      auto it = memo_[table].find(key);
      if (it != memo_[table].end()) return it->second;
    }
    SignedSqrtRational value = compute();
    std::unique_lock lock(memo_mutex_);
    memo_[table].emplace(key, value);
    return value;
  }

 private:
  SymbolCache() : factorials_{BigInt(1)} {}

  std::shared_mutex fact_mutex_;
  std::vector<BigInt> factorials_;
  std::shared_mutex memo_mutex_;
  std::map<Key, SignedSqrtRational> memo_[3];
};

namespace detail {

inline bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
  if (!a.is_magnitude() || !b.is_magnitude() || !c.is_magnitude()) return false;
  if ((a + b + c).twice() % 2 != 0) return false;  // integer perimeter
  return (a + b - c).twice() >= 0 && (a - b + c).twice() >= 0 &&
         (-a + b + c).twice() >= 0;
}

/// (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!
inline BigRat delta_squared(HalfInt a, HalfInt b, HalfInt c, SymbolCache& cache) {
  auto f = [&](HalfInt x) -> const BigInt& { return cache.factorial(x.twice() / 2); };
  return BigRat(f(a + b - c) * f(a - b + c) * f(-a + b + c),
                cache.factorial((a + b + c).twice() / 2 + 1));
}

}  // namespace detail

/// Condon-Shortley Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M>, exact.
/// Invalid couplings give exact zero.
inline SignedSqrtRational clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2,
                                         HalfInt m2, HalfInt J, HalfInt M,
                                         SymbolCache& cache = SymbolCache::global()) {
  if (!j1.admits_projection(m1) || !j2.admits_projection(m2) ||
      !J.admits_projection(M))
    return SignedSqrtRational::zero();
  if ((m1 + m2) != M || !detail::triangle_ok(j1, j2, J))
    return SignedSqrtRational::zero();

  SymbolCache::Key key{j1.twice(), m1.twice(), j2.twice(),
                       m2.twice(), J.twice(),  M.twice()};
  return cache.memoize(0, key, [&] {
    auto f = [&](HalfInt x) -> const BigInt& { return cache.factorial(x.twice() / 2); };
    // Racah's closed form: sqrt-prefactor times an alternating rational sum.
    BigRat pref = detail::delta_squared(j1, j2, J, cache);
    pref *= BigRat(J.twice() + 1);
    pref *= BigRat(f(j1 + m1) * f(j1 - m1));
    pref *= BigRat(f(j2 + m2) * f(j2 - m2));
    pref *= BigRat(f(J + M) * f(J - M));

    const int kmin = std::max({0, -(J - j2 + m1).twice() / 2, -(J - j1 - m2).twice() / 2});
    const int kmax = std::min({(j1 + j2 - J).twice() / 2, (j1 - m1).twice() / 2,
                               (j2 + m2).twice() / 2});
    BigRat sum = 0;
    for (int k = kmin; k <= kmax; ++k) {
      BigInt den = cache.factorial(k);
      den *= f(j1 + j2 - J - HalfInt(k));
      den *= f(j1 - m1 - HalfInt(k));
      den *= f(j2 + m2 - HalfInt(k));
      den *= f(J - j2 + m1 + HalfInt(k));
      den *= f(J - j1 - m2 + HalfInt(k));
      sum += BigRat(phase(k), den);
    }
    return SignedSqrtRational::sqrt_of(sign_of(sum), sum * sum * pref);
  });
}

/// Wigner 6j symbol {a b c; d e f}, exact; zero when any triad fails.
inline SignedSqrtRational six_j(HalfInt a, HalfInt b, HalfInt c, HalfInt d,
                                HalfInt e, HalfInt f,
                                SymbolCache& cache = SymbolCache::global()) {
  if (!detail::triangle_ok(a, b, c) || !detail::triangle_ok(a, e, f) ||
      !detail::triangle_ok(d, b, f) || !detail::triangle_ok(d, e, c))
    return SignedSqrtRational::zero();

  SymbolCache::Key key{a.twice(), b.twice(), c.twice(),
                       d.twice(), e.twice(), f.twice()};
  return cache.memoize(1, key, [&] {
    auto fac = [&](int n) -> const BigInt& { return cache.factorial(n); };
    BigRat pref = detail::delta_squared(a, b, c, cache) *
                  detail::delta_squared(a, e, f, cache) *
                  detail::delta_squared(d, b, f, cache) *
                  detail::delta_squared(d, e, c, cache);

    const int t1 = (a + b + c).twice() / 2, t2 = (a + e + f).twice() / 2;
    const int t3 = (d + b + f).twice() / 2, t4 = (d + e + c).twice() / 2;
    const int p1 = (a + b + d + e).twice() / 2, p2 = (b + c + e + f).twice() / 2;
    const int p3 = (a + c + d + f).twice() / 2;
    BigRat sum = 0;
    for (int k = std::max({t1, t2, t3, t4}); k <= std::min({p1, p2, p3}); ++k) {
      BigInt den = fac(k - t1) * fac(k - t2) * fac(k - t3) * fac(k - t4);
      den *= fac(p1 - k) * fac(p2 - k) * fac(p3 - k);
      sum += BigRat(phase(k) * fac(k + 1), den);
    }
    return SignedSqrtRational::sqrt_of(sign_of(sum), sum * sum * pref);
  });
}

/// F-matrix of the recoupling move:
///   F^{J1 J2 J3 J4}_{N J} = (-1)^{J1 - 2 J3 - J4 + N - J} (2J+1) {J1 J2 N; J4 J3 J}.
inline SignedSqrtRational f_matrix(HalfInt J1, HalfInt J2, HalfInt J3, HalfInt J4,
                                   HalfInt N, HalfInt J,
                                   SymbolCache& cache = SymbolCache::global()) {
  SignedSqrtRational sj = six_j(J1, J2, N, J4, J3, J, cache);
  if (sj.is_zero()) return sj;
  // The exponent is integral whenever the 6j triads hold.
  HalfInt e = J1 - J3 - J3 - J4 + N - J;
  return sj.times_rational(BigRat(phase(e) * (J.twice() + 1)));
}

/// Exact orthogonality of the CG family over (j1, j2):
///   SUM_{m1 m2} C^{J m}_{j1 m1 j2 m2} C^{J' m'}_{j1 m1 j2 m2} = delta delta.
inline bool cg_orthogonality_check(HalfInt j1, HalfInt j2,
                                   SymbolCache& cache = SymbolCache::global()) {
  if (!j1.is_magnitude() || !j2.is_magnitude()) return false;
  for (int tJ = (j1 - j2).twice() < 0 ? (j2 - j1).twice() : (j1 - j2).twice();
       tJ <= (j1 + j2).twice(); tJ += 2) {
    HalfInt J = HalfInt::from_twice(tJ);
    for (int tJp = tJ; tJp <= (j1 + j2).twice(); tJp += 2) {
      HalfInt Jp = HalfInt::from_twice(tJp);
      for (int tm = -tJ; tm <= tJ; tm += 2) {
        HalfInt m = HalfInt::from_twice(tm);
        if (!Jp.admits_projection(m)) continue;  // m != m' terms vanish per-term
        SqrtRationalSum sum;
        for (int tm1 = -j1.twice(); tm1 <= j1.twice(); tm1 += 2) {
          HalfInt m1 = HalfInt::from_twice(tm1);
          HalfInt m2 = m - m1;
          sum.add_product(clebsch_gordan(j1, m1, j2, m2, J, m, cache),
                          clebsch_gordan(j1, m1, j2, m2, Jp, m, cache));
        }
        if (!sum.equals_rational(J == Jp ? 1 : 0)) return false;
      }
    }
  }
  return true;
}

}  // namespace vbsneg
