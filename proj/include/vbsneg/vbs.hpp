#pragma once

#include "vbsneg/chain.hpp"
#include "vbsneg/wigner.hpp"

#include <cmath>
#include <vector>

namespace vbsneg {

/// Transfer-matrix eigenvalues lambda_j, j = 0..S, as exact rationals:
///   lambda_j = (-1)^j (S!)^2 (S+1) / ((S-j)! (S+j+1)!),  lambda_0 = 1.
struct TransferSpectrum {
  int S;
  std::vector<BigRat> lambda;  // index j
};

inline TransferSpectrum lambda_spectrum(HalfInt S,
                                        SymbolCache& cache = SymbolCache::global()) {
  if (!S.is_integer() || S.twice() < 2)
    throw std::invalid_argument("lambda_spectrum needs a positive integer spin");
  const int s = S.twice() / 2;
  TransferSpectrum out{s, {}};
  const BigInt sf = cache.factorial(s);
  for (int j = 0; j <= s; ++j) {
    BigRat v(sf * sf * (s + 1), cache.factorial(s - j) * cache.factorial(s + j + 1));
    out.lambda.push_back(phase(j) > 0 ? v : -v);
  }
  return out;
}

/// Exact lambda_j^L, converted to double only at the end; powers of exact
/// rationals avoid compounding rounding in long chains (and underflow simply
/// rounds to zero).
inline double lambda_power(const TransferSpectrum& ts, int j, int L) {
  BigRat p = 1;
  BigRat base = ts.lambda[j];
  for (int k = 0; k < L; ++k) p *= base;
  return to_double(p);
}

/// Site tensor g[a, b, m] of the VBS matrix product state,
///   g = sqrt((S+1)/(2S+1)) * C^{S m}_{S/2 a, S/2 -b} * (-1)^{b + S/2},
/// indexed by ia = a + S/2, ib = b + S/2, im = m + S (all in 0-based order).
/// The sqrt((S+1)/(2S+1)) factor normalizes the transfer matrix to lambda_0=1;
/// the phase is the integer-valued reading of (-1)^b (global-phase gauge).
struct MpsTensor {
  int S;
  int aux_dim;   // S+1
  int phys_dim;  // 2S+1
  std::vector<double> data;  // [ia][ib][im]

  double at(int ia, int ib, int im) const {
    return data[(ia * aux_dim + ib) * phys_dim + im];
  }
};

inline MpsTensor mps_tensor(HalfInt S, SymbolCache& cache = SymbolCache::global()) {
  const int s = S.twice() / 2;
  MpsTensor g{s, s + 1, 2 * s + 1, {}};
  g.data.assign(static_cast<size_t>(g.aux_dim) * g.aux_dim * g.phys_dim, 0.0);
  const HalfInt h = HalfInt::from_twice(s);  // S/2
  const double norm = std::sqrt(double(s + 1) / double(2 * s + 1));
  for (int ia = 0; ia < g.aux_dim; ++ia) {
    HalfInt a = HalfInt::from_twice(2 * ia - s);
    for (int ib = 0; ib < g.aux_dim; ++ib) {
      HalfInt b = HalfInt::from_twice(2 * ib - s);
      for (int im = 0; im < g.phys_dim; ++im) {
        HalfInt m = HalfInt(im - s);
        double c = clebsch_gordan(h, a, h, -b, S, m, cache).to_double();
        if (c != 0.0)
          g.data[(ia * g.aux_dim + ib) * g.phys_dim + im] = norm * c * phase(b + h);
      }
    }
  }
  return g;
}

/// Dense transfer matrix on the doubled auxiliary space,
///   G[(a,c),(b,d)] = sum_m g[a,b,m] g[c,d,m],
/// with row index ia*(S+1)+ic and column ib*(S+1)+id (a,c,b,d ascending).
/// Its eigenvalue multiset is {lambda_j with multiplicity 2j+1}.
struct DenseSquare {
  int n = 0;
  std::vector<double> a;  // row-major n*n
  double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

inline DenseSquare transfer_matrix(HalfInt S, SymbolCache& cache = SymbolCache::global()) {
  MpsTensor g = mps_tensor(S, cache);
  const int na = g.aux_dim;
  DenseSquare G{na * na, std::vector<double>(size_t(na) * na * na * na, 0.0)};
  for (int ia = 0; ia < na; ++ia)
    for (int ic = 0; ic < na; ++ic)
      for (int ib = 0; ib < na; ++ib)
        for (int id = 0; id < na; ++id) {
          double s = 0.0;
          for (int im = 0; im < g.phys_dim; ++im)
            s += g.at(ia, ib, im) * g.at(ic, id, im);
          G.at(ia * na + ic, ib * na + id) = s;
        }
  return G;
}

/// Periodic-chain normalization N_PBC = sum_j (2j+1) lambda_j^{L_T} = tr G^{L_T}.
inline double pbc_normalization(HalfInt S, int LT,
                                SymbolCache& cache = SymbolCache::global()) {
  if (LT < 2) throw std::invalid_argument("pbc_normalization needs L_T >= 2");
  TransferSpectrum ts = lambda_spectrum(S, cache);
  BigRat sum = 0;
  for (int j = 0; j <= ts.S; ++j) {
    BigRat p = 1;
    for (int k = 0; k < LT; ++k) p *= ts.lambda[j];
    sum += BigRat(2 * j + 1) * p;
  }
  return to_double(sum);
}

/// Weight of the total-spin-N channel of an L-site block,
///   eta_N^{(L)} = sum_j (2j+1) (-1)^{N+j+S} lambda_j^L {S/2 S/2 j; S/2 S/2 N}.
/// Kept as an exact sqrt-rational sum so exact zeros (e.g. N < S at L = 1)
/// are decidable; converted to double at the boundary.
struct EtaValue {
  double value;
  bool exactly_zero;
};

inline EtaValue eta_channel(HalfInt S, int N, int L,
                            SymbolCache& cache = SymbolCache::global()) {
  const int s = S.twice() / 2;
  if (N < 0 || N > s) throw std::invalid_argument("eta: N outside [0, S]");
  if (L < 1) throw std::invalid_argument("eta: L must be >= 1");
  const HalfInt h = HalfInt::from_twice(s);
  TransferSpectrum ts = lambda_spectrum(S, cache);
  SqrtRationalSum sum;
  for (int j = 0; j <= s; ++j) {
    BigRat p = 1;
    for (int k = 0; k < L; ++k) p *= ts.lambda[j];
    SignedSqrtRational term = six_j(h, h, HalfInt(j), h, h, HalfInt(N), cache)
                                  .times_rational(BigRat(2 * j + 1) * p * phase(N + j + s));
    sum.add(term);
  }
  return {sum.to_double(), sum.is_zero()};
}

inline double eta(HalfInt S, int N, int L, SymbolCache& cache = SymbolCache::global()) {
  return eta_channel(S, N, L, cache).value;
}

/// Appendix-C form of the same weight, sum_k lambda_k^L F_{N,k}; agreement of
/// the two forms is a test, not an assumption.
inline double eta_f_form(HalfInt S, int N, int L,
                         SymbolCache& cache = SymbolCache::global()) {
  const int s = S.twice() / 2;
  const HalfInt h = HalfInt::from_twice(s);
  TransferSpectrum ts = lambda_spectrum(S, cache);
  double sum = 0.0;
  for (int k = 0; k <= s; ++k)
    sum += lambda_power(ts, k, L) *
           f_matrix(h, h, h, h, HalfInt(N), HalfInt(k), cache).to_double();
  return sum;
}

/// L -> infinity limit of eta_N^{(L)}: only the j = 0 channel survives.
inline double eta_limit(HalfInt S, int N, SymbolCache& cache = SymbolCache::global()) {
  const int s = S.twice() / 2;
  const HalfInt h = HalfInt::from_twice(s);
  return six_j(h, h, HalfInt(0), h, h, HalfInt(N), cache)
      .times_rational(BigRat(phase(N + s)))
      .to_double();
}

}  // namespace vbsneg
