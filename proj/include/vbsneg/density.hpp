#pragma once

#include "vbsneg/chain.hpp"
#include "vbsneg/sectors.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

namespace vbsneg {

namespace detail {

/// Channels N in [0, S] whose weight eta_N^{(L)} is algebraically nonzero
/// (a single site carries only N = S; longer blocks carry all channels).
inline std::vector<int> block_channels(HalfInt S, int L, SymbolCache& cache) {
  std::vector<int> out;
  for (int N = 0; N <= S.twice() / 2; ++N)
    if (!eta_channel(S, N, L, cache).exactly_zero) out.push_back(N);
  return out;
}

inline std::vector<std::pair<int, int>> sector_pairs(
    int R, const std::vector<int>& chA, const std::vector<int>& chB) {
  std::vector<std::pair<int, int>> pairs;
  for (int na : chA)
    for (int nb : chB)
      if (std::abs(na - nb) <= R && R <= na + nb) pairs.emplace_back(na, nb);
  return pairs;
}

/// {n j p; S/2 S/2 S/2} on integer labels, all in [0, S].
struct SixJTripleTable {
  int S;
  std::vector<double> v;
  SixJTripleTable(HalfInt Sh, SymbolCache& cache) : S(Sh.twice() / 2) {
    const HalfInt h = HalfInt::from_twice(S);
    v.assign(static_cast<size_t>(S + 1) * (S + 1) * (S + 1), 0.0);
    for (int n = 0; n <= S; ++n)
      for (int j = 0; j <= S; ++j)
        for (int p = 0; p <= S; ++p)
          v[(static_cast<size_t>(n) * (S + 1) + j) * (S + 1) + p] =
              six_j(HalfInt(n), HalfInt(j), HalfInt(p), h, h, h, cache).to_double();
  }
  double at(int n, int j, int p) const {
    return v[(static_cast<size_t>(n) * (S + 1) + j) * (S + 1) + p];
  }
};

inline double sixj_int(int a, int b, int c, int d, int e, int f, SymbolCache& cache) {
  return six_j(HalfInt(a), HalfInt(b), HalfInt(c), HalfInt(d), HalfInt(e),
               HalfInt(f), cache).to_double();
}

inline std::vector<double> eta_table(HalfInt S, int L, SymbolCache& cache) {
  std::vector<double> out;
  for (int N = 0; N <= S.twice() / 2; ++N)
    out.push_back(std::max(eta(S, N, L, cache), 0.0));
  return out;
}

inline std::vector<double> lambda_powers(const TransferSpectrum& ts, int L) {
  std::vector<double> out;
  for (int j = 0; j <= ts.S; ++j) out.push_back(lambda_power(ts, j, L));
  return out;
}

}  // namespace detail

/// Sector blocks of rho_AB (transposed = false) or rho_AB^{T_A} (true) for a
/// periodic chain, assembled from the sextuple-6j sum. The two differ only by
/// the (-1)^{j1+j2} phase. Normalized by N_PBC; the untransposed assembly then
/// has unit trace and the transposed one preserves it.
inline SectorMap gamma_tensor(const ChainSpec& spec, bool transposed,
                              SymbolCache& cache = SymbolCache::global()) {
  spec.validate();
  if (spec.boundary != Boundary::Periodic)
    throw std::invalid_argument("gamma_tensor needs periodic boundary");
  const int S = spec.spin();
  const TransferSpectrum ts = lambda_spectrum(spec.S, cache);
  const auto etaA = detail::eta_table(spec.S, spec.LA, cache);
  const auto etaB = detail::eta_table(spec.S, spec.LB, cache);
  const auto lam13 = detail::lambda_powers(ts, spec.L1 + spec.L3);
  const auto lam2 = detail::lambda_powers(ts, spec.L2);
  const auto chA = detail::block_channels(spec.S, spec.LA, cache);
  const auto chB = detail::block_channels(spec.S, spec.LB, cache);
  const detail::SixJTripleTable w6(spec.S, cache);
  const double norm = pbc_normalization(spec.S, spec.total_length(), cache);

  SectorMap out;
  for (int R = 0; R <= 2 * S; ++R) {
    auto pairs = detail::sector_pairs(R, chA, chB);
    if (pairs.empty()) continue;
    SectorMatrix sec{R, pairs, DenseSquare{static_cast<int>(pairs.size()), {}}};
    sec.m.a.assign(pairs.size() * pairs.size(), 0.0);
    for (size_t row = 0; row < pairs.size(); ++row) {
      auto [n1, n2] = pairs[row];
      for (size_t col = 0; col < pairs.size(); ++col) {
        auto [n3, n4] = pairs[col];
        const double pref =
            phase(n1 + n2) *
            std::sqrt((2 * n1 + 1) * etaA[n1] * (2 * n2 + 1) * etaB[n2] *
                      (2 * n3 + 1) * etaA[n3] * (2 * n4 + 1) * etaB[n4]);
        double sum = 0.0;
        for (int p = 0; p <= S; ++p)
          for (int q = 0; q <= S; ++q) {
            const double dpq = (2 * p + 1) * (2 * q + 1);
            for (int j1 = 0; j1 <= S; ++j1) {
              const double f1 = w6.at(n1, j1, p) * w6.at(n2, j1, q) *
                                detail::sixj_int(q, p, R, n1, n2, j1, cache);
              if (f1 == 0.0) continue;
              for (int j2 = 0; j2 <= S; ++j2) {
                const double f2 = w6.at(n3, j2, p) * w6.at(n4, j2, q) *
                                  detail::sixj_int(q, p, R, n3, n4, j2, cache);
                if (f2 == 0.0) continue;
                const int ph = transposed ? phase(p + q) : phase(p + q + j1 + j2);
                sum += dpq * (2 * j1 + 1) * (2 * j2 + 1) * ph * lam13[j1] *
                       lam2[j2] * f1 * f2;
              }
            }
          }
        sec.m.at(static_cast<int>(row), static_cast<int>(col)) = pref * sum / norm;
      }
    }
    out.emplace(R, std::move(sec));
  }
  return out;
}

/// Per-(j2, R) pieces of the spin-S/2-edge density matrix,
///   Y = lambda_{j2}^{L2} (-1)^{n1+n3+R+j2} (2 j2+1)
///       {n1 n3 j2; h h h}{n2 n4 j2; h h h}{n2 n4 j2; n3 n1 R} * sqrt-prefactors,
/// normalized so the j2-summed assembly has unit trace (the raw trace is S+1).
/// The partial transpose drops the (-1)^{j2} phase, mirroring Gamma -> Gamma~.
inline std::map<std::pair<int, int>, SectorMatrix> y_tensor(
    const ChainSpec& spec, bool transposed = false,
    SymbolCache& cache = SymbolCache::global()) {
  spec.validate();
  if (spec.boundary != Boundary::SpinHalfEdges)
    throw std::invalid_argument("y_tensor needs spin-S/2 edge boundary");
  // Outer gaps L1, L3 sit between a traced edge spin and a block; a traced
  // edge passes only the singlet channel (lambda_0 = 1), so they drop out
  // of rho_AB entirely and the tensor depends on (LA, L2, LB) alone.
  const int S = spec.spin();
  const TransferSpectrum ts = lambda_spectrum(spec.S, cache);
  const auto etaA = detail::eta_table(spec.S, spec.LA, cache);
  const auto etaB = detail::eta_table(spec.S, spec.LB, cache);
  const auto lam2 = detail::lambda_powers(ts, spec.L2);
  const auto chA = detail::block_channels(spec.S, spec.LA, cache);
  const auto chB = detail::block_channels(spec.S, spec.LB, cache);
  const detail::SixJTripleTable w6(spec.S, cache);

  std::map<std::pair<int, int>, SectorMatrix> out;
  for (int R = 0; R <= 2 * S; ++R) {
    auto pairs = detail::sector_pairs(R, chA, chB);
    if (pairs.empty()) continue;
    for (int j2 = 0; j2 <= S; ++j2) {
      SectorMatrix sec{R, pairs, DenseSquare{static_cast<int>(pairs.size()), {}}};
      sec.m.a.assign(pairs.size() * pairs.size(), 0.0);
      bool any = false;
      for (size_t row = 0; row < pairs.size(); ++row) {
        auto [n1, n2] = pairs[row];
        for (size_t col = 0; col < pairs.size(); ++col) {
          auto [n3, n4] = pairs[col];
          const int ph = transposed ? phase(n1 + n3 + R) : phase(n1 + n3 + R + j2);
          const double v =
              lam2[j2] * ph * (2 * j2 + 1) * w6.at(n1, n3, j2) * w6.at(n2, n4, j2) *
              detail::sixj_int(n2, n4, j2, n3, n1, R, cache) *
              std::sqrt((2 * n1 + 1) * etaA[n1] * (2 * n2 + 1) * etaB[n2] *
                        (2 * n3 + 1) * etaA[n3] * (2 * n4 + 1) * etaB[n4]) /
              (S + 1);
          if (v != 0.0) any = true;
          sec.m.at(static_cast<int>(row), static_cast<int>(col)) = v;
        }
      }
      if (any) out.emplace(std::make_pair(j2, R), std::move(sec));
    }
  }
  return out;
}

/// y_tensor summed over the gap channel j2: the sector blocks of rho_AB (or
/// its partial transpose) for spin-S/2 edges.
inline SectorMap y_assembled(const ChainSpec& spec, bool transposed = false,
                             SymbolCache& cache = SymbolCache::global()) {
  SectorMap out;
  for (auto& [key, sec] : y_tensor(spec, transposed, cache)) {
    auto [j2, R] = key;
    auto it = out.find(R);
    if (it == out.end()) {
      out.emplace(R, sec);
    } else {
      for (size_t i = 0; i < sec.m.a.size(); ++i) it->second.m.a[i] += sec.m.a[i];
    }
  }
  return out;
}

/// The general-boundary X tensor, with prefactors as printed: four F-symbols,
/// per-region channel weights lambda_{j_p}^{L_p}, and sqrt((2n_k+1) eta_k)/(S+1)
/// per block leg. Boundary conditions enter only through how it is contracted.
class XTensor {
 public:
  XTensor(const ChainSpec& spec, SymbolCache& cache = SymbolCache::global())
      : S_(spec.spin()), n_(S_ + 1) {
    spec.validate();
    const HalfInt h = HalfInt::from_twice(S_);
    const TransferSpectrum ts = lambda_spectrum(spec.S, cache);
    const auto etaA = detail::eta_table(spec.S, spec.LA, cache);
    const auto etaB = detail::eta_table(spec.S, spec.LB, cache);
    const std::array<std::vector<double>, 3> lamp = {
        detail::lambda_powers(ts, spec.L1), detail::lambda_powers(ts, spec.L2),
        detail::lambda_powers(ts, spec.L3)};
    data_.assign(static_cast<size_t>(n_) * n_ * n_ * n_ * n_ * n_ * n_ * n_ * n_, 0.0);

    // F-symbol tables: fa[n][j][P] = F^{n j h h}_{P h}, fb[n][j][P] = F^{h h n j}_{P h}
    std::vector<double> fa(static_cast<size_t>(n_) * n_ * n_),
        fb(static_cast<size_t>(n_) * n_ * n_);
    for (int n = 0; n < n_; ++n)
      for (int j = 0; j < n_; ++j)
        for (int P = 0; P < n_; ++P) {
          size_t k = (static_cast<size_t>(n) * n_ + j) * n_ + P;
          fa[k] = f_matrix(HalfInt(n), HalfInt(j), h, h, HalfInt(P), h, cache).to_double();
          fb[k] = f_matrix(h, h, HalfInt(n), HalfInt(j), HalfInt(P), h, cache).to_double();
        }
    auto tab = [&](const std::vector<double>& t, int n, int j, int P) {
      return t[(static_cast<size_t>(n) * n_ + j) * n_ + P];
    };

    for (int n1 = 0; n1 < n_; ++n1)
      for (int n2 = 0; n2 < n_; ++n2)
        for (int n3 = 0; n3 < n_; ++n3)
          for (int n4 = 0; n4 < n_; ++n4) {
            const double pref =
                std::sqrt((2 * n1 + 1) * etaA[n1] * (2 * n2 + 1) * etaB[n2] *
                          (2 * n3 + 1) * etaA[n3] * (2 * n4 + 1) * etaB[n4]) /
                ((S_ + 1.0) * (S_ + 1.0) * (S_ + 1.0) * (S_ + 1.0));
            if (pref == 0.0) continue;
            for (int P = 0; P < n_; ++P)
              for (int Q = 0; Q < n_; ++Q)
                for (int j1 = 0; j1 < n_; ++j1) {
                  const double g1 = tab(fa, n1, j1, P);
                  if (g1 == 0.0) continue;
                  for (int j2 = 0; j2 < n_; ++j2) {
                    const double g2 = tab(fb, n3, j2, P) * tab(fb, n4, j2, Q);
                    if (g2 == 0.0) continue;
                    for (int j3 = 0; j3 < n_; ++j3) {
                      const double g3 = tab(fa, n2, j3, Q);
                      if (g3 == 0.0) continue;
                      const double w = std::sqrt(2.0 * j2 + 1) *
                                       phase(n1 + n2 + j2 + j3) *
                                       std::sqrt((2 * j1 + 1.0) * (2 * j2 + 1.0) *
                                                 (2 * j3 + 1.0)) *
                                       lamp[0][j1] * lamp[1][j2] * lamp[2][j3];
                      at(n1, n2, n3, n4, P, Q, j1, j2, j3) =
                          pref * w * g1 * g2 * g3;
                    }
                  }
                }
          }
  }

  double operator()(int n1, int n2, int n3, int n4, int P, int Q, int j1,
                    int j2, int j3) const {
    return data_[idx(n1, n2, n3, n4, P, Q, j1, j2, j3)];
  }

  int spin() const { return S_; }

 private:
  size_t idx(int n1, int n2, int n3, int n4, int P, int Q, int j1, int j2,
             int j3) const {
    size_t k = n1;
    for (int v : {n2, n3, n4, P, Q, j1, j2, j3}) k = k * n_ + v;
    return k;
  }
  double& at(int n1, int n2, int n3, int n4, int P, int Q, int j1, int j2, int j3) {
    return data_[idx(n1, n2, n3, n4, P, Q, j1, j2, j3)];
  }

  int S_, n_;
  std::vector<double> data_;
};

/// Periodic contraction of X: glue regions 1 and 3 into one loop channel
/// (j3 = j1) and recouple both block pairs into sectors R. Reproduces
/// gamma_tensor entrywise.
inline SectorMap contract_x_pbc(const ChainSpec& spec,
                                SymbolCache& cache = SymbolCache::global()) {
  ChainSpec s = spec;
  s.boundary = Boundary::GeneralTensors;
  const XTensor X(s, cache);
  const int S = spec.spin();
  const auto chA = detail::block_channels(spec.S, spec.LA, cache);
  const auto chB = detail::block_channels(spec.S, spec.LB, cache);
  const double norm = pbc_normalization(spec.S, spec.total_length(), cache);

  SectorMap out;
  for (int R = 0; R <= 2 * S; ++R) {
    auto pairs = detail::sector_pairs(R, chA, chB);
    if (pairs.empty()) continue;
    SectorMatrix sec{R, pairs, DenseSquare{static_cast<int>(pairs.size()), {}}};
    sec.m.a.assign(pairs.size() * pairs.size(), 0.0);
    for (size_t row = 0; row < pairs.size(); ++row) {
      auto [n1, n2] = pairs[row];
      for (size_t col = 0; col < pairs.size(); ++col) {
        auto [n3, n4] = pairs[col];
        double sum = 0.0;
        for (int P = 0; P <= S; ++P)
          for (int Q = 0; Q <= S; ++Q)
            for (int j1 = 0; j1 <= S; ++j1) {
              const double c1 = detail::sixj_int(Q, P, R, n1, n2, j1, cache);
              if (c1 == 0.0) continue;
              for (int j2 = 0; j2 <= S; ++j2) {
                const double x = X(n1, n2, n3, n4, P, Q, j1, j2, j1);
                if (x == 0.0) continue;
                sum += x * phase(n1 + n2 + P + Q) * (2 * P + 1) * (2 * Q + 1) *
                       c1 * detail::sixj_int(Q, P, R, n3, n4, j2, cache);
              }
            }
        sec.m.at(static_cast<int>(row), static_cast<int>(col)) = sum / norm;
      }
    }
    out.emplace(R, std::move(sec));
  }
  return out;
}

/// Spin-S/2-edge contraction of X: a traced edge spin passes only the singlet
/// channel, so j1 = j3 = 0 forces P = n1, Q = n2; one recoupling then carries
/// (P, Q) into the sector label R. Reproduces the assembled y_tensor.
inline SectorMap contract_x_edges(const ChainSpec& spec,
                                  SymbolCache& cache = SymbolCache::global()) {
  if (spec.L1 != 0 || spec.L3 != 0)
    throw std::invalid_argument("contract_x_edges: set L1 = L3 = 0");
  ChainSpec s = spec;
  s.boundary = Boundary::GeneralTensors;
  const XTensor X(s, cache);
  const int S = spec.spin();
  const auto chA = detail::block_channels(spec.S, spec.LA, cache);
  const auto chB = detail::block_channels(spec.S, spec.LB, cache);

  SectorMap out;
  for (int R = 0; R <= 2 * S; ++R) {
    auto pairs = detail::sector_pairs(R, chA, chB);
    if (pairs.empty()) continue;
    SectorMatrix sec{R, pairs, DenseSquare{static_cast<int>(pairs.size()), {}}};
    sec.m.a.assign(pairs.size() * pairs.size(), 0.0);
    for (size_t row = 0; row < pairs.size(); ++row) {
      auto [n1, n2] = pairs[row];
      for (size_t col = 0; col < pairs.size(); ++col) {
        auto [n3, n4] = pairs[col];
        double sum = 0.0;
        for (int j2 = 0; j2 <= S; ++j2) {
          const double x = X(n1, n2, n3, n4, n1, n2, 0, j2, 0);
          if (x == 0.0) continue;
          sum += x * phase(n2 + n3 + R) * (S + 1.0) *
                 std::sqrt((2 * n1 + 1.0) * (2 * n2 + 1.0)) *
                 detail::sixj_int(n2, n4, j2, n3, n1, R, cache);
        }
        sec.m.at(static_cast<int>(row), static_cast<int>(col)) = sum / (S + 1.0);
      }
    }
    out.emplace(R, std::move(sec));
  }
  return out;
}

/// Exact L1+L3 -> infinity limit of the periodic rho_AB: the loop channel
/// collapses to j1 = 0 and the normalization tends to 1. Unit trace built in.
/// Diagonal entries carry the closed thermodynamic form
///   sum_j (2j+1) (-1)^{j+R} lambda_j^{L2} {M N R; N M j}{N j N; hhh}{M j M; hhh}
///   * (2N+1)(2M+1) eta_N^{(LA)} eta_M^{(LB)} / (S+1).
inline SectorMap thermodynamic_sectors(HalfInt S, int LA, int LB, int L2,
                                       SymbolCache& cache = SymbolCache::global()) {
  const int s = S.twice() / 2;
  const TransferSpectrum ts = lambda_spectrum(S, cache);
  const auto etaA = detail::eta_table(S, LA, cache);
  const auto etaB = detail::eta_table(S, LB, cache);
  const auto lam2 = detail::lambda_powers(ts, L2);
  const auto chA = detail::block_channels(S, LA, cache);
  const auto chB = detail::block_channels(S, LB, cache);
  const detail::SixJTripleTable w6(S, cache);

  SectorMap out;
  for (int R = 0; R <= 2 * s; ++R) {
    auto pairs = detail::sector_pairs(R, chA, chB);
    if (pairs.empty()) continue;
    SectorMatrix sec{R, pairs, DenseSquare{static_cast<int>(pairs.size()), {}}};
    sec.m.a.assign(pairs.size() * pairs.size(), 0.0);
    for (size_t row = 0; row < pairs.size(); ++row) {
      auto [n1, n2] = pairs[row];
      for (size_t col = 0; col < pairs.size(); ++col) {
        auto [n3, n4] = pairs[col];
        const double pref =
            std::sqrt((2 * n1 + 1) * etaA[n1] * (2 * n2 + 1) * etaB[n2] *
                      (2 * n3 + 1) * etaA[n3] * (2 * n4 + 1) * etaB[n4]) /
            (s + 1);
        double sum = 0.0;
        for (int j = 0; j <= s; ++j)
          sum += (2 * j + 1) * phase(j + R) * lam2[j] *
                 detail::sixj_int(n2, n1, R, n3, n4, j, cache) *
                 w6.at(n3, j, n1) * w6.at(n4, j, n2);
        sec.m.at(static_cast<int>(row), static_cast<int>(col)) = pref * sum;
      }
    }
    out.emplace(R, std::move(sec));
  }
  return out;
}

/// Eigenvalues of the thermodynamic-limit rho_AB, labelled per sector R with
/// multiplicity 2R+1; sums to 1.
inline Spectrum thermodynamic_eigenvalues(HalfInt S, int LA, int LB, int L2,
                                          SymbolCache& cache = SymbolCache::global()) {
  Spectrum sp = diagonalize(thermodynamic_sectors(S, LA, LB, L2, cache));
  sp.source = Spectrum::Source::Analytic;
  return sp;
}

}  // namespace vbsneg
