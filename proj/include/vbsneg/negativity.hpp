#pragma once

#include "vbsneg/density.hpp"

#include <string>
#include <vector>

namespace vbsneg {

struct NegativityResult {
  double value = 0.0;                 // = -negative_eigenvalue_sum, >= 0
  double negative_eigenvalue_sum = 0.0;
  enum class Method { ClosedForm, NumericPTDM } method = Method::NumericPTDM;
  ChainSpec spec;
};

inline const char* to_string(NegativityResult::Method m) {
  return m == NegativityResult::Method::ClosedForm ? "ClosedForm" : "NumericPTDM";
}

/// Closed-form negativity of two adjacent blocks on a periodic chain of
/// length LA+LB:
///   Neg = N_PBC^{-1} sum_N (2N+1) sqrt(eta_N eta_N)
///         [ N sqrt(eta_N eta_N) + sum_{M>N} (2M+1) sqrt(eta_M eta_M) ],
/// each sqrt pairing the LA and LB weights. Symmetric under LA <-> LB.
inline NegativityResult adjacent_negativity(HalfInt S, int LA, int LB,
                                            SymbolCache& cache = SymbolCache::global()) {
  ChainSpec spec{S, 0, LA, 0, LB, 0, Boundary::Periodic};
  spec.validate();
  const int s = spec.spin();
  const double norm = pbc_normalization(S, LA + LB, cache);
  std::vector<double> w(s + 1);  // sqrt(eta_N^{(LA)} eta_N^{(LB)})
  for (int N = 0; N <= s; ++N)
    w[N] = std::sqrt(std::max(eta(S, N, LA, cache), 0.0) *
                     std::max(eta(S, N, LB, cache), 0.0));
  double neg = 0.0;
  for (int N = 0; N <= s; ++N) {
    double inner = N * w[N];
    for (int M = N + 1; M <= s; ++M) inner += (2 * M + 1) * w[M];
    neg += (2 * N + 1) * w[N] * inner;
  }
  neg /= norm;
  return {neg, -neg, NegativityResult::Method::ClosedForm, spec};
}

/// Full PTDM spectrum for adjacent blocks: the operator swaps (N, n) with
/// (M, m), so each diagonal label gives +eta_N eta_N / N_PBC and each
/// unordered label pair a +/- pair. Multiplicities come from enumerating the
/// labels, not from a closed count.
inline Spectrum ptdm_spectrum_adjacent(HalfInt S, int LA, int LB,
                                       SymbolCache& cache = SymbolCache::global()) {
  ChainSpec spec{S, 0, LA, 0, LB, 0, Boundary::Periodic};
  spec.validate();
  const int s = spec.spin();
  const double norm = pbc_normalization(S, LA + LB, cache);
  std::vector<double> cNN(s + 1);  // sqrt(eta_N^{(LA)} eta_N^{(LB)})
  for (int N = 0; N <= s; ++N)
    cNN[N] = std::sqrt(std::max(eta(S, N, LA, cache), 0.0) *
                       std::max(eta(S, N, LB, cache), 0.0));

  std::vector<int> labels;  // channel N repeated over its 2N+1 projections
  for (int N = 0; N <= s; ++N)
    for (int n = 0; n < 2 * N + 1; ++n) labels.push_back(N);

  std::vector<std::pair<double, int>> raw;
  const size_t D = labels.size();
  for (size_t i = 0; i < D; ++i) {
    raw.emplace_back(cNN[labels[i]] * cNN[labels[i]] / norm, 1);
    for (size_t k = i + 1; k < D; ++k) {
      const double c = cNN[labels[i]] * cNN[labels[k]] / norm;
      raw.emplace_back(c, 1);
      raw.emplace_back(-c, 1);
    }
  }
  Spectrum sp = detail::collect(std::move(raw), static_cast<int>(D * D),
                                Spectrum::Source::Analytic);
  return sp;
}

/// rho_AB sector blocks for any supported boundary.
inline SectorMap density_sectors(const ChainSpec& spec, bool transposed,
                                 SymbolCache& cache = SymbolCache::global()) {
  switch (spec.boundary) {
    case Boundary::Periodic: return gamma_tensor(spec, transposed, cache);
    case Boundary::SpinHalfEdges: return y_assembled(spec, transposed, cache);
    default:
      throw std::invalid_argument(
          "density_sectors: general boundary tensors need an explicit X contraction");
  }
}

inline Spectrum density_spectrum(const ChainSpec& spec,
                                 SymbolCache& cache = SymbolCache::global()) {
  return diagonalize(density_sectors(spec, false, cache));
}

/// Negativity from the eigenvalues of the partial transpose, sector by sector.
/// PTDM blocks need not be symmetric, so the general real eigensolver runs.
inline NegativityResult numeric_negativity(const ChainSpec& spec,
                                           SymbolCache& cache = SymbolCache::global()) {
  Spectrum sp = diagonalize_general(density_sectors(spec, true, cache));
  const double negsum = sp.negative_sum();
  return {-negsum, negsum, NegativityResult::Method::NumericPTDM, spec};
}

inline Spectrum ptdm_spectrum(const ChainSpec& spec,
                              SymbolCache& cache = SymbolCache::global()) {
  return diagonalize_general(density_sectors(spec, true, cache));
}

/// One scanned configuration of the separated-blocks survey.
struct ScanPoint {
  ChainSpec spec;
  double negativity = 0.0;
  bool counterexample = false;  // |value| above the vanishing threshold
};

struct ScanReport {
  HalfInt S_max;
  int length_budget = 0;
  double threshold = 1e-11;
  std::vector<ScanPoint> points;
  bool any_counterexample = false;
};

/// Surveys separated blocks (no common boundary) for vanishing negativity:
/// for each S <= S_max the minimal edge-boundary configuration LA = LB = 1,
/// L2 = 1, then every separated configuration within the length budget, both
/// edge (L2 >= 1) and periodic (L2 >= 1 and L1+L3 >= 1). Values above the
/// threshold are flagged, never assumed away.
inline ScanReport conjecture_scan(HalfInt S_max, int length_budget,
                                  SymbolCache& cache = SymbolCache::global()) {
  ScanReport report;
  report.S_max = S_max;
  report.length_budget = length_budget;
  for (int s = 1; s <= S_max.twice() / 2; ++s) {
    const HalfInt S(s);
    // edge boundary: outer gaps are irrelevant, scan (LA, L2, LB)
    for (int LA = 1; LA <= length_budget; ++LA)
      for (int L2 = 1; LA + L2 + 1 <= length_budget; ++L2)
        for (int LB = 1; LA + L2 + LB <= length_budget; ++LB) {
          ChainSpec spec{S, 0, LA, L2, LB, 0, Boundary::SpinHalfEdges};
          ScanPoint pt{spec, numeric_negativity(spec, cache).value, false};
          pt.counterexample = std::abs(pt.negativity) > report.threshold;
          report.points.push_back(pt);
        }
    // periodic: both gaps nonempty
    for (int L1 = 1; L1 <= length_budget; ++L1)
      for (int LA = 1; LA <= length_budget; ++LA)
        for (int L2 = 1; L2 <= length_budget; ++L2)
          for (int LB = 1; L1 + LA + L2 + LB <= length_budget; ++LB) {
            ChainSpec spec{S, L1, LA, L2, LB, 0, Boundary::Periodic};
            ScanPoint pt{spec, numeric_negativity(spec, cache).value, false};
            pt.counterexample = std::abs(pt.negativity) > report.threshold;
            report.points.push_back(pt);
          }
  }
  for (const auto& pt : report.points)
    report.any_counterexample |= pt.counterexample;
  return report;
}

struct FigureRow {
  int S;
  int LA;
  double negativity;
};

/// Adjacent-block negativity curves: one row per (S, LA) at fixed LB.
inline std::vector<FigureRow> figure_data(const std::vector<HalfInt>& S_list,
                                          int LB, int LA_max,
                                          SymbolCache& cache = SymbolCache::global()) {
  std::vector<FigureRow> rows;
  for (HalfInt S : S_list)
    for (int LA = 1; LA <= LA_max; ++LA)
      rows.push_back({S.twice() / 2, LA, adjacent_negativity(S, LA, LB, cache).value});
  return rows;
}

}  // namespace vbsneg
