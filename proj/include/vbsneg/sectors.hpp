#pragma once

#include "vbsneg/small_eig.hpp"
#include "vbsneg/vbs.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vbsneg {

/// One conserved-sector block of rho_AB (or its partial transpose): total
/// coupled spin R, with rows/columns labeled by (N_A, N_B) channel pairs
/// obeying the triangle rule |N_A - N_B| <= R <= N_A + N_B.
struct SectorMatrix {
  int R = 0;
  std::vector<std::pair<int, int>> labels;  // (N_A, N_B) per row/column
  DenseSquare m;

  int degeneracy() const { return 2 * R + 1; }
  int dimension() const { return m.n; }
};

using SectorMap = std::map<int, SectorMatrix>;

struct Spectrum {
  enum class Source { Analytic, Numeric };
  std::vector<std::pair<double, int>> eigs;  // (eigenvalue, multiplicity), ascending
  int total_dimension = 0;
  Source source = Source::Numeric;

  double trace() const {
    double t = 0.0;
    for (auto& [v, mult] : eigs) t += v * mult;
    return t;
  }
  double min_eigenvalue() const { return eigs.empty() ? 0.0 : eigs.front().first; }
  double negative_sum() const {
    double s = 0.0;
    for (auto& [v, mult] : eigs)
      if (v < 0) s += v * mult;
    return s;
  }
  double trace_norm() const {
    double s = 0.0;
    for (auto& [v, mult] : eigs) s += std::abs(v) * mult;
    return s;
  }
  /// Flat ascending list with multiplicities expanded.
  std::vector<double> expanded() const {
    std::vector<double> out;
    out.reserve(total_dimension);
    for (auto& [v, mult] : eigs) out.insert(out.end(), mult, v);
    return out;
  }
};

namespace detail {

inline Spectrum collect(std::vector<std::pair<double, int>> raw, int dim,
                        Spectrum::Source src) {
  std::sort(raw.begin(), raw.end());
  Spectrum out;
  out.total_dimension = dim;
  out.source = src;
  for (auto& [v, mult] : raw) {
    if (!out.eigs.empty() && out.eigs.back().first == v)
      out.eigs.back().second += mult;
    else
      out.eigs.emplace_back(v, mult);
  }
  return out;
}

}  // namespace detail

/// Per-sector dense symmetric eigendecomposition; eigenvalues replicated by
/// the 2R+1 sector degeneracy. Sector blocks of a density matrix must be
/// symmetric; asymmetry beyond tolerance is a formula error, not rounding.
inline Spectrum diagonalize(const SectorMap& sectors, double sym_tol = 1e-10) {
  std::vector<std::pair<double, int>> raw;
  int dim = 0;
  for (const auto& [R, sec] : sectors) {
    const int n = sec.m.n;
    double asym = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        asym = std::max(asym, std::abs(sec.m.at(i, j) - sec.m.at(j, i)));
    if (asym > sym_tol)
      throw NumericalContractError("sector R=" + std::to_string(R) +
                                   " asymmetric by " + std::to_string(asym));
    DenseSquare sym = sec.m;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        sym.at(i, j) = 0.5 * (sec.m.at(i, j) + sec.m.at(j, i));
    for (double v : jacobi_eigenvalues(std::move(sym)))
      raw.emplace_back(v, sec.degeneracy());
    dim += n * sec.degeneracy();
  }
  return detail::collect(std::move(raw), dim, Spectrum::Source::Numeric);
}

/// Same, for blocks that need not be symmetric (partial transposes). They are
/// similar to symmetric operators, so eigenvalues must come out real.
inline Spectrum diagonalize_general(const SectorMap& sectors,
                                    double imag_tol = 1e-10) {
  std::vector<std::pair<double, int>> raw;
  int dim = 0;
  for (const auto& [R, sec] : sectors) {
    for (double v : real_eigenvalues(sec.m, imag_tol))
      raw.emplace_back(v, sec.degeneracy());
    dim += sec.m.n * sec.degeneracy();
  }
  return detail::collect(std::move(raw), dim, Spectrum::Source::Numeric);
}

}  // namespace vbsneg
