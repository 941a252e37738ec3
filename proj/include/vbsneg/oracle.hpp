#pragma once

#include "vbsneg/chain.hpp"
#include "vbsneg/vbs.hpp"

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

// Brute-force path: build the full wavefunction by direct MPS contraction and
// get spectra/negativity from dense linear algebra. Deliberately dense and
// symmetry-blind; it shares only the Clebsch-Gordan kernel with the analytic
// lane, never the Appendix-style sector tensors.
namespace vbsneg::oracle {

inline constexpr std::int64_t kAmplitudeCap = 10'000'000;
inline constexpr int kDenseOperatorCap = 4096;

struct DenseState {
  Eigen::VectorXd amps;
  std::vector<int> dims;       // tensor factor dimensions, slowest first
  std::vector<int> site_of;    // factor index of chain site i
  ChainSpec spec;

  double norm2() const { return amps.squaredNorm(); }
};

/// Exact contraction of the site tensors. Periodic chains trace the auxiliary
/// bond; spin-S/2 edges keep the two boundary legs as extra physical factors
/// of dimension S+1 (identity boundary tensors).
inline DenseState build_state(const ChainSpec& spec,
                              SymbolCache& cache = SymbolCache::global()) {
  spec.validate();
  if (spec.boundary == Boundary::GeneralTensors)
    throw std::invalid_argument("oracle: general boundary tensors are not wired up");
  const int L = spec.total_length();
  const int s = spec.spin();
  const int d = 2 * s + 1, na = s + 1;
  const bool edges = spec.boundary == Boundary::SpinHalfEdges;

  std::int64_t total = 1;
  for (int i = 0; i < L; ++i) {
    total *= d;
    if (total > kAmplitudeCap)
      throw std::length_error("oracle: amplitude count exceeds cap");
  }
  if (edges && total * na * na > kAmplitudeCap)
    throw std::length_error("oracle: amplitude count exceeds cap");

  const MpsTensor g = mps_tensor(spec.S, cache);
  // T[a, m..., b] grown one site at a time
  std::int64_t mdim = 1;
  std::vector<double> T(static_cast<size_t>(na) * na, 0.0);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) T[a * na + b] = (a == b) ? 1.0 : 0.0;
  for (int site = 0; site < L; ++site) {
    std::vector<double> next(static_cast<size_t>(na) * mdim * d * na, 0.0);
    for (std::int64_t am = 0; am < na * mdim; ++am)
      for (int m = 0; m < d; ++m)
        for (int b2 = 0; b2 < na; ++b2) {
          double acc = 0.0;
          for (int b = 0; b < na; ++b) acc += T[am * na + b] * g.at(b, b2, m);
          next[(am * d + m) * na + b2] = acc;
        }
    T.swap(next);
    mdim *= d;
  }

  DenseState st;
  st.spec = spec;
  if (edges) {
    st.dims.push_back(na);
    for (int i = 0; i < L; ++i) st.dims.push_back(d);
    st.dims.push_back(na);
    for (int i = 0; i < L; ++i) st.site_of.push_back(1 + i);
    st.amps = Eigen::Map<Eigen::VectorXd>(T.data(), static_cast<std::int64_t>(T.size()));
  } else {
    for (int i = 0; i < L; ++i) st.dims.push_back(d);
    for (int i = 0; i < L; ++i) st.site_of.push_back(i);
    st.amps.resize(mdim);
    for (std::int64_t m = 0; m < mdim; ++m) {
      double acc = 0.0;
      for (int a = 0; a < na; ++a) acc += T[(a * mdim + m) * na + a];
      st.amps[m] = acc;
    }
  }
  return st;
}

/// Projector onto the total-spin-s multiplet of two neighboring spin-S sites.
inline Eigen::MatrixXd two_site_projector(HalfInt S, int s2,
                                          SymbolCache& cache = SymbolCache::global()) {
  const int s = S.twice() / 2;
  const int d = 2 * s + 1;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(d * d, d * d);
  for (int sig = -s2; sig <= s2; ++sig) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d * d);
    for (int m1 = -s; m1 <= s; ++m1) {
      const int m2 = sig - m1;
      if (std::abs(m2) > s) continue;
      v[(m1 + s) * d + (m2 + s)] =
          clebsch_gordan(S, HalfInt(m1), S, HalfInt(m2), HalfInt(s2), HalfInt(sig), cache)
              .to_double();
    }
    P += v * v.transpose();
  }
  return P;
}

/// In-place action of sum_i sum_{s=S+1}^{2S} Pi_s(i, i+1) on the state
/// (periodic wrap included; edge factors are untouched bystanders).
inline Eigen::VectorXd apply_hamiltonian(const DenseState& st,
                                         SymbolCache& cache = SymbolCache::global()) {
  const int s = st.spec.spin();
  const int d = 2 * s + 1;
  const int L = st.spec.total_length();
  Eigen::MatrixXd bond = Eigen::MatrixXd::Zero(d * d, d * d);
  for (int s2 = s + 1; s2 <= 2 * s; ++s2) bond += two_site_projector(st.spec.S, s2, cache);

  std::vector<std::int64_t> stride(st.dims.size());
  std::int64_t acc = 1;
  for (int i = static_cast<int>(st.dims.size()) - 1; i >= 0; --i) {
    stride[i] = acc;
    acc *= st.dims[i];
  }
  const std::int64_t N = st.amps.size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(N);
  const int nbonds = st.spec.boundary == Boundary::Periodic ? L : L - 1;
  for (int b = 0; b < nbonds; ++b) {
    const int fi = st.site_of[b];
    const int fj = st.site_of[(b + 1) % L];
    const std::int64_t si = stride[fi], sj = stride[fj];
    for (std::int64_t idx = 0; idx < N; ++idx) {
      const int mi = static_cast<int>(idx / si) % d;
      const int mj = static_cast<int>(idx / sj) % d;
      const std::int64_t base = idx - mi * si - mj * sj;
      double accv = 0.0;
      for (int mi2 = 0; mi2 < d; ++mi2)
        for (int mj2 = 0; mj2 < d; ++mj2)
          accv += bond(mi * d + mj, mi2 * d + mj2) * st.amps[base + mi2 * si + mj2 * sj];
      out[idx] += accv;
    }
  }
  return out;
}

/// Dense Hamiltonian matrix (for small chains; the apply path covers the rest).
inline Eigen::MatrixXd hamiltonian(const ChainSpec& spec,
                                   SymbolCache& cache = SymbolCache::global()) {
  spec.validate();
  const int d = 2 * spec.spin() + 1;
  std::int64_t dim = 1;
  for (int i = 0; i < spec.total_length(); ++i) dim *= d;
  if (dim > kDenseOperatorCap)
    throw std::length_error("oracle: dense Hamiltonian dimension exceeds cap");
  DenseState probe;
  probe.spec = spec;
  for (int i = 0; i < spec.total_length(); ++i) {
    probe.dims.push_back(d);
    probe.site_of.push_back(i);
  }
  Eigen::MatrixXd H(dim, dim);
  probe.amps = Eigen::VectorXd::Zero(dim);
  for (std::int64_t k = 0; k < dim; ++k) {
    probe.amps[k] = 1.0;
    H.col(k) = apply_hamiltonian(probe, cache);
    probe.amps[k] = 0.0;
  }
  return H;
}

/// rho over the kept factors (given in row-then-column order of the final
/// operator), tracing everything else; normalized to unit trace.
inline Eigen::MatrixXd reduce(const DenseState& st, const std::vector<int>& keep) {
  const int nf = static_cast<int>(st.dims.size());
  std::vector<std::int64_t> stride(nf);
  std::int64_t acc = 1;
  for (int i = nf - 1; i >= 0; --i) {
    stride[i] = acc;
    acc *= st.dims[i];
  }
  std::vector<char> kept(nf, 0);
  for (int f : keep) kept[f] = 1;
  std::int64_t dk = 1, dr = 1;
  for (int f : keep) dk *= st.dims[f];
  std::vector<int> rest;
  for (int f = 0; f < nf; ++f)
    if (!kept[f]) {
      rest.push_back(f);
      dr *= st.dims[f];
    }

  Eigen::MatrixXd psi(dk, dr);
  const std::int64_t N = st.amps.size();
  for (std::int64_t idx = 0; idx < N; ++idx) {
    std::int64_t k = 0, r = 0;
    for (int f : keep) k = k * st.dims[f] + (idx / stride[f]) % st.dims[f];
    for (int f : rest) r = r * st.dims[f] + (idx / stride[f]) % st.dims[f];
    psi(k, r) = st.amps[idx];
  }
  Eigen::MatrixXd rho = psi * psi.transpose();
  return rho / rho.trace();
}

enum class Factor { A, B };

/// Index swap on one tensor factor of op, defined over the A (x) B split.
inline Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& op, int dA, int dB,
                                         Factor which = Factor::A) {
  if (op.rows() != static_cast<std::int64_t>(dA) * dB || op.rows() != op.cols())
    throw std::invalid_argument("partial_transpose: factor dimensions do not match");
  Eigen::MatrixXd out(op.rows(), op.cols());
  for (int a = 0; a < dA; ++a)
    for (int b = 0; b < dB; ++b)
      for (int a2 = 0; a2 < dA; ++a2)
        for (int b2 = 0; b2 < dB; ++b2) {
          if (which == Factor::A)
            out(a * dB + b, a2 * dB + b2) = op(a2 * dB + b, a * dB + b2);
          else
            out(a * dB + b, a2 * dB + b2) = op(a * dB + b2, a2 * dB + b);
        }
  return out;
}

/// Eigenvalues of a dense symmetric matrix (LAPACK divide and conquer).
inline std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd m) {
  const int n = static_cast<int>(m.rows());
  std::vector<double> w(n);
  if (n == 0) return w;
  int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, m.data(), n, w.data());
  if (info != 0)
    throw std::runtime_error("dsyevd failed with info=" + std::to_string(info));
  return w;  // ascending
}

/// Kept-factor lists for the (A, B) blocks of a spec.
inline std::pair<std::vector<int>, std::vector<int>> block_factors(const ChainSpec& spec) {
  const int off = spec.boundary == Boundary::SpinHalfEdges ? 1 : 0;
  std::vector<int> A, B;
  for (int i = 0; i < spec.LA; ++i) A.push_back(off + spec.L1 + i);
  for (int i = 0; i < spec.LB; ++i) B.push_back(off + spec.L1 + spec.LA + spec.L2 + i);
  return {A, B};
}

struct SpectraPair {
  std::vector<double> rho;   // ascending
  std::vector<double> ptdm;  // ascending
  double negativity = 0.0;
};

inline SpectraPair spectra(const ChainSpec& spec,
                           SymbolCache& cache = SymbolCache::global()) {
  DenseState st = build_state(spec, cache);
  auto [A, B] = block_factors(spec);
  std::vector<int> keep = A;
  keep.insert(keep.end(), B.begin(), B.end());
  Eigen::MatrixXd rho = reduce(st, keep);
  int dA = 1, dB = 1;
  for (int f : A) dA *= st.dims[f];
  for (int f : B) dB *= st.dims[f];
  SpectraPair out;
  out.rho = symmetric_eigenvalues(rho);
  out.ptdm = symmetric_eigenvalues(partial_transpose(rho, dA, dB));
  for (double v : out.ptdm)
    if (v < 0) out.negativity -= v;
  return out;
}

inline double oracle_negativity(const ChainSpec& spec,
                                SymbolCache& cache = SymbolCache::global()) {
  return spectra(spec, cache).negativity;
}

/// PTDM spectrum of a pure A|B state from its Schmidt values:
/// {s_i^2} plus a +/- pair s_i s_j for every i < j. Used where the whole
/// chain is kept and the dense eigensolve would be needlessly heavy; equality
/// with the dense route is itself covered by tests at small sizes.
inline std::vector<double> pure_state_ptdm_spectrum(const DenseState& st, int dA) {
  const std::int64_t N = st.amps.size();
  const int dB = static_cast<int>(N / dA);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      m(st.amps.data(), dA, dB);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  Eigen::VectorXd s = svd.singularValues();
  s /= s.norm();
  std::vector<double> ev;
  for (int i = 0; i < s.size(); ++i) {
    ev.push_back(s[i] * s[i]);
    for (int j = i + 1; j < s.size(); ++j) {
      ev.push_back(s[i] * s[j]);
      ev.push_back(-s[i] * s[j]);
    }
  }
  // zero-pad to the full PTDM dimension
  ev.resize(static_cast<size_t>(dA) * dB, 0.0);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace vbsneg::oracle
