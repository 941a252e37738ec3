#pragma once

#include "vbsneg/vbs.hpp"  // DenseSquare

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace vbsneg {

/// Thrown when a numerical contract is violated (asymmetric sector matrix,
/// complex eigenvalue beyond tolerance, non-converging iteration).
struct NumericalContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
/// Matrices here are tiny ((S+1)^2 at most), so sweeps are cheap; iteration
/// stops once the off-diagonal norm falls below 1e-14 * scale.
inline std::vector<double> jacobi_eigenvalues(DenseSquare m) {
  const int n = m.n;
  if (n == 0) return {};
  if (n == 1) return {m.at(0, 0)};
  double scale = 0.0;
  for (double v : m.a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return std::vector<double>(n, 0.0);
  const double thresh = 1e-14 * scale;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += m.at(p, q) * m.at(p, q);
    if (std::sqrt(2.0 * off) < thresh) break;
    if (sweep == 99)
      throw NumericalContractError("jacobi_eigenvalues did not converge");

    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = m.at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double app = m.at(p, p), aqq = m.at(q, q);
        m.at(p, p) = app - t * apq;
        m.at(q, q) = aqq + t * apq;
        m.at(p, q) = m.at(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = m.at(r, p), arq = m.at(r, q);
          m.at(r, p) = m.at(p, r) = arp - s * (arq + tau * arp);
          m.at(r, q) = m.at(q, r) = arq + s * (arp - tau * arq);
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = m.at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

namespace detail {

/// Householder reduction of a real square matrix to upper Hessenberg form.
inline void to_hessenberg(DenseSquare& h) {
  const int n = h.n;
  for (int k = 1; k < n - 1; ++k) {
    double norm = 0.0;
    for (int i = k; i < n; ++i) norm += h.at(i, k - 1) * h.at(i, k - 1);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    if (h.at(k, k - 1) > 0) norm = -norm;
    std::vector<double> v(n, 0.0);
    for (int i = k; i < n; ++i) v[i] = h.at(i, k - 1);
    v[k] -= norm;
    double vnorm2 = 0.0;
    for (int i = k; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    // H <- (1 - 2 v v^T / v^T v) H (1 - 2 v v^T / v^T v)
    for (int j = 0; j < n; ++j) {
      double dot = 0.0;
      for (int i = k; i < n; ++i) dot += v[i] * h.at(i, j);
      dot = 2.0 * dot / vnorm2;
      for (int i = k; i < n; ++i) h.at(i, j) -= dot * v[i];
    }
    for (int i = 0; i < n; ++i) {
      double dot = 0.0;
      for (int j = k; j < n; ++j) dot += h.at(i, j) * v[j];
      dot = 2.0 * dot / vnorm2;
      for (int j = k; j < n; ++j) h.at(i, j) -= dot * v[j];
    }
  }
}

}  // namespace detail

/// Eigenvalues of a real square matrix: Householder Hessenberg reduction
/// followed by Francis double-shift QR with deflation.
inline std::vector<std::complex<double>> general_eigenvalues(DenseSquare h) {
  const int n = h.n;
  std::vector<std::complex<double>> ev;
  if (n == 0) return ev;
  detail::to_hessenberg(h);

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h.at(i, j));
  if (anorm == 0.0) return std::vector<std::complex<double>>(n, 0.0);

  int nn = n - 1;
  double t = 0.0;
  int its = 0;
  while (nn >= 0) {
    int l;
    for (l = nn; l >= 1; --l) {
      double s = std::abs(h.at(l - 1, l - 1)) + std::abs(h.at(l, l));
      if (s == 0.0) s = anorm;
      if (std::abs(h.at(l, l - 1)) <= 1e-15 * s) {
        h.at(l, l - 1) = 0.0;
        break;
      }
    }
    double x = h.at(nn, nn);
    if (l == nn) {
      ev.emplace_back(x + t, 0.0);
      --nn;
      its = 0;
      continue;
    }
    double y = h.at(nn - 1, nn - 1);
    double w = h.at(nn, nn - 1) * h.at(nn - 1, nn);
    if (l == nn - 1) {
      double p = 0.5 * (y - x);
      double q = p * p + w;
      double z = std::sqrt(std::abs(q));
      x += t;
      if (q >= 0.0) {
        z = p + (p >= 0 ? z : -z);
        ev.emplace_back(x + z, 0.0);
        ev.emplace_back(std::abs(z) > 1e-300 ? x - w / z : x + z, 0.0);
      } else {
        ev.emplace_back(x + p, z);
        ev.emplace_back(x + p, -z);
      }
      nn -= 2;
      its = 0;
      continue;
    }
    if (its == 60)
      throw NumericalContractError("general_eigenvalues: QR did not converge");
    if (its == 10 || its == 30 || its == 50) {
      // exceptional shift
      t += x;
      for (int i = 0; i <= nn; ++i) h.at(i, i) -= x;
      double s = std::abs(h.at(nn, nn - 1)) + std::abs(h.at(nn - 1, nn - 2));
      y = x = 0.75 * s;
      w = -0.4375 * s * s;
    }
    ++its;

    double p = 0, q = 0, r = 0;
    int m;
    for (m = nn - 2; m >= l; --m) {
      double z = h.at(m, m);
      double rr = x - z;
      double ss = y - z;
      p = (rr * ss - w) / h.at(m + 1, m) + h.at(m, m + 1);
      q = h.at(m + 1, m + 1) - z - rr - ss;
      r = h.at(m + 2, m + 1);
      double sc = std::abs(p) + std::abs(q) + std::abs(r);
      p /= sc; q /= sc; r /= sc;
      if (m == l) break;
      double u = std::abs(h.at(m, m - 1)) * (std::abs(q) + std::abs(r));
      double v = std::abs(p) * (std::abs(h.at(m - 1, m - 1)) + std::abs(h.at(m, m)) +
                                std::abs(h.at(m + 1, m + 1)));
      if (u <= 1e-15 * v) break;
    }
    for (int i = m + 2; i <= nn; ++i) {
      h.at(i, i - 2) = 0.0;
      if (i != m + 2) h.at(i, i - 3) = 0.0;
    }
    for (int k = m; k <= nn - 1; ++k) {
      if (k != m) {
        p = h.at(k, k - 1);
        q = h.at(k + 1, k - 1);
        r = k != nn - 1 ? h.at(k + 2, k - 1) : 0.0;
        x = std::abs(p) + std::abs(q) + std::abs(r);
        if (x == 0.0) continue;
        p /= x; q /= x; r /= x;
      }
      double s = std::sqrt(p * p + q * q + r * r);
      if (p < 0) s = -s;
      if (s == 0.0) continue;
      if (k == m) {
        if (l != m) h.at(k, k - 1) = -h.at(k, k - 1);
      } else {
        h.at(k, k - 1) = -s * x;
      }
      p += s;
      x = p / s; y = q / s; double z = r / s;
      q /= p; r /= p;
      for (int j = k; j <= nn; ++j) {
        double pp = h.at(k, j) + q * h.at(k + 1, j);
        if (k != nn - 1) {
          pp += r * h.at(k + 2, j);
          h.at(k + 2, j) -= pp * z;
        }
        h.at(k + 1, j) -= pp * y;
        h.at(k, j) -= pp * x;
      }
      int mmin = nn < k + 3 ? nn : k + 3;
      for (int i = l; i <= mmin; ++i) {
        double pp = x * h.at(i, k) + y * h.at(i, k + 1);
        if (k != nn - 1) {
          pp += z * h.at(i, k + 2);
          h.at(i, k + 2) -= pp * r;
        }
        h.at(i, k + 1) -= pp * q;
        h.at(i, k) -= pp;
      }
    }
  }
  return ev;
}

/// Real eigenvalues of a real matrix that is similar to a symmetric one
/// (e.g. a partial-transpose sector block). Imaginary parts beyond the stated
/// tolerance violate the similarity contract and raise.
inline std::vector<double> real_eigenvalues(const DenseSquare& m,
                                            double imag_tol = 1e-10) {
  auto ev = general_eigenvalues(m);
  std::vector<double> out;
  out.reserve(ev.size());
  for (const auto& z : ev) {
    if (std::abs(z.imag()) > imag_tol)
      throw NumericalContractError("eigenvalue has imaginary part " +
                                   std::to_string(z.imag()));
    out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace vbsneg
