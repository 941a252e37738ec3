#include "vbsneg/oracle.hpp"
#include "vbsneg/small_eig.hpp"
#include "vbsneg/vbs.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace vbsneg;

namespace {

std::vector<double> expected_lambda_multiset(int s) {
  TransferSpectrum ts = lambda_spectrum(HalfInt(s));
  std::vector<double> out;
  for (int j = 0; j <= s; ++j)
    for (int k = 0; k < 2 * j + 1; ++k) out.push_back(to_double(ts.lambda[j]));
  std::sort(out.begin(), out.end());
  return out;
}

DenseSquare matmul(const DenseSquare& a, const DenseSquare& b) {
  DenseSquare c{a.n, std::vector<double>(a.a.size(), 0.0)};
  for (int i = 0; i < a.n; ++i)
    for (int k = 0; k < a.n; ++k) {
      const double v = a.at(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < a.n; ++j) c.at(i, j) += v * b.at(k, j);
    }
  return c;
}

}  // namespace

TEST(Lambda, ExactValues) {
  TransferSpectrum s1 = lambda_spectrum(HalfInt(1));
  EXPECT_EQ(s1.lambda[0], BigRat(1));
  EXPECT_EQ(s1.lambda[1], BigRat(-1, 3));
  TransferSpectrum s2 = lambda_spectrum(HalfInt(2));
  EXPECT_EQ(s2.lambda[0], BigRat(1));
  EXPECT_EQ(s2.lambda[1], BigRat(-1, 2));
  EXPECT_EQ(s2.lambda[2], BigRat(1, 10));
  for (int s = 1; s <= 6; ++s)
    EXPECT_EQ(lambda_spectrum(HalfInt(s)).lambda[0], BigRat(1)) << s;
  EXPECT_THROW(lambda_spectrum(HalfInt::from_twice(3)), std::invalid_argument);
  EXPECT_THROW(lambda_spectrum(HalfInt(0)), std::invalid_argument);
}

TEST(TransferMatrix, SpectrumMatchesLambda) {
  for (int s = 1; s <= 3; ++s) {
    DenseSquare G = transfer_matrix(HalfInt(s));
    ASSERT_EQ(G.n, (s + 1) * (s + 1));
    std::vector<double> ev = real_eigenvalues(G, 1e-8);
    std::vector<double> want = expected_lambda_multiset(s);
    ASSERT_EQ(ev.size(), want.size());
    for (size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], want[i], 1e-10) << s;
    // trace identity: tr G = sum_j (2j+1) lambda_j
    double tr = 0.0;
    for (int i = 0; i < G.n; ++i) tr += G.at(i, i);
    double want_tr = 0.0;
    for (double v : want) want_tr += v;
    EXPECT_NEAR(tr, want_tr, 1e-12);
  }
}

TEST(MpsTensor, SelectionRuleAndContraction) {
  for (int s = 1; s <= 3; ++s) {
    MpsTensor g = mps_tensor(HalfInt(s));
    EXPECT_EQ(g.aux_dim, s + 1);
    EXPECT_EQ(g.phys_dim, 2 * s + 1);
    // CG selection: m = a - b, i.e. im = ia - ib + s
    for (int ia = 0; ia < g.aux_dim; ++ia)
      for (int ib = 0; ib < g.aux_dim; ++ib)
        for (int im = 0; im < g.phys_dim; ++im)
          if (im != ia - ib + s) EXPECT_EQ(g.at(ia, ib, im), 0.0);
    // gbar . g reproduces the transfer matrix elementwise
    DenseSquare G = transfer_matrix(HalfInt(s));
    for (int ia = 0; ia < g.aux_dim; ++ia)
      for (int ic = 0; ic < g.aux_dim; ++ic)
        for (int ib = 0; ib < g.aux_dim; ++ib)
          for (int id = 0; id < g.aux_dim; ++id) {
            double dot = 0.0;
            for (int im = 0; im < g.phys_dim; ++im)
              dot += g.at(ia, ib, im) * g.at(ic, id, im);
            EXPECT_DOUBLE_EQ(dot, G.at(ia * g.aux_dim + ic, ib * g.aux_dim + id));
          }
  }
}

TEST(Eta, DualFormulaAgreement) {
  for (int s = 1; s <= 3; ++s)
    for (int N = 0; N <= s; ++N)
      for (int L = 1; L <= 8; ++L)
        EXPECT_NEAR(eta(HalfInt(s), N, L), eta_f_form(HalfInt(s), N, L), 1e-12)
            << s << " " << N << " " << L;
}

TEST(Eta, SingleSiteCarriesOnlyTopChannel) {
  for (int s = 1; s <= 4; ++s) {
    for (int N = 0; N < s; ++N)
      EXPECT_TRUE(eta_channel(HalfInt(s), N, 1).exactly_zero) << s << " " << N;
    EXPECT_FALSE(eta_channel(HalfInt(s), s, 1).exactly_zero);
    EXPECT_GT(eta(HalfInt(s), s, 1), 0.0);
  }
}

TEST(Eta, LimitValue) {
  for (int s = 1; s <= 3; ++s)
    for (int N = 0; N <= s; ++N) {
      EXPECT_NEAR(eta_limit(HalfInt(s), N), 1.0 / (s + 1), 1e-15);
      EXPECT_NEAR(eta(HalfInt(s), N, 40), eta_limit(HalfInt(s), N), 1e-12);
    }
}

TEST(Eta, RangeChecks) {
  EXPECT_THROW(eta(HalfInt(1), 2, 3), std::invalid_argument);
  EXPECT_THROW(eta(HalfInt(1), -1, 3), std::invalid_argument);
  EXPECT_THROW(eta(HalfInt(1), 0, 0), std::invalid_argument);
}

TEST(Eta, BlockNormDecomposition) {
  // <[N,Mz]_L | [N,Mz]_L> = eta_N^{(L)} for the block state built by coupling
  // the two open auxiliary legs of an L-site strip, brute-force contraction.
  for (int s : {1, 2})
    for (int L : {2, 3}) {
      ChainSpec spec{HalfInt(s), 0, std::max(1, L - 1), 0, 1, 0, Boundary::SpinHalfEdges};
      if (spec.total_length() != L) continue;
      oracle::DenseState st = oracle::build_state(spec);
      const int na = s + 1;
      const HalfInt h = HalfInt::from_twice(s);
      std::int64_t mdim = 1;
      for (int i = 0; i < L; ++i) mdim *= 2 * s + 1;
      for (int N = 0; N <= s; ++N) {
        for (int tMz = -2 * N; tMz <= 2 * N; tMz += 2) {
          std::vector<double> v(mdim, 0.0);
          for (int ia = 0; ia < na; ++ia)
            for (int ib = 0; ib < na; ++ib) {
              HalfInt a = HalfInt::from_twice(2 * ia - s);
              HalfInt b = HalfInt::from_twice(2 * ib - s);
              double coef = clebsch_gordan(h, a, h, -b, HalfInt(N),
                                           HalfInt::from_twice(tMz)).to_double() *
                            phase(b + h);
              if (coef == 0.0) continue;
              for (std::int64_t m = 0; m < mdim; ++m)
                v[m] += coef * st.amps[(ia * mdim + m) * na + ib];
            }
          double nrm = 0.0;
          for (double x : v) nrm += x * x;
          EXPECT_NEAR(nrm, eta(HalfInt(s), N, L), 1e-12)
              << "s=" << s << " L=" << L << " N=" << N << " Mz=" << tMz;
        }
      }
    }
}

TEST(PbcNormalization, ClosedFormAndMatrixPower) {
  EXPECT_NEAR(pbc_normalization(HalfInt(1), 2), 4.0 / 3.0, 1e-15);
  for (int s : {1, 2}) {
    DenseSquare G = transfer_matrix(HalfInt(s));
    DenseSquare P = G;
    for (int L = 2; L <= 8; ++L) {
      P = matmul(P, G);
      double tr = 0.0;
      for (int i = 0; i < P.n; ++i) tr += P.at(i, i);
      EXPECT_NEAR(pbc_normalization(HalfInt(s), L), tr, 1e-12) << s << " " << L;
    }
  }
  EXPECT_NEAR(pbc_normalization(HalfInt(2), 60), 1.0, 1e-15);
  EXPECT_THROW(pbc_normalization(HalfInt(1), 1), std::invalid_argument);
}

TEST(SmallEig, JacobiAndGeneralAgree) {
  DenseSquare m{3, {4, 1, -2, 1, 3, 0.5, -2, 0.5, 1}};
  auto a = jacobi_eigenvalues(m);
  auto b = real_eigenvalues(m);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  double tr = 0;
  for (double v : a) tr += v;
  EXPECT_NEAR(tr, 8.0, 1e-12);
}

TEST(SmallEig, ComplexPairRejected) {
  DenseSquare rot{2, {0, -1, 1, 0}};  // eigenvalues +-i
  EXPECT_THROW(real_eigenvalues(rot), NumericalContractError);
}
