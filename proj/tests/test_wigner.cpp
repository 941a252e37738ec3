#include "vbsneg/wigner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

using namespace vbsneg;

namespace {

HalfInt ht(int twice) { return HalfInt::from_twice(twice); }

/// Independent Clebsch-Gordan oracle: explicit ladder-operator construction
/// of the coupled basis in the (j1 x j2) product space, no Racah formula.
/// Highest-weight states come from Gram-Schmidt in each top-M subspace with
/// the Condon-Shortley sign (coefficient of maximal m1 positive), the rest
/// from repeated application of J- = J1- + J2-.
class LadderOracle {
 public:
  LadderOracle(HalfInt j1, HalfInt j2) : j1_(j1), j2_(j2) {
    const int d1 = j1.twice() + 1, d2 = j2.twice() + 1;
    auto lower_amp = [](HalfInt j, HalfInt m) {
      // <j m-1| J- |j m> = sqrt(j(j+1) - m(m-1))
      double jj = j.to_double(), mm = m.to_double();
      return std::sqrt(jj * (jj + 1) - mm * (mm - 1));
    };
    for (int tJ = (j1 + j2).twice(); tJ >= std::abs((j1 - j2).twice()); tJ -= 2) {
      HalfInt J = ht(tJ);
      std::vector<double> top(d1 * d2, 0.0);
      if (tJ == (j1 + j2).twice()) {
        top[idx(j1_, j2_)] = 1.0;
      } else {
        // orthogonal complement in the M = J subspace, one dimension left
        std::vector<std::vector<double>> prev;
        for (int tJp = (j1 + j2).twice(); tJp > tJ; tJp -= 2)
          prev.push_back(states_.at({tJp, tJ}));
        // seed with the maximal-m1 product state, project out higher J
        HalfInt m1max = std::min(j1_, J + j2_);
        top[idx(m1max, J - m1max)] = 1.0;
        for (const auto& p : prev) {
          double dot = 0.0;
          for (int i = 0; i < d1 * d2; ++i) dot += p[i] * top[i];
          for (int i = 0; i < d1 * d2; ++i) top[i] -= dot * p[i];
        }
        double nrm = 0.0;
        for (double v : top) nrm += v * v;
        nrm = std::sqrt(nrm);
        double lead = top[idx(m1max, J - m1max)];
        double sgn = lead >= 0 ? 1.0 : -1.0;  // Condon-Shortley
        for (double& v : top) v /= sgn * nrm;
      }
      states_[{tJ, tJ}] = top;
      for (int tM = tJ; tM > -tJ; tM -= 2) {
        HalfInt M = ht(tM);
        const auto& cur = states_.at({tJ, tM});
        std::vector<double> nxt(d1 * d2, 0.0);
        for (int tm1 = -j1.twice(); tm1 <= j1.twice(); tm1 += 2)
          for (int tm2 = -j2.twice(); tm2 <= j2.twice(); tm2 += 2) {
            double amp = cur[idx(ht(tm1), ht(tm2))];
            if (amp == 0.0) continue;
            if (tm1 > -j1.twice())
              nxt[idx(ht(tm1 - 2), ht(tm2))] += amp * lower_amp(j1, ht(tm1));
            if (tm2 > -j2.twice())
              nxt[idx(ht(tm1), ht(tm2 - 2))] += amp * lower_amp(j2, ht(tm2));
          }
        double denom = lower_amp(J, M);
        for (double& v : nxt) v /= denom;
        states_[{tJ, tM - 2}] = nxt;
      }
    }
  }

  double cg(HalfInt m1, HalfInt m2, HalfInt J, HalfInt M) const {
    auto it = states_.find({J.twice(), M.twice()});
    if (it == states_.end()) return 0.0;
    if (!j1_.admits_projection(m1) || !j2_.admits_projection(m2)) return 0.0;
    return it->second[idx(m1, m2)];
  }

 private:
  int idx(HalfInt m1, HalfInt m2) const {
    return ((m1 + j1_).twice() / 2) * (j2_.twice() + 1) + (m2 + j2_).twice() / 2;
  }
  HalfInt j1_, j2_;
  std::map<std::pair<int, int>, std::vector<double>> states_;
};

/// Defining contraction of the 6j symbol out of four CG symbols, exact:
/// sum over projections of C^{j12}_{j1 j2} C^{J}_{j12 j3} C^{j23}_{j2 j3} C^{J}_{j1 j23}
///  = (-1)^{j1+j2+j3+J} sqrt((2 j12+1)(2 j23+1)) {j1 j2 j12; j3 J j23}.
SqrtRationalSum cg_contraction(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j12,
                               HalfInt j23, HalfInt J) {
  SqrtRationalSum sum;
  const HalfInt M = J;  // any valid total projection works; take the top one
  for (int tm1 = -j1.twice(); tm1 <= j1.twice(); tm1 += 2)
    for (int tm2 = -j2.twice(); tm2 <= j2.twice(); tm2 += 2) {
      HalfInt m1 = ht(tm1), m2 = ht(tm2);
      HalfInt m3 = M - m1 - m2;
      if (!j3.admits_projection(m3)) continue;
      auto t = clebsch_gordan(j1, m1, j2, m2, j12, m1 + m2) *
               clebsch_gordan(j12, m1 + m2, j3, m3, J, M) *
               clebsch_gordan(j2, m2, j3, m3, j23, m2 + m3) *
               clebsch_gordan(j1, m1, j23, m2 + m3, J, M);
      sum.add(t);
    }
  return sum;
}

void expect_sixj_matches_contraction(HalfInt j1, HalfInt j2, HalfInt j3,
                                     HalfInt j12, HalfInt j23, HalfInt J) {
  SignedSqrtRational expected =
      six_j(j1, j2, j12, j3, J, j23)
          .times_rational(BigRat(phase(j1 + j2 + j3 + J)))
          // * sqrt((2 j12 + 1)(2 j23 + 1))
          * SignedSqrtRational::sqrt_of(
                1, BigRat((j12.twice() + 1) * (j23.twice() + 1)));
  EXPECT_TRUE(cg_contraction(j1, j2, j3, j12, j23, J).equals(expected))
      << j1.str() << " " << j2.str() << " " << j3.str() << " " << j12.str()
      << " " << j23.str() << " " << J.str();
}

}  // namespace

TEST(ClebschGordan, FrozenValues) {
  // <1/2 1/2, 1/2 -1/2 | 0 0> = +sqrt(1/2)
  auto v = clebsch_gordan(ht(1), ht(1), ht(1), ht(-1), HalfInt(0), HalfInt(0));
  EXPECT_EQ(v, SignedSqrtRational::sqrt_of(1, BigRat(1, 2)));
  // stretched coupling is unity
  auto one = clebsch_gordan(HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(1),
                            HalfInt(2), HalfInt(2));
  EXPECT_EQ(one, SignedSqrtRational::from_rational(BigRat(1)));
  // m1 + m2 != M
  EXPECT_TRUE(clebsch_gordan(ht(1), ht(1), ht(1), ht(1), HalfInt(0), HalfInt(0))
                  .is_zero());
  // triangle violation
  EXPECT_TRUE(clebsch_gordan(HalfInt(1), HalfInt(0), HalfInt(1), HalfInt(0),
                             HalfInt(3), HalfInt(0)).is_zero());
}

TEST(ClebschGordan, MatchesLadderOracle) {
  for (int tj1 = 0; tj1 <= 6; ++tj1)
    for (int tj2 = 0; tj2 <= 6; ++tj2) {
      HalfInt j1 = ht(tj1), j2 = ht(tj2);
      LadderOracle oracle(j1, j2);
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
        for (int tM = -tJ; tM <= tJ; tM += 2)
          for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
            int tm2 = tM - tm1;
            if (std::abs(tm2) > tj2) continue;
            double exact = clebsch_gordan(j1, ht(tm1), j2, ht(tm2), ht(tJ), ht(tM))
                               .to_double();
            EXPECT_NEAR(exact, oracle.cg(ht(tm1), ht(tm2), ht(tJ), ht(tM)), 1e-12)
                << tj1 << " " << tj2 << " " << tJ << " " << tM << " " << tm1;
          }
    }
}

TEST(ClebschGordan, SwapSymmetryExact) {
  // C^{Jm}_{j1 m1, j2 m2} = (-1)^{j1+j2-J} C^{Jm}_{j2 m2, j1 m1}
  for (int tj1 = 0; tj1 <= 6; ++tj1)
    for (int tj2 = 0; tj2 <= 6; ++tj2)
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
          for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
            if (std::abs(tm1 + tm2) > tJ) continue;
            HalfInt j1 = ht(tj1), j2 = ht(tj2), J = ht(tJ);
            HalfInt m1 = ht(tm1), m2 = ht(tm2), M = ht(tm1 + tm2);
            auto a = clebsch_gordan(j1, m1, j2, m2, J, M);
            auto b = clebsch_gordan(j2, m2, j1, m1, J, M)
                         .times_rational(BigRat(phase(j1 + j2 - J)));
            EXPECT_EQ(a, b);
          }
}

TEST(SixJ, TriangleZeros) {
  EXPECT_TRUE(six_j(HalfInt(1), HalfInt(1), HalfInt(3), HalfInt(1), HalfInt(1),
                    HalfInt(1)).is_zero());
  EXPECT_TRUE(six_j(ht(1), ht(1), ht(1), ht(1), ht(1), ht(1)).is_zero());
}

TEST(SixJ, MatchesContractionOracleExhaustive) {
  // every argument combination with labels <= 2, exact comparison
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = std::abs(a - b); c <= std::min(a + b, 4); c += 2)
        for (int d = 0; d <= 4; ++d)
          for (int e = 0; e <= 4; ++e)
            for (int f = 0; f <= 4; ++f)
              expect_sixj_matches_contraction(ht(a), ht(b), ht(d), ht(c), ht(f),
                                              ht(e));
}

TEST(SixJ, SpecificValues) {
  // {1/2 1/2 0; 1/2 1/2 0} via its defining contraction
  expect_sixj_matches_contraction(ht(1), ht(1), ht(1), HalfInt(0), HalfInt(0),
                                  ht(1));
  // {S/2 S/2 j; S/2 S/2 N} for S=1, j=N=1
  expect_sixj_matches_contraction(ht(1), ht(1), ht(1), HalfInt(1), HalfInt(1),
                                  ht(1));
  EXPECT_EQ(six_j(ht(1), ht(1), HalfInt(1), ht(1), ht(1), HalfInt(1)),
            SignedSqrtRational::sqrt_of(1, BigRat(1, 36)));
}

TEST(SixJ, TetrahedralSymmetryExhaustive) {
  // column permutations and pairwise upper-lower flips, all labels <= 3
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int c = 0; c <= 6; ++c)
        for (int d = 0; d <= 6; ++d)
          for (int e = 0; e <= 6; ++e)
            for (int f = 0; f <= 6; ++f) {
              auto v = six_j(ht(a), ht(b), ht(c), ht(d), ht(e), ht(f));
              if (v.is_zero()) continue;  // zero cases carry no symmetry signal
              EXPECT_EQ(v, six_j(ht(b), ht(a), ht(c), ht(e), ht(d), ht(f)));
              EXPECT_EQ(v, six_j(ht(c), ht(b), ht(a), ht(f), ht(e), ht(d)));
              EXPECT_EQ(v, six_j(ht(d), ht(e), ht(c), ht(a), ht(b), ht(f)));
              EXPECT_EQ(v, six_j(ht(a), ht(e), ht(f), ht(d), ht(b), ht(c)));
            }
}

TEST(FMatrix, DefinitionAndZeros) {
  // F = (-1)^{J1-2J3-J4+N-J} (2J+1) {J1 J2 N; J4 J3 J}
  HalfInt h = ht(1);
  auto f = f_matrix(h, h, h, h, HalfInt(0), HalfInt(0));
  auto sj = six_j(h, h, HalfInt(0), h, h, HalfInt(0));
  EXPECT_EQ(f, sj.times_rational(BigRat(phase(HalfInt(0)))));
  // N violating the (J1, J2) triangle
  EXPECT_TRUE(f_matrix(ht(1), ht(1), ht(1), ht(1), HalfInt(3), HalfInt(1)).is_zero());
}

TEST(FMatrix, RecouplingRoundTrip) {
  // Dense-contraction recoupling matrix T between ((j1 j2) j3) and (j1 (j2 j3))
  // coupling orders; T must be orthogonal (round trip = identity) and agree
  // with the closed form (-1)^{j1+j2+j3+J} sqrt((2N+1)(2K+1)) {j1 j2 N; j3 J K},
  // which ties it to f_matrix by a dimension ratio.
  struct Case { int j1, j2, j3, J; };  // twice-values
  for (auto [tj1, tj2, tj3, tJ] : {Case{2, 1, 1, 2}, Case{2, 2, 2, 2},
                                   Case{3, 2, 1, 2}, Case{4, 2, 2, 4}}) {
    HalfInt j1 = ht(tj1), j2 = ht(tj2), j3 = ht(tj3), J = ht(tJ);
    std::vector<int> Ns, Ks;
    for (int tN = std::abs(tj1 - tj2); tN <= tj1 + tj2; tN += 2)
      if (std::abs(tN - tj3) <= tJ && tJ <= tN + tj3) Ns.push_back(tN);
    for (int tK = std::abs(tj2 - tj3); tK <= tj2 + tj3; tK += 2)
      if (std::abs(tj1 - tK) <= tJ && tJ <= tj1 + tK) Ks.push_back(tK);
    ASSERT_EQ(Ns.size(), Ks.size());
    const int n = static_cast<int>(Ns.size());

    // coupled tensors on the 3-spin test space, total projection M = J
    auto avec = [&](int tN) {
      std::map<std::array<int, 3>, double> v;
      for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
        for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
          int tm3 = tJ - tm1 - tm2;
          if (std::abs(tm3) > tj3) continue;
          double c = clebsch_gordan(j1, ht(tm1), j2, ht(tm2), ht(tN), ht(tm1 + tm2))
                         .to_double() *
                     clebsch_gordan(ht(tN), ht(tm1 + tm2), j3, ht(tm3), J, J)
                         .to_double();
          if (c != 0.0) v[{tm1, tm2, tm3}] = c;
        }
      return v;
    };
    auto bvec = [&](int tK) {
      std::map<std::array<int, 3>, double> v;
      for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2)
        for (int tm3 = -tj3; tm3 <= tj3; tm3 += 2) {
          int tm1 = tJ - tm2 - tm3;
          if (std::abs(tm1) > tj1) continue;
          double c = clebsch_gordan(j2, ht(tm2), j3, ht(tm3), ht(tK), ht(tm2 + tm3))
                         .to_double() *
                     clebsch_gordan(j1, ht(tm1), ht(tK), ht(tm2 + tm3), J, J)
                         .to_double();
          if (c != 0.0) v[{tm1, tm2, tm3}] = c;
        }
      return v;
    };

    std::vector<double> T(n * n, 0.0);
    for (int i = 0; i < n; ++i) {
      auto A = avec(Ns[i]);
      for (int k = 0; k < n; ++k) {
        double dot = 0.0;
        for (auto& [key, val] : bvec(Ks[k])) {
          auto it = A.find(key);
          if (it != A.end()) dot += it->second * val;
        }
        T[i * n + k] = dot;
        // closed form and its f_matrix expression
        double closed = phase(j1 + j2 + j3 + J) *
                        std::sqrt((Ns[i] + 1.0) * (Ks[k] + 1.0)) *
                        six_j(j1, j2, ht(Ns[i]), j3, J, ht(Ks[k])).to_double();
        EXPECT_NEAR(dot, closed, 1e-12);
        double viaF = f_matrix(j1, j2, J, j3, ht(Ns[i]), ht(Ks[k])).to_double() *
                      phase(j1 + j1 + j2 - J + ht(Ns[i]) - ht(Ks[k])) *
                      std::sqrt((Ns[i] + 1.0) / (Ks[k] + 1.0));
        EXPECT_NEAR(dot, viaF, 1e-12);
      }
    }
    // F-move then inverse F-move: T is orthogonal, so T T^t = 1 recovers the
    // original coupling tensor exactly.
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double dot = 0.0;
        for (int l = 0; l < n; ++l) dot += T[i * n + l] * T[k * n + l];
        EXPECT_NEAR(dot, i == k ? 1.0 : 0.0, 1e-12);
      }
  }
}

TEST(Orthogonality, ExhaustiveExact) {
  for (int tj1 = 0; tj1 <= 6; ++tj1)
    for (int tj2 = 0; tj2 <= 6; ++tj2)
      EXPECT_TRUE(cg_orthogonality_check(ht(tj1), ht(tj2))) << tj1 << " " << tj2;
}

TEST(SymbolCache, HitIsBitIdentical) {
  SymbolCache fresh_a;
  auto warm = clebsch_gordan(ht(3), ht(1), HalfInt(1), HalfInt(0), ht(3), ht(1));
  auto again = clebsch_gordan(ht(3), ht(1), HalfInt(1), HalfInt(0), ht(3), ht(1));
  auto fresh = clebsch_gordan(ht(3), ht(1), HalfInt(1), HalfInt(0), ht(3), ht(1), fresh_a);
  EXPECT_EQ(warm, again);
  EXPECT_EQ(warm, fresh);
}

TEST(SymbolCache, FactorialCap) {
  EXPECT_EQ(SymbolCache::global().factorial(0), BigInt(1));
  EXPECT_EQ(SymbolCache::global().factorial(5), BigInt(120));
  EXPECT_THROW(SymbolCache::global().factorial(kFactorialArgCap + 1),
               std::domain_error);
  EXPECT_THROW(SymbolCache::global().factorial(-1), std::domain_error);
}
