#pragma once

#include "vbsneg/half_int.hpp"

#include <stdexcept>
#include <string>

namespace vbsneg {

enum class Boundary {
  Periodic,       // trace over the auxiliary bond (Eq. tr(g...g))
  SpinHalfEdges,  // free spin-S/2 particles at both chain ends, traced out
  GeneralTensors  // caller-supplied boundary contraction of the X tensor
};

inline std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::Periodic: return "pbc";
    case Boundary::SpinHalfEdges: return "edges";
    case Boundary::GeneralTensors: return "general";
  }
  return "?";
}

/// Partition of the chain into consecutive regions 1, A, 2, B, 3.
/// For SpinHalfEdges the edge particles sit outside regions 1/3 and are
/// always traced; the negativity then does not depend on L1, L3 (only the
/// singlet channel passes a traced edge spin).
struct ChainSpec {
  HalfInt S;
  int L1 = 0, LA = 1, L2 = 0, LB = 1, L3 = 0;
  Boundary boundary = Boundary::Periodic;

  int total_length() const { return L1 + LA + L2 + LB + L3; }
  bool adjacent() const { return L1 == 0 && L2 == 0 && L3 == 0; }

  void validate() const {
    if (!S.is_integer() || S.twice() < 2)
      throw std::invalid_argument("spin S must be a positive integer, got " + S.str());
    if (LA < 1 || LB < 1)
      throw std::invalid_argument("block lengths LA, LB must be >= 1");
    if (L1 < 0 || L2 < 0 || L3 < 0)
      throw std::invalid_argument("gap lengths must be >= 0");
    if (boundary == Boundary::Periodic && total_length() < 2)
      throw std::invalid_argument("periodic chain needs at least 2 sites");
  }

  int spin() const { return S.twice() / 2; }
};

}  // namespace vbsneg
