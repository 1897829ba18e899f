#pragma once

#include <iosfwd>
#include <vector>

#include "qmagic/qcore.hpp"
#include "qmagic/stabgen.hpp"

// Discrete Wigner representation built from product phase-point operators.
//
// Single-qubit phase-point operator at (q, p):
//   A(q,p) = (I + (-1)^p X + (-1)^(q+p) Y + (-1)^q Z) / 2
// and the n-qubit operator is the tensor product over qubits.  A flat index
// enumerates points lexicographically as the binary word q1 p1 q2 p2 ...,
// qubit 1 most significant, so each qubit contributes the point order
// (0,0), (0,1), (1,0), (1,1).  This mapping is pinned by golden tests that
// evaluate the trace formula directly.

namespace qmagic {

struct PhasePoint {
  // coords[k] = (q, p) for qubit k.
  std::vector<std::array<int, 2>> coords;

  int nqubits() const { return static_cast<int>(coords.size()); }
  int index() const;
  static PhasePoint from_index(int nqubits, int index);
};

struct WignerVector {
  int nqubits = 0;
  // Length 4^n, entries in flat index order.
  RVector values;
};

int phase_space_size(int nqubits);

CMatrix phase_point_operator(const PhasePoint& point);

// All 4^n operators in flat index order, cached per qubit count.
const std::vector<CMatrix>& phase_point_operators(int nqubits);

// W(alpha) = Tr(rho A_alpha) / 2^n.
WignerVector wigner(const DensityMatrix& rho);

// Same transform for an arbitrary Hermitian operator.
RVector wigner_coefficients(const CMatrix& op);

// Reconstruction sum_alpha w(alpha) A_alpha; Hermitian but not necessarily
// a density matrix.
CMatrix inverse_wigner(const WignerVector& w);
CMatrix inverse_wigner(const RVector& values, int nqubits);

double wigner_l1(const WignerVector& w);

// Entries strictly below -threshold, and the magnitude of their sum.
int negative_count(const WignerVector& w, double threshold = 1e-10);
double total_negativity(const WignerVector& w, double threshold = 1e-10);

// Fills the cached Wigner vector of every state in the set.
void attach_wigner(StabilizerSet& set);

// Largest Wigner l1 norm over the enumerated stabilizer states.
double max_stab_l1(const StabilizerSet& set);

// Shared enumerated set with Wigner vectors attached, built once per n.
const StabilizerSet& cached_stabilizer_set(int nqubits);

// CSV rows "q1,p1,...,qn,pn,value" with a header line.
void write_csv(const WignerVector& w, std::ostream& out);

}  // namespace qmagic
