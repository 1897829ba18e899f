#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "qmagic/qcore.hpp"

// Exhaustive enumeration of pure stabilizer states for one to three qubits.
//
// Stabilizer groups are enumerated as maximal isotropic subspaces of the
// binary symplectic space, one canonical row-reduced tableau per subspace,
// combined with every sign assignment on the canonical generators.  The
// counts are 6, 60 and 1080 for n = 1, 2, 3.

namespace qmagic {

struct StabilizerState {
  int nqubits = 0;
  // Canonical generators, one per tableau row, phases in {+1, -1}.
  std::vector<PauliString> generators;
  // Joint +1 eigenvector, first significant amplitude real positive.
  CVector vector;
  // Tableau rows as packed binary symplectic vectors plus row sign bits;
  // together these form the dedup and ordering key.
  std::vector<uint32_t> tableau;
  uint32_t signs = 0;
  // Discrete Wigner vector, empty until filled by attach_wigner.
  RVector wigner;
};

struct StabilizerSet {
  int nqubits = 0;
  std::vector<StabilizerState> states;

  int size() const { return static_cast<int>(states.size()); }
};

// Expected number of stabilizer states: 2^n prod_k (2^(n-k) + 1).
int stabilizer_count(int nqubits);

// Enumerates the full set in canonical tableau order.
StabilizerSet enumerate_stabilizers(int nqubits);

// Loads the set from a versioned cache file under cache_dir, regenerating
// and rewriting the cache when the file is missing, stale or invalid.
StabilizerSet load_or_enumerate(int nqubits,
                                const std::filesystem::path& cache_dir);

// True when the vector matches some enumerated state up to global phase.
bool is_stabilizer_vector(const CVector& amplitudes, const StabilizerSet& set,
                          double tol = 1e-9);

}  // namespace qmagic
