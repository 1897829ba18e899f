#include "qmagic/stabgen.hpp"

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qmagic {

namespace {

// A symplectic vector packs x bits above z bits: for qubit k of n, x_k sits
// at bit 2n-1-k and z_k at bit n-1-k.  Row reduction pivots on the highest
// set bit, so tableaux eliminate X columns first.

int bit_x(uint32_t v, int k, int n) { return (v >> (2 * n - 1 - k)) & 1; }
int bit_z(uint32_t v, int k, int n) { return (v >> (n - 1 - k)) & 1; }

int symplectic_product(uint32_t a, uint32_t b, int n) {
  const uint32_t zmask = (1u << n) - 1;
  const uint32_t xa = a >> n, za = a & zmask;
  const uint32_t xb = b >> n, zb = b & zmask;
  return (std::popcount(xa & zb) + std::popcount(za & xb)) & 1;
}

std::vector<uint32_t> row_reduce(std::vector<uint32_t> rows) {
  std::sort(rows.begin(), rows.end(), std::greater<>());
  for (size_t i = 0; i < rows.size(); ++i) {
    // Re-sort keeps the highest remaining pivot on top.
    std::sort(rows.begin() + i, rows.end(), std::greater<>());
    if (rows[i] == 0) throw std::logic_error("dependent tableau rows");
    const int pivot = std::bit_width(rows[i]) - 1;
    for (size_t j = 0; j < rows.size(); ++j) {
      if (j != i && ((rows[j] >> pivot) & 1)) rows[j] ^= rows[i];
    }
  }
  std::sort(rows.begin(), rows.end(), std::greater<>());
  return rows;
}

uint64_t pack_rows(const std::vector<uint32_t>& rows) {
  uint64_t key = 0;
  for (uint32_t r : rows) key = (key << 8) | r;
  return key;
}

void collect_subspaces(int n, std::vector<uint32_t>& basis, uint64_t span_mask,
                       uint32_t start, std::set<uint64_t>& found) {
  if (static_cast<int>(basis.size()) == n) {
    found.insert(pack_rows(row_reduce(basis)));
    return;
  }
  const uint32_t limit = 1u << (2 * n);
  for (uint32_t v = start; v < limit; ++v) {
    if ((span_mask >> v) & 1) continue;
    bool ok = true;
    for (uint32_t b : basis) {
      if (symplectic_product(v, b, n)) { ok = false; break; }
    }
    if (!ok) continue;
    uint64_t extended = span_mask;
    for (uint32_t s = 0; s < limit; ++s) {
      if ((span_mask >> s) & 1) extended |= uint64_t{1} << (s ^ v);
    }
    basis.push_back(v);
    collect_subspaces(n, basis, extended, v + 1, found);
    basis.pop_back();
  }
}

std::vector<uint32_t> unpack_rows(uint64_t key, int n) {
  std::vector<uint32_t> rows(n);
  for (int i = n - 1; i >= 0; --i) {
    rows[i] = key & 0xff;
    key >>= 8;
  }
  return rows;
}

PauliString row_to_pauli(uint32_t row, int n, double sign) {
  PauliString p;
  p.phase = sign;
  for (int k = 0; k < n; ++k) {
    const int x = bit_x(row, k, n), z = bit_z(row, k, n);
    if (x && z) p.letters.push_back(PauliLetter::Y);
    else if (x) p.letters.push_back(PauliLetter::X);
    else if (z) p.letters.push_back(PauliLetter::Z);
    else p.letters.push_back(PauliLetter::I);
  }
  return p;
}

CVector joint_eigenvector(const std::vector<CMatrix>& generators, int dim) {
  CMatrix projector = CMatrix::Identity(dim, dim);
  for (const CMatrix& g : generators) {
    projector = 0.5 * (projector + projector * g);
  }
  // Rank-one projector; its dominant column is the state.
  Eigen::Index best = 0;
  projector.colwise().norm().maxCoeff(&best);
  CVector psi = projector.col(best);
  psi /= psi.norm();
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (std::abs(psi(i)) > 1e-8) {
      psi *= std::conj(psi(i)) / std::abs(psi(i));
      break;
    }
  }
  return psi;
}

void check_state(const StabilizerState& s) {
  for (const PauliString& g : s.generators) {
    const double defect =
        (pauli(g) * s.vector - s.vector).cwiseAbs().maxCoeff();
    if (defect > 1e-10) {
      throw std::logic_error("stabilizer eigenvector check failed");
    }
  }
}

constexpr const char* kCacheHeader = "qmagic stabilizer cache v1";

std::filesystem::path cache_file(int nqubits,
                                 const std::filesystem::path& cache_dir) {
  return cache_dir / ("stabilizers_n" + std::to_string(nqubits) + ".txt");
}

bool load_cache(int nqubits, const std::filesystem::path& path,
                StabilizerSet& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line) || line != kCacheHeader) return false;
  int n = 0, count = 0;
  if (!(in >> n >> count) || n != nqubits ||
      count != stabilizer_count(nqubits)) {
    return false;
  }
  const int dim = dim_for_qubits(nqubits);
  out.nqubits = nqubits;
  out.states.clear();
  out.states.reserve(count);
  for (int s = 0; s < count; ++s) {
    StabilizerState st;
    st.nqubits = nqubits;
    if (!(in >> st.signs)) return false;
    for (int r = 0; r < nqubits; ++r) {
      uint32_t row = 0;
      if (!(in >> row)) return false;
      st.tableau.push_back(row);
      const double sign = ((st.signs >> r) & 1) ? -1.0 : 1.0;
      st.generators.push_back(row_to_pauli(row, nqubits, sign));
    }
    st.vector.resize(dim);
    for (int a = 0; a < dim; ++a) {
      double re = 0, im = 0;
      if (!(in >> re >> im)) return false;
      st.vector(a) = Complex(re, im);
    }
    if (std::abs(st.vector.norm() - 1.0) > 1e-9) return false;
    out.states.push_back(std::move(st));
  }
  try {
    for (const StabilizerState& st : out.states) check_state(st);
  } catch (const std::logic_error&) {
    return false;
  }
  return true;
}

void save_cache(const StabilizerSet& set, const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream outf(path);
  if (!outf) return;
  outf << kCacheHeader << "\n" << set.nqubits << " " << set.size() << "\n";
  char buf[128];
  for (const StabilizerState& st : set.states) {
    outf << st.signs;
    for (uint32_t row : st.tableau) outf << " " << row;
    outf << "\n";
    for (Eigen::Index a = 0; a < st.vector.size(); ++a) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", st.vector(a).real(),
                    st.vector(a).imag());
      outf << buf;
    }
  }
}

}  // namespace

int stabilizer_count(int nqubits) {
  const int dim = dim_for_qubits(nqubits);
  int count = dim;
  for (int k = 0; k < nqubits; ++k) {
    count *= (1 << (nqubits - k)) + 1;
  }
  return count;
}

StabilizerSet enumerate_stabilizers(int nqubits) {
  const int dim = dim_for_qubits(nqubits);
  std::set<uint64_t> subspaces;
  std::vector<uint32_t> basis;
  collect_subspaces(nqubits, basis, 1, 1, subspaces);
  const int expected_groups = stabilizer_count(nqubits) >> nqubits;
  if (static_cast<int>(subspaces.size()) != expected_groups) {
    throw std::logic_error("isotropic subspace count mismatch");
  }

  StabilizerSet set;
  set.nqubits = nqubits;
  set.states.reserve(stabilizer_count(nqubits));
  for (uint64_t key : subspaces) {
    const std::vector<uint32_t> rows = unpack_rows(key, nqubits);
    for (uint32_t signs = 0; signs < (1u << nqubits); ++signs) {
      StabilizerState st;
      st.nqubits = nqubits;
      st.tableau = rows;
      st.signs = signs;
      std::vector<CMatrix> mats;
      for (int r = 0; r < nqubits; ++r) {
        const double sign = ((signs >> r) & 1) ? -1.0 : 1.0;
        st.generators.push_back(row_to_pauli(rows[r], nqubits, sign));
        mats.push_back(pauli(st.generators.back()));
      }
      st.vector = joint_eigenvector(mats, dim);
      check_state(st);
      set.states.push_back(std::move(st));
    }
  }
  if (set.size() != stabilizer_count(nqubits)) {
    throw std::logic_error("stabilizer state count mismatch");
  }
  return set;
}

StabilizerSet load_or_enumerate(int nqubits,
                                const std::filesystem::path& cache_dir) {
  const std::filesystem::path path = cache_file(nqubits, cache_dir);
  StabilizerSet set;
  if (load_cache(nqubits, path, set)) return set;
  set = enumerate_stabilizers(nqubits);
  save_cache(set, path);
  return set;
}

bool is_stabilizer_vector(const CVector& amplitudes, const StabilizerSet& set,
                          double tol) {
  if (amplitudes.size() != (Eigen::Index{1} << set.nqubits)) {
    throw std::invalid_argument("state dimension does not match the set");
  }
  for (const StabilizerState& st : set.states) {
    if (std::abs(st.vector.dot(amplitudes)) >= 1.0 - tol) return true;
  }
  return false;
}

}  // namespace qmagic
