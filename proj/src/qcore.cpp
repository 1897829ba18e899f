#include "qmagic/qcore.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qmagic {

namespace {

CMatrix make2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const Complex kI{0.0, 1.0};

}  // namespace

int dim_for_qubits(int nqubits) {
  if (nqubits < 1 || nqubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be between 1 and 3");
  }
  return 1 << nqubits;
}

int qubits_for_dim(Eigen::Index dim) {
  for (int n = 1; n <= kMaxQubits; ++n) {
    if (dim == (Eigen::Index{1} << n)) return n;
  }
  throw std::invalid_argument("dimension must be 2, 4 or 8");
}

const CMatrix& pauli_x() {
  static const CMatrix m = make2(0, 1, 1, 0);
  return m;
}

const CMatrix& pauli_y() {
  static const CMatrix m = make2(0, -kI, kI, 0);
  return m;
}

const CMatrix& pauli_z() {
  static const CMatrix m = make2(1, 0, 0, -1);
  return m;
}

const CMatrix& identity2() {
  static const CMatrix m = CMatrix::Identity(2, 2);
  return m;
}

const CMatrix& hadamard() {
  static const CMatrix m = make2(1, 1, 1, -1) / std::numbers::sqrt2;
  return m;
}

const CMatrix& phase_s() {
  static const CMatrix m = make2(1, 0, 0, kI);
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

PauliString PauliString::from_string(const std::string& text) {
  PauliString p;
  size_t pos = 0;
  double sign = 1.0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    sign = text[pos] == '-' ? -1.0 : 1.0;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    p.phase = sign * kI;
    ++pos;
  } else {
    p.phase = sign;
  }
  for (; pos < text.size(); ++pos) {
    switch (text[pos]) {
      case 'I': p.letters.push_back(PauliLetter::I); break;
      case 'X': p.letters.push_back(PauliLetter::X); break;
      case 'Y': p.letters.push_back(PauliLetter::Y); break;
      case 'Z': p.letters.push_back(PauliLetter::Z); break;
      default:
        throw std::invalid_argument("invalid Pauli letter in " + text);
    }
  }
  if (p.letters.empty() || p.nqubits() > kMaxQubits) {
    throw std::invalid_argument("Pauli string must have 1 to 3 letters");
  }
  return p;
}

std::string PauliString::to_string() const {
  std::string out;
  if (phase == Complex{1, 0}) out += "+";
  else if (phase == Complex{-1, 0}) out += "-";
  else if (phase == kI) out += "+i";
  else if (phase == -kI) out += "-i";
  else throw std::logic_error("Pauli phase must be a fourth root of unity");
  for (PauliLetter l : letters) {
    out += "IXYZ"[static_cast<int>(l)];
  }
  return out;
}

CMatrix pauli(const PauliString& p) {
  if (p.letters.empty() || p.nqubits() > kMaxQubits) {
    throw std::invalid_argument("Pauli string must have 1 to 3 letters");
  }
  if (std::abs(std::abs(p.phase) - 1.0) > 1e-12 ||
      (std::abs(p.phase.real()) > 1e-12 && std::abs(p.phase.imag()) > 1e-12)) {
    throw std::invalid_argument("Pauli phase must be a fourth root of unity");
  }
  CMatrix out = CMatrix::Identity(1, 1);
  for (PauliLetter l : p.letters) {
    const CMatrix* factor = nullptr;
    switch (l) {
      case PauliLetter::I: factor = &identity2(); break;
      case PauliLetter::X: factor = &pauli_x(); break;
      case PauliLetter::Y: factor = &pauli_y(); break;
      case PauliLetter::Z: factor = &pauli_z(); break;
    }
    out = kron(out, *factor);
  }
  return p.phase * out;
}

PureState PureState::from_amplitudes(const CVector& amplitudes) {
  PureState psi;
  psi.nqubits = qubits_for_dim(amplitudes.size());
  const double norm = amplitudes.norm();
  if (!std::isfinite(norm) || norm < 1e-12) {
    throw std::invalid_argument("state vector must be nonzero and finite");
  }
  if (std::abs(norm - 1.0) > 1e-9) {
    throw std::invalid_argument("state vector must be normalized");
  }
  psi.amplitudes = amplitudes;
  return psi;
}

DensityMatrix::DensityMatrix(CMatrix m, int nqubits)
    : matrix_(std::move(m)), nqubits_(nqubits) {}

DensityMatrix DensityMatrix::from_matrix(const CMatrix& m) {
  const int n = qubits_for_dim(m.rows());
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  if (!is_hermitian(m)) {
    throw std::invalid_argument("density matrix must be Hermitian");
  }
  if (std::abs(m.trace().real() - 1.0) > kTraceTol ||
      std::abs(m.trace().imag()) > kTraceTol) {
    throw std::invalid_argument("density matrix must have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kPsdFloor) {
    throw std::invalid_argument("density matrix must be positive semidefinite");
  }
  return DensityMatrix(m, n);
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  CMatrix m = psi.amplitudes * psi.amplitudes.adjoint();
  return DensityMatrix(std::move(m), psi.nqubits);
}

DensityMatrix DensityMatrix::pure(const CVector& amplitudes) {
  return pure(PureState::from_amplitudes(amplitudes));
}

namespace {

// Uniform double in (0, 1), deterministic across platforms.
double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller pair; only the cosine branch is consumed per call pair.
double gaussian(std::mt19937_64& rng) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

PureState haar_random_pure(int nqubits, uint64_t seed) {
  const int dim = dim_for_qubits(nqubits);
  std::mt19937_64 rng(seed);
  CVector amps(dim);
  for (int k = 0; k < dim; ++k) {
    amps(k) = Complex(gaussian(rng), gaussian(rng));
  }
  amps /= amps.norm();
  PureState psi;
  psi.amplitudes = std::move(amps);
  psi.nqubits = nqubits;
  return psi;
}

PureState bloch_state(double polar, double azimuth) {
  CVector amps(2);
  amps(0) = std::cos(polar / 2.0);
  amps(1) = std::exp(kI * azimuth) * std::sin(polar / 2.0);
  PureState psi;
  psi.amplitudes = std::move(amps);
  psi.nqubits = 1;
  return psi;
}

DensityMatrix t_state() {
  return DensityMatrix::pure(
      bloch_state(std::numbers::pi / 2.0, std::numbers::pi / 4.0));
}

DensityMatrix depolarize(const DensityMatrix& rho, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("depolarizing strength must be in [0, 1]");
  }
  const Eigen::Index d = rho.dim();
  CMatrix out = (1.0 - p) * rho.matrix() +
                (p / static_cast<double>(d)) * CMatrix::Identity(d, d);
  return DensityMatrix::from_matrix(out);
}

namespace {

void require_unitary(const CMatrix& u, Eigen::Index dim) {
  if (u.rows() != dim || u.cols() != dim) {
    throw std::invalid_argument("operator dimension mismatch");
  }
  const double defect =
      (u.adjoint() * u - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (defect > kUnitaryTol) {
    throw std::invalid_argument("operator is not unitary");
  }
}

}  // namespace

DensityMatrix apply_unitary(const DensityMatrix& rho, const CMatrix& u) {
  require_unitary(u, rho.dim());
  return DensityMatrix::from_matrix(u * rho.matrix() * u.adjoint());
}

PureState apply_unitary(const PureState& psi, const CMatrix& u) {
  require_unitary(u, psi.amplitudes.size());
  PureState out;
  out.amplitudes = u * psi.amplitudes;
  out.nqubits = psi.nqubits;
  return out;
}

namespace {

// Global-phase canonical form: first entry of significant modulus is made
// real positive, remaining entries rounded for use as a dedup key.
std::string clifford_key(const CMatrix& u) {
  Complex phase{1.0, 0.0};
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const Complex v = u(i / 2, i % 2);
    if (std::abs(v) > 1e-8) {
      phase = std::conj(v) / std::abs(v);
      break;
    }
  }
  std::string key;
  key.reserve(64);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const Complex v = phase * u(i / 2, i % 2);
    const long re = std::lround(v.real() * 1e6);
    const long im = std::lround(v.imag() * 1e6);
    key += std::to_string(re) + "," + std::to_string(im) + ";";
  }
  return key;
}

}  // namespace

const std::vector<CMatrix>& single_qubit_cliffords() {
  static const std::vector<CMatrix> group = [] {
    std::vector<CMatrix> elements{CMatrix::Identity(2, 2)};
    std::vector<std::string> keys{clifford_key(elements[0])};
    const std::array<CMatrix, 2> generators{hadamard(), phase_s()};
    // Breadth-first closure under right multiplication by H and S.
    for (size_t head = 0; head < elements.size(); ++head) {
      for (const CMatrix& g : generators) {
        const CMatrix candidate = elements[head] * g;
        const std::string key = clifford_key(candidate);
        bool seen = false;
        for (const std::string& k : keys) {
          if (k == key) { seen = true; break; }
        }
        if (!seen) {
          elements.push_back(candidate);
          keys.push_back(key);
        }
      }
    }
    if (elements.size() != 24) {
      throw std::logic_error("single-qubit Clifford closure must have size 24");
    }
    return elements;
  }();
  return group;
}

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace qmagic
