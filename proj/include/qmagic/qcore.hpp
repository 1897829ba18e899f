#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

// Basic quantum objects on one to three qubits: states, Pauli strings,
// standard gates, random state sampling and the depolarizing channel.

namespace qmagic {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr int kMaxQubits = 3;

// Tolerances shared across the library.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdFloor = -1e-10;
inline constexpr double kUnitaryTol = 1e-10;
// Below this distance a state counts as stabilizer-polytope free and the
// tightness ratio is undefined.
inline constexpr double kFreeThreshold = 1e-6;

// Dimension 2^n for n qubits; rejects n outside [1, kMaxQubits].
int dim_for_qubits(int nqubits);

// Inverse of dim_for_qubits; rejects dimensions that are not 2, 4 or 8.
int qubits_for_dim(Eigen::Index dim);

// 2x2 constants.
const CMatrix& pauli_x();
const CMatrix& pauli_y();
const CMatrix& pauli_z();
const CMatrix& identity2();
const CMatrix& hadamard();
const CMatrix& phase_s();

// Kronecker product, left factor on the most significant qubit.
CMatrix kron(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

enum class PauliLetter : uint8_t { I, X, Y, Z };

// A signed multi-qubit Pauli operator, phase restricted to {1, -1, i, -i}.
struct PauliString {
  std::vector<PauliLetter> letters;
  Complex phase{1.0, 0.0};

  int nqubits() const { return static_cast<int>(letters.size()); }

  // Parses strings like "XX", "+ZI", "-Y", "iXZ", "-iYY".
  static PauliString from_string(const std::string& text);
  std::string to_string() const;
};

// Materializes the string as a dense matrix (phase times tensor of letters).
CMatrix pauli(const PauliString& p);

// Normalized pure state vector.
struct PureState {
  CVector amplitudes;
  int nqubits = 0;

  static PureState from_amplitudes(const CVector& amplitudes);
};

// Validated density operator: Hermitian, unit trace, eigenvalues above the
// numerical floor.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const CMatrix& m);
  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix pure(const CVector& amplitudes);

  const CMatrix& matrix() const { return matrix_; }
  int nqubits() const { return nqubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  DensityMatrix(CMatrix m, int nqubits);
  CMatrix matrix_;
  int nqubits_;
};

// Haar random pure state; deterministic for a fixed seed, no global RNG.
PureState haar_random_pure(int nqubits, uint64_t seed);

// Single-qubit pure state with Bloch vector
// (sin(polar)cos(azimuth), sin(polar)sin(azimuth), cos(polar)).
PureState bloch_state(double polar, double azimuth);

// Single-qubit magic state with Bloch vector (1/sqrt2, 1/sqrt2, 0).
DensityMatrix t_state();

// (1-p) rho + p I/2^n for p in [0, 1].
DensityMatrix depolarize(const DensityMatrix& rho, double p);

// U rho U^dagger; rejects non-unitary U.
DensityMatrix apply_unitary(const DensityMatrix& rho, const CMatrix& u);
PureState apply_unitary(const PureState& psi, const CMatrix& u);

// The 24 single-qubit Clifford unitaries, fixed global phase, fixed order.
const std::vector<CMatrix>& single_qubit_cliffords();

// Derives an independent stream seed from a base seed (splitmix64 step).
uint64_t mix_seed(uint64_t seed, uint64_t stream);

}  // namespace qmagic
