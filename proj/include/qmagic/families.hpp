#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qmagic/phasespace.hpp"
#include "qmagic/qcore.hpp"

// One-parameter state families in the two-qubit repetition code span
// {|00>, |11>}, their closed-form magic values and dual witnesses, and the
// error-correction plumbing of the code.

namespace qmagic {

enum class Family { kRy, kRx, kBellRz };

std::string family_name(Family family);
Family family_from_string(const std::string& name);

// Logical operators of the repetition code with stabilizer Z x Z:
// X_L = X x X, Y_L = Y x X, Z_L = Z x I.
struct LogicalFrame {
  CMatrix xl, yl, zl, code_stabilizer;

  static const LogicalFrame& repetition();
};

// Ry:      cos(t/2)|00> + sin(t/2)|11>,        t in [0, pi]
// Rx:      cos(t/2)|00> - i sin(t/2)|11>,      t in [0, pi]
// BellRz:  (|00> + e^{it}|11>) / sqrt2,        t in [0, 2 pi)
PureState family_state(Family family, double theta);

struct ClosedForm {
  double c = 0.0;
  double gamma = 1.0;
  std::optional<double> kappa;
};

ClosedForm closed_form(Family family, double theta);

// Adaptive dual witness of the family; rejects theta within 1e-12 of a
// sign-flip boundary (sin or cos vanishing).
CMatrix closed_form_witness(Family family, double theta);

// Closed-form Wigner vector of the BellRz state.  Rows of the underlying
// 4x4 table follow qubit 1, columns qubit 2, matching the flat index order
// of the phase-space module.
WignerVector brz_wigner_closed_form(double theta);

// (Tr X_L rho, Tr Y_L rho, Tr Z_L rho); requires codespace support.
std::array<double, 3> logical_bloch(const DensityMatrix& rho);

// Applies the error, checks the deterministic syndrome, applies the
// recovery, and returns the restored state.  Errors commuting with the
// stabilizer are accepted only when they act as identity on the codespace.
DensityMatrix correctable_error_roundtrip(const DensityMatrix& rho,
                                          const PauliString& error);

// Depolarizing channel of the encoded qubit: mixes toward the maximally
// mixed codespace state (|00><00| + |11><11|) / 2, scaling the logical Bloch
// vector by 1 - p.  Requires codespace support.
DensityMatrix logical_depolarize(const DensityMatrix& rho, double p);

// Logical depolarizing strength above which the family state loses its
// magic: 1 - 1/(|sin| + |cos|), zero at stabilizer points.
double critical_noise(double theta);

// Exact three-term codespace decomposition of the Ry state for theta in
// (0, pi/2); coefficients sum to one with l1 weight sin + cos.
std::vector<std::pair<double, CMatrix>> ry_codespace_decomposition(
    double theta);

}  // namespace qmagic
