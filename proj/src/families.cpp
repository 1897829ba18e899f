#include "qmagic/families.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmagic {

namespace {

constexpr double kBoundaryTol = 1e-12;
const Complex kI{0.0, 1.0};

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

CVector codespace_ket(Complex a00, Complex a11) {
  CVector v = CVector::Zero(4);
  v(0) = a00;
  v(3) = a11;
  return v;
}

}  // namespace

std::string family_name(Family family) {
  switch (family) {
    case Family::kRy: return "ry";
    case Family::kRx: return "rx";
    case Family::kBellRz: return "brz";
  }
  throw std::logic_error("unknown family");
}

Family family_from_string(const std::string& name) {
  if (name == "ry") return Family::kRy;
  if (name == "rx") return Family::kRx;
  if (name == "brz") return Family::kBellRz;
  throw std::invalid_argument("unknown family: " + name);
}

const LogicalFrame& LogicalFrame::repetition() {
  static const LogicalFrame frame = [] {
    LogicalFrame f;
    f.xl = kron(pauli_x(), pauli_x());
    f.yl = kron(pauli_y(), pauli_x());
    f.zl = kron(pauli_z(), identity2());
    f.code_stabilizer = kron(pauli_z(), pauli_z());
    return f;
  }();
  return frame;
}

PureState family_state(Family family, double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("theta must be finite");
  }
  const bool brz = family == Family::kBellRz;
  if (brz) {
    if (theta < 0.0 || theta >= 2.0 * std::numbers::pi) {
      throw std::invalid_argument("BellRz theta must be in [0, 2 pi)");
    }
  } else if (theta < 0.0 || theta > std::numbers::pi) {
    throw std::invalid_argument("theta must be in [0, pi]");
  }
  CVector amps;
  switch (family) {
    case Family::kRy:
      amps = codespace_ket(std::cos(theta / 2.0), std::sin(theta / 2.0));
      break;
    case Family::kRx:
      amps = codespace_ket(std::cos(theta / 2.0),
                           -kI * std::sin(theta / 2.0));
      break;
    case Family::kBellRz:
      amps = codespace_ket(1.0 / std::numbers::sqrt2,
                           std::exp(kI * theta) / std::numbers::sqrt2);
      break;
  }
  PureState psi;
  psi.amplitudes = std::move(amps);
  psi.nqubits = 2;
  return psi;
}

ClosedForm closed_form(Family family, double theta) {
  const double s = std::abs(std::sin(theta));
  const double c = std::abs(std::cos(theta));
  ClosedForm form;
  form.gamma = s + c;
  form.c = family == Family::kRx ? (s + c - 1.0) / 2.0 : s + c - 1.0;
  if (form.c > kFreeThreshold) {
    form.kappa = family == Family::kRx ? 2.0 : 1.0;
  }
  return form;
}

CMatrix closed_form_witness(Family family, double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  if (std::abs(s) <= kBoundaryTol || std::abs(c) <= kBoundaryTol) {
    throw std::invalid_argument("theta sits on a witness sign boundary");
  }
  const LogicalFrame& frame = LogicalFrame::repetition();
  switch (family) {
    case Family::kRy:
      return sign_of(c) * frame.zl + frame.xl;
    case Family::kRx:
      return 0.5 * (sign_of(c) * frame.zl - sign_of(s) * frame.yl);
    case Family::kBellRz:
      return sign_of(c) * frame.xl + sign_of(s) * frame.yl;
  }
  throw std::logic_error("unknown family");
}

WignerVector brz_wigner_closed_form(double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  Eigen::Matrix4d table;
  table << 1 + s, 1 - s, c, -c,
           1 - s, 1 + s, -c, c,
           c, -c, 1 - s, 1 + s,
           -c, c, 1 + s, 1 - s;
  WignerVector w;
  w.nqubits = 2;
  w.values.resize(16);
  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 4; ++col) {
      w.values(4 * row + col) = table(row, col) / 8.0;
    }
  }
  return w;
}

std::array<double, 3> logical_bloch(const DensityMatrix& rho) {
  if (rho.nqubits() != 2) {
    throw std::invalid_argument("logical frame needs a two-qubit state");
  }
  const LogicalFrame& frame = LogicalFrame::repetition();
  const CMatrix projector =
      0.5 * (CMatrix::Identity(4, 4) + frame.code_stabilizer);
  const double support =
      (projector * rho.matrix() * projector).trace().real();
  if (support < 1.0 - 1e-9) {
    throw std::invalid_argument("state is not supported on the codespace");
  }
  auto expect = [&](const CMatrix& op) {
    const Complex v = (op * rho.matrix()).trace();
    if (std::abs(v.imag()) > 1e-9) {
      throw std::logic_error("logical expectation must be real");
    }
    return v.real();
  };
  return {expect(frame.xl), expect(frame.yl), expect(frame.zl)};
}

DensityMatrix correctable_error_roundtrip(const DensityMatrix& rho,
                                          const PauliString& error) {
  if (rho.nqubits() != 2 || error.nqubits() != 2) {
    throw std::invalid_argument("roundtrip needs two-qubit state and error");
  }
  if (error.phase != Complex{1, 0} && error.phase != Complex{-1, 0}) {
    throw std::invalid_argument("error phase must be +1 or -1");
  }
  const LogicalFrame& frame = LogicalFrame::repetition();
  const CMatrix projector =
      0.5 * (CMatrix::Identity(4, 4) + frame.code_stabilizer);
  if ((projector * rho.matrix() * projector).trace().real() < 1.0 - 1e-9) {
    throw std::invalid_argument("state is not supported on the codespace");
  }

  const CMatrix e = pauli(error);
  const CMatrix comm = e * frame.code_stabilizer - frame.code_stabilizer * e;
  const bool anticommutes = comm.cwiseAbs().maxCoeff() > 1e-9;
  if (!anticommutes) {
    // Allowed only when the error acts as a phase on the codespace.
    const CMatrix restricted = projector * e * projector;
    const Complex scale = restricted.trace() / 2.0;
    if (std::abs(std::abs(scale) - 1.0) > 1e-9 ||
        (restricted - scale * projector).cwiseAbs().maxCoeff() > 1e-9) {
      throw std::invalid_argument(
          "error commutes with the stabilizer but is not correctable");
    }
    return rho;
  }

  const CMatrix corrupted = e * rho.matrix() * e.adjoint();
  const CMatrix minus_projector =
      0.5 * (CMatrix::Identity(4, 4) - frame.code_stabilizer);
  const double syndrome = (minus_projector * corrupted).trace().real();
  if (std::abs(syndrome - 1.0) > 1e-9) {
    throw std::logic_error("syndrome measurement was not deterministic");
  }
  const CMatrix restored = e.adjoint() * corrupted * e;
  return DensityMatrix::from_matrix(restored);
}

DensityMatrix logical_depolarize(const DensityMatrix& rho, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("depolarizing strength must be in [0, 1]");
  }
  if (rho.nqubits() != 2) {
    throw std::invalid_argument("logical frame needs a two-qubit state");
  }
  const LogicalFrame& frame = LogicalFrame::repetition();
  const CMatrix projector =
      0.5 * (CMatrix::Identity(4, 4) + frame.code_stabilizer);
  const double support =
      (projector * rho.matrix() * projector).trace().real();
  if (support < 1.0 - 1e-9) {
    throw std::invalid_argument("state is not supported on the codespace");
  }
  const CMatrix mixed = 0.5 * projector;
  return DensityMatrix::from_matrix((1.0 - p) * rho.matrix() + p * mixed);
}

double critical_noise(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("theta must be finite");
  }
  const double norm = std::abs(std::sin(theta)) + std::abs(std::cos(theta));
  return 1.0 - 1.0 / norm;
}

std::vector<std::pair<double, CMatrix>> ry_codespace_decomposition(
    double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2.0)) {
    throw std::invalid_argument("decomposition holds for theta in (0, pi/2)");
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const CVector zero_l = codespace_ket(1.0, 0.0);
  const CVector plus_l =
      codespace_ket(1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2);
  const CVector minus_l =
      codespace_ket(1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2);
  return {
      {c, zero_l * zero_l.adjoint()},
      {(1.0 - c + s) / 2.0, plus_l * plus_l.adjoint()},
      {-(c + s - 1.0) / 2.0, minus_l * minus_l.adjoint()},
  };
}

}  // namespace qmagic
