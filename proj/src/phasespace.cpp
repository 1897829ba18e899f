#include "qmagic/phasespace.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace qmagic {

int phase_space_size(int nqubits) {
  dim_for_qubits(nqubits);
  return 1 << (2 * nqubits);
}

int PhasePoint::index() const {
  int idx = 0;
  for (const auto& [q, p] : coords) {
    idx = (idx << 2) | (q << 1) | p;
  }
  return idx;
}

PhasePoint PhasePoint::from_index(int nqubits, int index) {
  if (index < 0 || index >= phase_space_size(nqubits)) {
    throw std::invalid_argument("phase-space index out of range");
  }
  PhasePoint point;
  point.coords.resize(nqubits);
  for (int k = nqubits - 1; k >= 0; --k) {
    point.coords[k] = {(index >> 1) & 1, index & 1};
    index >>= 2;
  }
  return point;
}

namespace {

CMatrix single_point_operator(int q, int p) {
  const double sp = p ? -1.0 : 1.0;
  const double sq = q ? -1.0 : 1.0;
  return 0.5 * (identity2() + sp * pauli_x() + sp * sq * pauli_y() +
                sq * pauli_z());
}

}  // namespace

CMatrix phase_point_operator(const PhasePoint& point) {
  const int n = point.nqubits();
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("phase point must cover 1 to 3 qubits");
  }
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& [q, p] : point.coords) {
    if ((q | p) < 0 || q > 1 || p > 1) {
      throw std::invalid_argument("phase-space coordinates must be bits");
    }
    out = kron(out, single_point_operator(q, p));
  }
  return out;
}

const std::vector<CMatrix>& phase_point_operators(int nqubits) {
  static const auto build = [](int n) {
    std::vector<CMatrix> ops;
    const int size = phase_space_size(n);
    ops.reserve(size);
    for (int idx = 0; idx < size; ++idx) {
      ops.push_back(phase_point_operator(PhasePoint::from_index(n, idx)));
    }
    return ops;
  };
  static const std::vector<CMatrix> ops1 = build(1);
  static const std::vector<CMatrix> ops2 = build(2);
  static const std::vector<CMatrix> ops3 = build(3);
  switch (nqubits) {
    case 1: return ops1;
    case 2: return ops2;
    case 3: return ops3;
    default:
      throw std::invalid_argument("qubit count must be between 1 and 3");
  }
}

RVector wigner_coefficients(const CMatrix& op) {
  const int n = qubits_for_dim(op.rows());
  if (op.rows() != op.cols() || !is_hermitian(op, 1e-9)) {
    throw std::invalid_argument("operator must be square and Hermitian");
  }
  const auto& ops = phase_point_operators(n);
  const double scale = 1.0 / static_cast<double>(op.rows());
  RVector values(static_cast<Eigen::Index>(ops.size()));
  for (size_t idx = 0; idx < ops.size(); ++idx) {
    const Complex tr = (op * ops[idx]).trace();
    if (std::abs(tr.imag()) > 1e-9) {
      throw std::logic_error("Wigner value must be real");
    }
    values(static_cast<Eigen::Index>(idx)) = tr.real() * scale;
  }
  return values;
}

WignerVector wigner(const DensityMatrix& rho) {
  WignerVector w;
  w.nqubits = rho.nqubits();
  w.values = wigner_coefficients(rho.matrix());
  return w;
}

CMatrix inverse_wigner(const RVector& values, int nqubits) {
  const auto& ops = phase_point_operators(nqubits);
  if (values.size() != static_cast<Eigen::Index>(ops.size())) {
    throw std::invalid_argument("Wigner vector has wrong length");
  }
  const Eigen::Index dim = ops.front().rows();
  CMatrix out = CMatrix::Zero(dim, dim);
  for (size_t idx = 0; idx < ops.size(); ++idx) {
    out += values(static_cast<Eigen::Index>(idx)) * ops[idx];
  }
  return out;
}

CMatrix inverse_wigner(const WignerVector& w) {
  return inverse_wigner(w.values, w.nqubits);
}

double wigner_l1(const WignerVector& w) {
  return w.values.cwiseAbs().sum();
}

int negative_count(const WignerVector& w, double threshold) {
  int count = 0;
  for (Eigen::Index i = 0; i < w.values.size(); ++i) {
    if (w.values(i) < -threshold) ++count;
  }
  return count;
}

double total_negativity(const WignerVector& w, double threshold) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < w.values.size(); ++i) {
    if (w.values(i) < -threshold) total -= w.values(i);
  }
  return total;
}

void attach_wigner(StabilizerSet& set) {
  const auto& ops = phase_point_operators(set.nqubits);
  const double scale = 1.0 / static_cast<double>(1 << set.nqubits);
  for (StabilizerState& st : set.states) {
    RVector values(static_cast<Eigen::Index>(ops.size()));
    for (size_t idx = 0; idx < ops.size(); ++idx) {
      const Complex v = st.vector.dot(ops[idx] * st.vector);
      values(static_cast<Eigen::Index>(idx)) = v.real() * scale;
    }
    st.wigner = std::move(values);
  }
}

double max_stab_l1(const StabilizerSet& set) {
  double best = 0.0;
  for (const StabilizerState& st : set.states) {
    double l1 = 0.0;
    if (st.wigner.size() > 0) {
      l1 = st.wigner.cwiseAbs().sum();
    } else {
      const RVector w =
          wigner_coefficients(st.vector * st.vector.adjoint());
      l1 = w.cwiseAbs().sum();
    }
    best = std::max(best, l1);
  }
  return best;
}

namespace {

StabilizerSet build_cached_set(int n) {
  StabilizerSet set = enumerate_stabilizers(n);
  attach_wigner(set);
  return set;
}

}  // namespace

const StabilizerSet& cached_stabilizer_set(int nqubits) {
  switch (nqubits) {
    case 1: {
      static const StabilizerSet set = build_cached_set(1);
      return set;
    }
    case 2: {
      static const StabilizerSet set = build_cached_set(2);
      return set;
    }
    case 3: {
      static const StabilizerSet set = build_cached_set(3);
      return set;
    }
    default:
      throw std::invalid_argument("qubit count must be between 1 and 3");
  }
}

void write_csv(const WignerVector& w, std::ostream& out) {
  for (int k = 0; k < w.nqubits; ++k) {
    out << "q" << (k + 1) << ",p" << (k + 1) << ",";
  }
  out << "value\n";
  char buf[64];
  for (Eigen::Index idx = 0; idx < w.values.size(); ++idx) {
    const PhasePoint point =
        PhasePoint::from_index(w.nqubits, static_cast<int>(idx));
    for (const auto& [q, p] : point.coords) {
      out << q << "," << p << ",";
    }
    std::snprintf(buf, sizeof buf, "%.12g", w.values(idx));
    out << buf << "\n";
  }
}

}  // namespace qmagic
