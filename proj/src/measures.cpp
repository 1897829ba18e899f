#include "qmagic/measures.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace qmagic {

namespace {

constexpr double kSparseTol = 1e-10;

// Columns are the Wigner vectors of the enumerated states.
RMatrix stab_wigner_matrix(const StabilizerSet& set) {
  const int npoints = phase_space_size(set.nqubits);
  RMatrix w(npoints, set.size());
  for (int i = 0; i < set.size(); ++i) {
    const StabilizerState& st = set.states[i];
    if (st.wigner.size() == npoints) {
      w.col(i) = st.wigner;
    } else {
      w.col(i) = wigner_coefficients(st.vector * st.vector.adjoint());
    }
  }
  return w;
}

void require_optimal(const LPSolution& solution, const char* what) {
  if (solution.status != LPStatus::kOptimal) {
    throw std::runtime_error(std::string(what) +
                             ": polytope subproblem was not solvable");
  }
}

}  // namespace

DistanceResult wigner_distance(const RVector& w, const StabilizerSet& set) {
  const int npoints = phase_space_size(set.nqubits);
  if (w.size() != npoints) {
    throw std::invalid_argument("Wigner vector length mismatch");
  }
  const RMatrix stab = stab_wigner_matrix(set);
  const int nstates = set.size();
  const int nvars = nstates + npoints;

  LPProblem lp;
  lp.objective = RVector::Zero(nvars);
  lp.objective.tail(npoints).setOnes();
  lp.eq_matrix = RMatrix::Zero(1, nvars);
  lp.eq_matrix.leftCols(nstates).setOnes();
  lp.eq_rhs = RVector::Ones(1);
  lp.ineq_matrix = RMatrix::Zero(2 * npoints, nvars);
  lp.ineq_rhs = RVector::Zero(2 * npoints);
  for (int k = 0; k < npoints; ++k) {
    lp.ineq_matrix.row(k).head(nstates) = -stab.row(k);
    lp.ineq_matrix(k, nstates + k) = -1.0;
    lp.ineq_rhs(k) = -w(k);
    lp.ineq_matrix.row(npoints + k).head(nstates) = stab.row(k);
    lp.ineq_matrix(npoints + k, nstates + k) = -1.0;
    lp.ineq_rhs(npoints + k) = w(k);
  }

  const LPSolution solution = solve(lp);
  require_optimal(solution, "wigner_distance");

  DistanceResult result;
  result.c = solution.objective_value;
  result.nearest_free = solution.primal.head(nstates).cwiseMax(0.0);
  const RVector u = solution.ineq_duals.head(npoints);
  const RVector v = solution.ineq_duals.tail(npoints);
  result.witness.svec = u - v;
  result.witness.op = inverse_wigner(result.witness.svec, set.nqubits);
  result.witness.free_max =
      (stab.transpose() * result.witness.svec).maxCoeff();
  result.witness.gap = result.witness.svec.dot(w) - result.witness.free_max;
  return result;
}

DistanceResult wigner_distance(const DensityMatrix& rho,
                               const StabilizerSet& set) {
  if (rho.nqubits() != set.nqubits) {
    throw std::invalid_argument("state and set qubit counts differ");
  }
  return wigner_distance(wigner(rho).values, set);
}

ExtentResult stabilizer_extent(const DensityMatrix& rho,
                               const StabilizerSet& set) {
  if (rho.nqubits() != set.nqubits) {
    throw std::invalid_argument("state and set qubit counts differ");
  }
  const RVector w = wigner(rho).values;
  const RMatrix stab = stab_wigner_matrix(set);
  const int npoints = static_cast<int>(stab.rows());
  const int nstates = set.size();

  LPProblem lp;
  lp.objective = RVector::Ones(2 * nstates);
  lp.eq_matrix = RMatrix::Zero(npoints, 2 * nstates);
  lp.eq_matrix.leftCols(nstates) = stab;
  lp.eq_matrix.rightCols(nstates) = -stab;
  lp.eq_rhs = w;

  const LPSolution solution = solve(lp);
  require_optimal(solution, "stabilizer_extent");

  ExtentResult result;
  result.gamma = solution.objective_value;
  result.decomposition.coefficients =
      solution.primal.head(nstates) - solution.primal.tail(nstates);
  result.decomposition.l1 =
      result.decomposition.coefficients.cwiseAbs().sum();
  return result;
}

std::optional<double> tightness_ratio(double c, double gamma) {
  if (c <= kFreeThreshold) return std::nullopt;
  return (gamma - 1.0) / c;
}

double simulation_bound_slack(const DensityMatrix& rho,
                              const StabilizerSet& set, double max_l1) {
  if (max_l1 <= 0.0) {
    throw std::invalid_argument("max_l1 must be positive");
  }
  const double c = wigner_distance(rho, set).c;
  const double gamma = stabilizer_extent(rho, set).gamma;
  return gamma - 1.0 - c / max_l1;
}

bool polytope_membership(const RVector& w, const StabilizerSet& set,
                         double tol) {
  return wigner_distance(w, set).c <= tol;
}

MagicReport magic_report(const DensityMatrix& rho, const StabilizerSet& set) {
  MagicReport report;
  report.distance = wigner_distance(rho, set);
  report.extent = stabilizer_extent(rho, set);
  report.c = report.distance.c;
  report.gamma = report.extent.gamma;
  report.kappa = tightness_ratio(report.c, report.gamma);
  return report;
}

std::string to_json(const MagicReport& report) {
  nlohmann::json j;
  j["c"] = report.c;
  j["gamma"] = report.gamma;
  if (report.kappa) {
    j["kappa"] = *report.kappa;
  } else {
    j["kappa"] = nullptr;
  }
  j["witness"]["svec"] = std::vector<double>(
      report.distance.witness.svec.begin(), report.distance.witness.svec.end());
  j["witness"]["free_max"] = report.distance.witness.free_max;
  j["witness"]["gap"] = report.distance.witness.gap;
  nlohmann::json decomposition = nlohmann::json::object();
  const RVector& coef = report.extent.decomposition.coefficients;
  for (Eigen::Index i = 0; i < coef.size(); ++i) {
    if (std::abs(coef(i)) > kSparseTol) {
      decomposition[std::to_string(i)] = coef(i);
    }
  }
  j["decomposition"] = decomposition;
  nlohmann::json nearest = nlohmann::json::object();
  const RVector& weights = report.distance.nearest_free;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights(i) > kSparseTol) {
      nearest[std::to_string(i)] = weights(i);
    }
  }
  j["nearest_free"] = nearest;
  return j.dump(2);
}

}  // namespace qmagic
