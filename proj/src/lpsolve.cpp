#include "qmagic/lpsolve.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qmagic {

namespace {

constexpr double kReducedCostTol = 1e-10;
constexpr double kPivotTol = 1e-11;
constexpr double kPhaseOneTol = 1e-8;
constexpr int kRefactorPeriod = 128;

bool finite_all(const RMatrix& m) { return m.allFinite(); }

// Standard-form working problem: min c.z  s.t.  A z = b, z >= 0.
struct Tableau {
  RMatrix a;
  RVector b;
  RVector c;
  std::vector<int> basis;      // basic column per row
  std::vector<char> in_basis;  // flag per column
  std::vector<char> banned;    // columns excluded from entering
  RMatrix binv;
  RVector xb;
  // Maps current rows back to rows of the problem as assembled, so duals
  // survive redundant-row removal.
  std::vector<int> origin;
  int iterations = 0;

  int rows() const { return static_cast<int>(a.rows()); }
  int cols() const { return static_cast<int>(a.cols()); }

  void refactor() {
    RMatrix bmat(rows(), rows());
    for (int i = 0; i < rows(); ++i) bmat.col(i) = a.col(basis[i]);
    binv = bmat.partialPivLu().inverse();
    xb = binv * b;
  }

  RVector multipliers() const {
    RVector cb(rows());
    for (int i = 0; i < rows(); ++i) cb(i) = c(basis[i]);
    return binv.transpose() * cb;
  }

  double objective() const {
    double v = 0.0;
    for (int i = 0; i < rows(); ++i) v += c(basis[i]) * xb(i);
    return v;
  }

  void pivot(int leave_row, int enter_col, const RVector& d) {
    const double step = std::max(xb(leave_row), 0.0) / d(leave_row);
    xb -= step * d;
    xb(leave_row) = step;
    binv.row(leave_row) /= d(leave_row);
    for (int i = 0; i < rows(); ++i) {
      if (i != leave_row) binv.row(i) -= d(i) * binv.row(leave_row);
    }
    in_basis[basis[leave_row]] = 0;
    in_basis[enter_col] = 1;
    basis[leave_row] = enter_col;
    if (++iterations % kRefactorPeriod == 0) refactor();
  }
};

enum class IterateResult { kOptimal, kUnbounded };

// Bland's rule: enter the lowest-index column with negative reduced cost,
// leave on the smallest ratio with ties broken by lowest basic index.
IterateResult run_simplex(Tableau& t, std::vector<std::pair<double, double>>* trace,
                          double trace_offset) {
  for (;;) {
    const RVector y = t.multipliers();
    if (trace) {
      trace->emplace_back(t.objective() + trace_offset,
                          y.dot(t.b) + trace_offset);
    }
    int enter = -1;
    for (int j = 0; j < t.cols(); ++j) {
      if (t.in_basis[j] || t.banned[j]) continue;
      const double reduced = t.c(j) - y.dot(t.a.col(j));
      if (reduced < -kReducedCostTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return IterateResult::kOptimal;

    const RVector d = t.binv * t.a.col(enter);
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < t.rows(); ++i) {
      if (d(i) <= kPivotTol) continue;
      const double ratio = std::max(t.xb(i), 0.0) / d(i);
      if (leave < 0 || ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && t.basis[i] < t.basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return IterateResult::kUnbounded;
    t.pivot(leave, enter, d);
  }
}

// Pivots basic artificials out at zero level; rows that admit no pivot are
// redundant and get dropped.
void remove_artificials(Tableau& t, int real_cols) {
  std::vector<int> keep;
  for (int i = 0; i < t.rows(); ++i) {
    if (t.basis[i] < real_cols) {
      keep.push_back(i);
      continue;
    }
    int enter = -1;
    for (int j = 0; j < real_cols; ++j) {
      if (t.in_basis[j]) continue;
      if (std::abs(t.binv.row(i).dot(t.a.col(j))) > 1e-8) {
        enter = j;
        break;
      }
    }
    if (enter >= 0) {
      RVector d = t.binv * t.a.col(enter);
      t.pivot(i, enter, d);
      keep.push_back(i);
    }
  }
  if (static_cast<int>(keep.size()) != t.rows()) {
    RMatrix a(keep.size(), t.a.cols());
    RVector b(keep.size());
    std::vector<int> basis, origin;
    for (size_t i = 0; i < keep.size(); ++i) {
      a.row(i) = t.a.row(keep[i]);
      b(i) = t.b(keep[i]);
      basis.push_back(t.basis[keep[i]]);
      origin.push_back(t.origin[keep[i]]);
    }
    t.a = std::move(a);
    t.b = std::move(b);
    t.basis = std::move(basis);
    t.origin = std::move(origin);
    std::fill(t.in_basis.begin(), t.in_basis.end(), 0);
    for (int col : t.basis) t.in_basis[col] = 1;
    t.refactor();
  }
}

}  // namespace

LPSolution solve(const LPProblem& problem, const LPOptions& options) {
  const int nvars = static_cast<int>(problem.objective.size());
  const int neq = static_cast<int>(problem.eq_rhs.size());
  const int nineq = static_cast<int>(problem.ineq_rhs.size());
  if (nvars == 0) throw std::invalid_argument("LP needs at least one variable");
  if (problem.eq_matrix.rows() != neq ||
      (neq > 0 && problem.eq_matrix.cols() != nvars) ||
      problem.ineq_matrix.rows() != nineq ||
      (nineq > 0 && problem.ineq_matrix.cols() != nvars)) {
    throw std::invalid_argument("LP constraint dimensions mismatch");
  }
  RVector lower = problem.lower_bounds;
  if (lower.size() == 0) lower = RVector::Zero(nvars);
  if (lower.size() != nvars) {
    throw std::invalid_argument("LP lower bound size mismatch");
  }
  if (!problem.objective.allFinite() ||
      (neq > 0 && (!finite_all(problem.eq_matrix) ||
                   !problem.eq_rhs.allFinite())) ||
      (nineq > 0 && (!finite_all(problem.ineq_matrix) ||
                     !problem.ineq_rhs.allFinite()))) {
    throw std::invalid_argument("LP data must be finite");
  }
  for (int j = 0; j < nvars; ++j) {
    if (std::isnan(lower(j)) || lower(j) == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("lower bounds must be finite or -inf");
    }
  }

  // Standard-form columns: one shifted column per bounded variable, a split
  // pair per free variable, then one slack per inequality.
  std::vector<int> col_of(nvars);
  std::vector<char> is_free(nvars);
  int ncols = 0;
  for (int j = 0; j < nvars; ++j) {
    col_of[j] = ncols;
    is_free[j] = std::isinf(lower(j));
    ncols += is_free[j] ? 2 : 1;
  }
  const int slack0 = ncols;
  ncols += nineq;
  const int m = neq + nineq;

  const int total_cols = ncols + m;  // artificials appended per row
  Tableau t;
  t.a = RMatrix::Zero(m, total_cols);
  t.b = RVector::Zero(m);
  std::vector<double> row_sign(m, 1.0);

  auto fill_row = [&](int row, const RMatrix& mat, const RVector& rhs,
                      int src_row) {
    double b = rhs(src_row);
    for (int j = 0; j < nvars; ++j) {
      const double aij = mat(src_row, j);
      if (aij == 0.0) continue;
      t.a(row, col_of[j]) = aij;
      if (is_free[j]) {
        t.a(row, col_of[j] + 1) = -aij;
      } else {
        b -= aij * lower(j);
      }
    }
    t.b(row) = b;
  };

  for (int i = 0; i < neq; ++i) fill_row(i, problem.eq_matrix, problem.eq_rhs, i);
  for (int i = 0; i < nineq; ++i) {
    fill_row(neq + i, problem.ineq_matrix, problem.ineq_rhs, i);
    t.a(neq + i, slack0 + i) = 1.0;
  }
  for (int i = 0; i < m; ++i) {
    if (t.b(i) < 0.0) {
      t.a.row(i) = -t.a.row(i);
      t.b(i) = -t.b(i);
      row_sign[i] = -1.0;
    }
    t.a(i, ncols + i) = 1.0;
  }

  LPSolution result;
  if (m == 0) {
    // Unconstrained: each variable sits at its bound or certifies
    // unboundedness.
    result.primal = RVector::Zero(nvars);
    for (int j = 0; j < nvars; ++j) {
      const double cj = problem.objective(j);
      if (cj < 0.0 || (cj > 0.0 && is_free[j])) {
        result.status = LPStatus::kUnbounded;
        return result;
      }
      result.primal(j) = is_free[j] ? 0.0 : lower(j);
    }
    result.status = LPStatus::kOptimal;
    result.objective_value = problem.objective.dot(result.primal);
    return result;
  }

  t.basis.resize(m);
  t.in_basis.assign(total_cols, 0);
  t.banned.assign(total_cols, 0);
  t.origin.resize(m);
  for (int i = 0; i < m; ++i) {
    t.basis[i] = ncols + i;
    t.in_basis[ncols + i] = 1;
    // Artificials may leave the basis but never re-enter.
    t.banned[ncols + i] = 1;
    t.origin[i] = i;
  }
  t.binv = RMatrix::Identity(m, m);
  t.xb = t.b;

  // Phase one.
  t.c = RVector::Zero(total_cols);
  t.c.tail(m).setOnes();
  run_simplex(t, nullptr, 0.0);
  if (t.objective() > kPhaseOneTol) {
    result.status = LPStatus::kInfeasible;
    return result;
  }
  remove_artificials(t, ncols);

  // Phase two.
  double offset = 0.0;
  t.c = RVector::Zero(total_cols);
  for (int j = 0; j < nvars; ++j) {
    const double cj = problem.objective(j);
    t.c(col_of[j]) = cj;
    if (is_free[j]) {
      t.c(col_of[j] + 1) = -cj;
    } else {
      offset += cj * lower(j);
    }
  }
  const IterateResult phase2 =
      run_simplex(t, options.record_trace ? &result.trace : nullptr, offset);
  if (phase2 == IterateResult::kUnbounded) {
    result.status = LPStatus::kUnbounded;
    return result;
  }
  t.refactor();

  // Recover the primal point.
  RVector z = RVector::Zero(total_cols);
  for (int i = 0; i < t.rows(); ++i) z(t.basis[i]) = std::max(t.xb(i), 0.0);
  result.primal = RVector::Zero(nvars);
  for (int j = 0; j < nvars; ++j) {
    result.primal(j) = is_free[j] ? z(col_of[j]) - z(col_of[j] + 1)
                                  : lower(j) + z(col_of[j]);
  }
  result.objective_value = problem.objective.dot(result.primal);

  // Simplex multipliers per assembled row, zero for dropped redundant rows.
  const RVector y = t.multipliers();
  RVector pi = RVector::Zero(m);
  for (int i = 0; i < t.rows(); ++i) pi(t.origin[i]) = y(i) * row_sign[t.origin[i]];
  result.eq_duals = -pi.head(neq);
  result.ineq_duals = -pi.tail(nineq);

  // Certificates.
  double primal_res = 0.0;
  if (neq > 0) {
    primal_res = (problem.eq_matrix * result.primal - problem.eq_rhs)
                     .cwiseAbs()
                     .maxCoeff();
  }
  if (nineq > 0) {
    primal_res = std::max(
        primal_res, (problem.ineq_matrix * result.primal - problem.ineq_rhs)
                        .maxCoeff());
  }
  for (int j = 0; j < nvars; ++j) {
    if (!is_free[j]) {
      primal_res = std::max(primal_res, lower(j) - result.primal(j));
    }
  }
  RVector reduced = problem.objective;
  if (neq > 0) reduced += problem.eq_matrix.transpose() * result.eq_duals;
  if (nineq > 0) reduced += problem.ineq_matrix.transpose() * result.ineq_duals;
  double dual_res = 0.0;
  for (int i = 0; i < nineq; ++i) {
    dual_res = std::max(dual_res, -result.ineq_duals(i));
  }
  double dual_obj = 0.0;
  if (neq > 0) dual_obj -= result.eq_duals.dot(problem.eq_rhs);
  if (nineq > 0) dual_obj -= result.ineq_duals.dot(problem.ineq_rhs);
  for (int j = 0; j < nvars; ++j) {
    if (is_free[j]) {
      dual_res = std::max(dual_res, std::abs(reduced(j)));
    } else {
      dual_res = std::max(dual_res, -reduced(j));
      dual_obj += reduced(j) * lower(j);
    }
  }
  result.primal_residual = std::max(primal_res, 0.0);
  result.dual_residual = std::max(dual_res, 0.0);
  result.duality_gap = std::abs(result.objective_value - dual_obj);
  result.status = LPStatus::kOptimal;
  return result;
}

void dump(const LPProblem& problem, std::ostream& out) {
  out << "minimize " << problem.objective.transpose() << "\n";
  for (Eigen::Index i = 0; i < problem.eq_rhs.size(); ++i) {
    out << "  " << problem.eq_matrix.row(i) << " = " << problem.eq_rhs(i)
        << "\n";
  }
  for (Eigen::Index i = 0; i < problem.ineq_rhs.size(); ++i) {
    out << "  " << problem.ineq_matrix.row(i) << " <= " << problem.ineq_rhs(i)
        << "\n";
  }
  if (problem.lower_bounds.size() > 0) {
    out << "  x >= " << problem.lower_bounds.transpose() << "\n";
  } else {
    out << "  x >= 0\n";
  }
}

}  // namespace qmagic
