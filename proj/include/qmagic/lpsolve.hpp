#pragma once

#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

#include "qmagic/qcore.hpp"

// Dense linear programming solver used for every polytope computation in
// the library: two-phase revised simplex with Bland's rule, so runs are
// deterministic and cycling cannot occur.  Problems stay small (a few
// thousand variables), so the basis inverse is kept explicitly and
// refactorized periodically.

namespace qmagic {

inline constexpr double kLpTol = 1e-9;

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

// minimize objective.x
// subject to eq_matrix x = eq_rhs, ineq_matrix x <= ineq_rhs,
//            x >= lower_bounds (entry -inf leaves a variable free).
struct LPProblem {
  RVector objective;
  RMatrix eq_matrix;
  RVector eq_rhs;
  RMatrix ineq_matrix;
  RVector ineq_rhs;
  // Empty means all zeros.
  RVector lower_bounds;

  static double free_bound() {
    return -std::numeric_limits<double>::infinity();
  }
};

struct LPOptions {
  bool record_trace = false;
};

// Dual sign convention, stated for a minimization problem: ineq_duals >= 0,
// the reduced costs objective + ineq^T y + eq^T mu are nonnegative on
// bounded variables and zero on free ones, and the dual objective
// -y.ineq_rhs - mu.eq_rhs + reduced.lower_bounds matches the primal value.
struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  RVector primal;
  RVector eq_duals;
  RVector ineq_duals;
  double objective_value = 0.0;
  // Certificates at the returned point; all below kLpTol when optimal.
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double duality_gap = 0.0;
  // Phase-two (primal, dual) objective pairs when trace recording is on.
  std::vector<std::pair<double, double>> trace;
};

LPSolution solve(const LPProblem& problem, const LPOptions& options = {});

// Human-readable dump of objective, constraints and bounds.
void dump(const LPProblem& problem, std::ostream& out);

}  // namespace qmagic
