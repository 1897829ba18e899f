#pragma once

#include <optional>
#include <string>

#include "qmagic/lpsolve.hpp"
#include "qmagic/phasespace.hpp"
#include "qmagic/qcore.hpp"
#include "qmagic/stabgen.hpp"

// Magic monotones over the stabilizer polytope in Wigner coordinates:
// the l1 distance C, the one-norm extent Gamma, their ratio kappa, the
// dual witness certifying C, and polytope membership.

namespace qmagic {

// Witness extracted from the distance LP duals.  svec has sup norm at most
// one; gap = <svec, W_rho> - free_max equals the distance.
struct DualWitness {
  RVector svec;
  CMatrix op;  // inverse Wigner transform of svec
  double free_max = 0.0;
  double gap = 0.0;
};

struct DistanceResult {
  double c = 0.0;
  // Convex weights over the enumerated states for the nearest free point.
  RVector nearest_free;
  DualWitness witness;
};

// Signed combination rho = sum_i coefficients[i] sigma_i.
struct StabDecomposition {
  RVector coefficients;
  double l1 = 0.0;
};

struct ExtentResult {
  double gamma = 1.0;
  StabDecomposition decomposition;
};

struct MagicReport {
  double c = 0.0;
  double gamma = 1.0;
  std::optional<double> kappa;
  DistanceResult distance;
  ExtentResult extent;
};

// Distance from a raw Wigner vector to the polytope; the vector does not
// need to come from a state.
DistanceResult wigner_distance(const RVector& w, const StabilizerSet& set);
DistanceResult wigner_distance(const DensityMatrix& rho,
                               const StabilizerSet& set);

ExtentResult stabilizer_extent(const DensityMatrix& rho,
                               const StabilizerSet& set);

// (gamma - 1) / c, or nullopt when c is below kFreeThreshold.
std::optional<double> tightness_ratio(double c, double gamma);

// Slack gamma - 1 - c / max_l1 of the simulation-cost bound.
double simulation_bound_slack(const DensityMatrix& rho,
                              const StabilizerSet& set, double max_l1);

bool polytope_membership(const RVector& w, const StabilizerSet& set,
                         double tol = kLpTol);

MagicReport magic_report(const DensityMatrix& rho, const StabilizerSet& set);

// JSON text: {c, gamma, kappa, witness:{svec, free_max, gap},
// decomposition:{index: coefficient}, nearest_free:{index: weight}}.
std::string to_json(const MagicReport& report);

}  // namespace qmagic
