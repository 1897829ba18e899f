#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <string>

#include "qmagic/measures.hpp"
#include "qmagic/phasespace.hpp"
#include "qmagic/qcore.hpp"
#include "qmagic/stabgen.hpp"

using namespace qmagic;

namespace {

// l1 distance between a Wigner vector and a convex mixture of vertices.
double mixture_error(const RVector& w, const RVector& weights,
                     const StabilizerSet& set) {
  RVector mix = RVector::Zero(w.size());
  for (int k = 0; k < set.size(); ++k) {
    mix += weights(k) * set.states[static_cast<size_t>(k)].wigner;
  }
  return (w - mix).cwiseAbs().sum();
}

}  // namespace

TEST_CASE("reference magic state distance, extent and ratio") {
  const auto& set = cached_stabilizer_set(1);
  const double sqrt2 = std::sqrt(2.0);

  const DistanceResult d = wigner_distance(t_state(), set);
  CHECK(d.c == doctest::Approx((sqrt2 - 1.0) / 2.0).epsilon(1e-9));

  const ExtentResult e = stabilizer_extent(t_state(), set);
  CHECK(e.gamma == doctest::Approx(sqrt2).epsilon(1e-9));

  const auto kappa = tightness_ratio(d.c, e.gamma);
  REQUIRE(kappa.has_value());
  CHECK(*kappa == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("raw-vector and density-matrix entry points agree") {
  const auto& set = cached_stabilizer_set(1);
  const WignerVector w = wigner(t_state());
  const DistanceResult from_vec = wigner_distance(w.values, set);
  const DistanceResult from_rho = wigner_distance(t_state(), set);
  CHECK(from_vec.c == doctest::Approx(from_rho.c).epsilon(1e-12));
}

TEST_CASE("stabilizer inputs sit inside the polytope") {
  const auto& set = cached_stabilizer_set(2);
  const DensityMatrix rho =
      DensityMatrix::pure(set.states[17].vector);
  const DistanceResult d = wigner_distance(rho, set);
  CHECK(d.c < 1e-9);
  const ExtentResult e = stabilizer_extent(rho, set);
  CHECK(e.gamma == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(polytope_membership(wigner(rho).values, set));
  CHECK_FALSE(tightness_ratio(d.c, e.gamma).has_value());
}

TEST_CASE("magic states sit outside the polytope") {
  const auto& set1 = cached_stabilizer_set(1);
  CHECK_FALSE(polytope_membership(wigner(t_state()).values, set1));
  // The maximally mixed state is free.
  const DensityMatrix mixed =
      DensityMatrix::from_matrix(0.5 * CMatrix::Identity(2, 2));
  CHECK(polytope_membership(wigner(mixed).values, set1));
}

TEST_CASE("nearest free point is a certified convex combination") {
  const auto& set = cached_stabilizer_set(1);
  const DistanceResult d = wigner_distance(t_state(), set);
  REQUIRE(d.nearest_free.size() == set.size());
  CHECK(d.nearest_free.minCoeff() > -1e-9);
  CHECK(d.nearest_free.sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mixture_error(wigner(t_state()).values, d.nearest_free, set) ==
        doctest::Approx(d.c).epsilon(1e-8));
}

TEST_CASE("dual witness certifies the distance") {
  const auto& set = cached_stabilizer_set(1);
  const WignerVector w = wigner(t_state());
  const DistanceResult d = wigner_distance(t_state(), set);

  CHECK(d.witness.svec.cwiseAbs().maxCoeff() <= 1.0 + 1e-9);
  CHECK(d.witness.gap == doctest::Approx(d.c).epsilon(1e-8));

  double free_max = -1e30;
  for (const StabilizerState& s : set.states) {
    free_max = std::max(free_max, d.witness.svec.dot(s.wigner));
  }
  CHECK(d.witness.free_max == doctest::Approx(free_max).epsilon(1e-9));
  CHECK(d.witness.svec.dot(w.values) - free_max ==
        doctest::Approx(d.c).epsilon(1e-8));

  // The operator form reproduces the coordinate pairing up to the 2^n
  // carried by the transform normalization.
  const double trace_rho =
      (d.witness.op * t_state().matrix()).trace().real();
  CHECK(trace_rho ==
        doctest::Approx(2.0 * d.witness.svec.dot(w.values)).epsilon(1e-9));
}

TEST_CASE("extent decomposition reconstructs the state") {
  const auto& set = cached_stabilizer_set(2);
  const DensityMatrix rho = DensityMatrix::pure(haar_random_pure(2, 31));
  const ExtentResult e = stabilizer_extent(rho, set);

  REQUIRE(e.decomposition.coefficients.size() == set.size());
  CHECK(e.decomposition.l1 == doctest::Approx(e.gamma).epsilon(1e-9));
  CHECK(e.decomposition.coefficients.cwiseAbs().sum() ==
        doctest::Approx(e.gamma).epsilon(1e-9));
  CHECK(e.decomposition.coefficients.sum() ==
        doctest::Approx(1.0).epsilon(1e-8));

  RVector mix = RVector::Zero(16);
  for (int k = 0; k < set.size(); ++k) {
    mix += e.decomposition.coefficients(k) *
           set.states[static_cast<size_t>(k)].wigner;
  }
  CHECK((mix - wigner(rho).values).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("tensor product of two magic states") {
  CVector t1(2);
  const double r = 1.0 / std::sqrt(2.0);
  t1 << r, std::polar(r, std::numbers::pi / 4.0);
  CVector joint(4);
  joint << t1(0) * t1(0), t1(0) * t1(1), t1(1) * t1(0), t1(1) * t1(1);

  const auto& set2 = cached_stabilizer_set(2);
  const DistanceResult d =
      wigner_distance(DensityMatrix::pure(joint), set2);
  const double c1 = (std::sqrt(2.0) - 1.0) / 2.0;
  // Frozen two-copy value; equals 2 c + c^2 for the single-copy c.
  CHECK(d.c == doctest::Approx(0.457106781186547).epsilon(1e-8));
  CHECK(d.c == doctest::Approx(2.0 * c1 + c1 * c1).epsilon(1e-8));
}

TEST_CASE("tightness ratio guards the free threshold") {
  CHECK_FALSE(tightness_ratio(0.0, 1.0).has_value());
  CHECK_FALSE(tightness_ratio(kFreeThreshold / 2.0, 1.2).has_value());
  const auto ratio = tightness_ratio(0.2, 1.4);
  REQUIRE(ratio.has_value());
  CHECK(*ratio == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("simulation-cost slack") {
  const auto& set1 = cached_stabilizer_set(1);
  const double m1 = max_stab_l1(set1);
  CHECK(m1 == doctest::Approx(1.0).epsilon(1e-12));

  // Free states saturate nothing: gamma = 1 and c = 0 give zero slack.
  CVector zero(2);
  zero << 1.0, 0.0;
  CHECK(simulation_bound_slack(DensityMatrix::pure(zero), set1, m1) ==
        doctest::Approx(0.0).epsilon(1e-8));

  // For the reference magic state the slack is gamma - 1 - c.
  const double sqrt2 = std::sqrt(2.0);
  CHECK(simulation_bound_slack(t_state(), set1, m1) ==
        doctest::Approx(sqrt2 - 1.0 - (sqrt2 - 1.0) / 2.0).epsilon(1e-8));
}

TEST_CASE("combined report is self-consistent") {
  const auto& set = cached_stabilizer_set(1);
  const MagicReport report = magic_report(t_state(), set);
  CHECK(report.c == doctest::Approx(report.distance.c).epsilon(1e-12));
  CHECK(report.gamma == doctest::Approx(report.extent.gamma).epsilon(1e-12));
  REQUIRE(report.kappa.has_value());
  CHECK(*report.kappa ==
        doctest::Approx((report.gamma - 1.0) / report.c).epsilon(1e-9));

  const std::string text = to_json(report);
  CHECK(text.find("\"c\"") != std::string::npos);
  CHECK(text.find("\"gamma\"") != std::string::npos);
  CHECK(text.find("\"kappa\"") != std::string::npos);
  CHECK(text.find("\"witness\"") != std::string::npos);
  CHECK(text.find("\"decomposition\"") != std::string::npos);
  CHECK(text.find("\"nearest_free\"") != std::string::npos);
}
