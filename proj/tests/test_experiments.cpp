#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qmagic/experiments.hpp"
#include "qmagic/families.hpp"
#include "qmagic/measures.hpp"
#include "qmagic/phasespace.hpp"
#include "qmagic/qcore.hpp"

using namespace qmagic;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kThreads = 4;

}  // namespace

TEST_CASE("csv number formatting") {
  CHECK(csv_number(0.5) == "0.5");
  CHECK(csv_number(2.0) == "2");
  CHECK(csv_number(1.0 / 3.0) == "0.333333333333");
  CHECK(csv_number(-0.25) == "-0.25");
}

TEST_CASE("parallel loop matches serial order and propagates errors") {
  std::vector<int> serial(500), parallel(500);
  const auto fill = [](std::vector<int>& out) {
    return [&out](int i) { out[static_cast<size_t>(i)] = 3 * i + 1; };
  };
  parallel_for(500, 1, fill(serial));
  parallel_for(500, 8, fill(parallel));
  CHECK(serial == parallel);

  std::atomic<int> done{0};
  const auto boom = [&done](int i) {
    if (i == 123) throw std::runtime_error("boom");
    done.fetch_add(1);
  };
  CHECK_THROWS_WITH(parallel_for(500, 8, boom), "boom");
}

TEST_CASE("single-qubit closed form agrees with the optimization") {
  CHECK(single_qubit_c_oracle(1.0, 0.0, 0.0) == doctest::Approx(0.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(single_qubit_c_oracle(r, r, 0.0) ==
        doctest::Approx((std::sqrt(2.0) - 1.0) / 2.0).epsilon(1e-12));

  const auto& set1 = cached_stabilizer_set(1);
  for (const auto& [polar, azimuth] : {std::pair{0.7, 0.2},
                                       std::pair{1.4, 2.5},
                                       std::pair{2.6, 4.1}}) {
    const DensityMatrix rho = DensityMatrix::pure(bloch_state(polar, azimuth));
    const double oracle = single_qubit_c_oracle(
        std::sin(polar) * std::cos(azimuth),
        std::sin(polar) * std::sin(azimuth), std::cos(polar));
    CHECK(wigner_distance(rho, set1).c ==
          doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("scan grids have the pinned shape") {
  const auto polars = dichotomy_polar_grid();
  REQUIRE(polars.size() == 16);
  for (double ref : {0.35, 1.20, kPi / 2.0, 1.94, 2.80}) {
    bool found = false;
    for (double t : polars) found = found || std::abs(t - ref) < 1e-12;
    CHECK(found);
  }
  CHECK(polars.front() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(polars.back() == doctest::Approx(3.04).epsilon(1e-12));

  const auto phis = dichotomy_azimuth_grid();
  REQUIRE(phis.size() == 4);
  CHECK(phis[0] == doctest::Approx(0.0));
  CHECK(phis[1] == doctest::Approx(0.7));
  CHECK(phis[2] == doctest::Approx(1.05));
  CHECK(phis[3] == doctest::Approx(2.1));

  CHECK(bloch_grid(polars, phis).size() == 64);

  const auto eq = equatorial_phi_grid(6);
  REQUIRE(eq.size() == 6);
  CHECK(eq[0] == doctest::Approx(0.5 * 2.0 * kPi / 6.0).epsilon(1e-12));
}

TEST_CASE("reference scan rows are frozen") {
  const std::vector<double> polars{0.35, 1.20, kPi / 2.0, 1.94, 2.80};
  const auto records =
      dichotomy_scan(t_state(), bloch_grid(polars, {1.05}), kThreads);
  REQUIRE(records.size() == 5);

  const double expected_joint[5] = {0.332366533969, 0.453703029363,
                                    0.427400312496, 0.589691449597,
                                    0.448213835376};
  const bool expected_flag[5] = {false, false, true, true, true};
  for (int k = 0; k < 5; ++k) {
    CHECK(records[static_cast<size_t>(k)].c_joint ==
          doctest::Approx(expected_joint[k]).epsilon(1e-9));
    CHECK(records[static_cast<size_t>(k)].superadditive == expected_flag[k]);
    CHECK(records[static_cast<size_t>(k)].c_rho ==
          doctest::Approx((std::sqrt(2.0) - 1.0) / 2.0).epsilon(1e-8));
    CHECK(records[static_cast<size_t>(k)].deficit ==
          doctest::Approx(records[static_cast<size_t>(k)].c_rho +
                          records[static_cast<size_t>(k)].c_sigma -
                          records[static_cast<size_t>(k)].c_joint)
              .epsilon(1e-12));
  }
}

TEST_CASE("deficits are symmetric under the y-axis point reflection") {
  // Conjugating both states by Y is a phase-space translation, so the
  // joint distance is unchanged while the sphere angles flip to
  // (pi - theta, pi - phi).
  const DensityMatrix rho_img = apply_unitary(t_state(), pauli_y());
  const auto fwd = dichotomy_scan(
      t_state(), {{1.20, 1.05}, {0.35, 2.1}, {2.80, 0.7}}, kThreads);
  const auto bwd = dichotomy_scan(
      rho_img,
      {{kPi - 1.20, kPi - 1.05}, {kPi - 0.35, kPi - 2.1}, {kPi - 2.80, kPi - 0.7}},
      kThreads);
  for (size_t k = 0; k < fwd.size(); ++k) {
    CHECK(fwd[k].deficit == doctest::Approx(bwd[k].deficit).epsilon(1e-10));
    CHECK(fwd[k].c_joint == doctest::Approx(bwd[k].c_joint).epsilon(1e-10));
  }
}

TEST_CASE("superadditivity pattern does not depend on the southern rho") {
  const auto grid = bloch_grid(dichotomy_polar_grid(), dichotomy_azimuth_grid());
  const auto base = dichotomy_scan(t_state(), grid, kThreads);
  const DensityMatrix southern =
      DensityMatrix::pure(bloch_state(2.5, 1.3));
  const auto other = dichotomy_scan(southern, grid, kThreads);
  REQUIRE(base.size() == other.size());
  for (size_t k = 0; k < base.size(); ++k) {
    CHECK(base[k].superadditive == other[k].superadditive);
  }
}

TEST_CASE("equatorial pairs satisfy the product identity") {
  const double residual = equatorial_equality_residual(
      equatorial_phi_grid(3), equatorial_phi_grid(3), kThreads);
  CHECK(residual < 1e-8);
}

TEST_CASE("deficit regression over the pooled scan") {
  const auto points =
      regression_scan(regression_rho_azimuths(), regression_sigma_polars(),
                      1.05, kThreads);
  REQUIRE(points.size() == 120);
  const RegressionResult fit = deficit_regression(points);
  CHECK(fit.comparable);
  CHECK(fit.n_points == 120);
  CHECK(fit.slope == doctest::Approx(0.343442822236).epsilon(1e-9));
  CHECK(fit.r_squared == doctest::Approx(0.981094202928).epsilon(1e-9));
}

TEST_CASE("regression flags incomparable and undersized inputs") {
  // One fixed rho: every abscissa coincides, so the slope is not a trend.
  const std::vector<double> polars{0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.5};
  const auto single = regression_scan({0.3}, polars, 1.05, kThreads);
  CHECK_FALSE(deficit_regression(single).comparable);

  // Fewer than eight usable points is not a fit.
  const auto tiny = regression_scan({0.3, 0.6}, {0.4, 0.9}, 1.05, kThreads);
  CHECK_THROWS_AS(deficit_regression(tiny), std::invalid_argument);

  // Southern sigmas are excluded from the pool entirely.
  const auto southern =
      regression_scan({0.3, 0.6, 0.9}, {2.0, 2.4, 2.8}, 1.05, kThreads);
  CHECK_THROWS_AS(deficit_regression(southern), std::invalid_argument);
}

TEST_CASE("family theta grids avoid the degenerate angles") {
  const auto ry = family_theta_grid(Family::kRy, 5);
  REQUIRE(ry.size() == 5);
  for (double t : ry) {
    CHECK(t > 0.0);
    CHECK(t < kPi);
    CHECK(std::abs(t - kPi / 2.0) >= 1e-3 - 1e-12);
  }
  // The midpoint rule would land exactly on pi/2; the nudge moves it.
  CHECK(ry[2] == doctest::Approx(kPi / 2.0 + 1e-3).epsilon(1e-12));

  const auto brz = family_theta_grid(Family::kBellRz, 4);
  REQUIRE(brz.size() == 4);
  CHECK(brz[0] == doctest::Approx(kPi / 4.0).epsilon(1e-12));
  CHECK(brz[3] == doctest::Approx(7.0 * kPi / 4.0).epsilon(1e-12));
}

TEST_CASE("family sweep ties the solver to the closed forms") {
  const auto records =
      kappa_sweep(Family::kRx, {0.4, 1.1, 2.0}, kThreads);
  REQUIRE(records.size() == 3);
  for (const KappaRecord& rec : records) {
    CHECK(rec.c_lp == doctest::Approx(rec.c_closed).epsilon(1e-7));
    CHECK(rec.gamma_lp == doctest::Approx(rec.gamma_closed).epsilon(1e-7));
    CHECK(rec.lp_witness_gap == doctest::Approx(rec.c_lp).epsilon(1e-7));
    CHECK(rec.cf_witness_trace - rec.cf_free_max ==
          doctest::Approx(rec.c_closed).epsilon(1e-7));
    REQUIRE(rec.kappa.has_value());
    CHECK(*rec.kappa == doctest::Approx(2.0).epsilon(1e-6));
  }
}

TEST_CASE("noise sweep reproduces the depolarized closed form") {
  const double theta = kPi / 3.0;
  const double pstar = critical_noise(theta);
  CHECK(pstar == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-12));

  const auto grid = noise_p_grid(theta);
  REQUIRE(grid.size() >= 5);
  CHECK(grid.front() == doctest::Approx(0.0));
  CHECK(grid.front() < pstar);
  CHECK(grid.back() > pstar);

  const auto records =
      noise_sweep(Family::kRy, theta, {0.0, 0.1, 0.35}, kThreads);
  REQUIRE(records.size() == 3);

  const double mag = std::sin(theta) + std::cos(theta);
  CHECK(records[0].c == doctest::Approx(mag - 1.0).epsilon(1e-9));
  CHECK(records[1].c == doctest::Approx(0.9 * mag - 1.0).epsilon(1e-9));
  CHECK(records[2].c == doctest::Approx(0.0).epsilon(1e-9));

  REQUIRE(records[0].kappa.has_value());
  REQUIRE(records[1].kappa.has_value());
  CHECK(*records[0].kappa == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(*records[1].kappa == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_FALSE(records[2].kappa.has_value());
  CHECK(records[2].gamma == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(noise_sweep(Family::kBellRz, 0.5, {0.0}, kThreads),
                  std::invalid_argument);
}

TEST_CASE("gate monotonicity statistics") {
  CHECK_THROWS_AS(monotonicity_sample(99, 1, kThreads),
                  std::invalid_argument);

  // Free inputs stay free under a Clifford gate: no counted increases.
  const auto& set2 = cached_stabilizer_set(2);
  std::vector<CVector> states;
  for (int i = 0; i < 100; ++i) {
    states.push_back(set2.states[static_cast<size_t>(i % set2.size())].vector);
  }
  const MonotonicityStats stats = monotonicity_over(states, 99, kThreads);
  CHECK(stats.n_samples == 100);
  CHECK(stats.fraction_increased == doctest::Approx(0.0));
  CHECK(stats.max_increase <= 1e-8);
}

TEST_CASE("hadamard phase-space swap leaves the polytope") {
  CHECK(hadamard_permuted_outside_count(kThreads) == 24);
}

TEST_CASE("two copies of the reference state are superadditive") {
  const std::vector<BlochAngles> t_only{{kPi / 2.0, kPi / 4.0}};
  const double margin = self_tensor_min_margin(t_only, kThreads);
  CHECK(margin == doctest::Approx(0.042893218813452).epsilon(1e-8));
  CHECK(self_tensor_default_grid().size() >= 16);
}

TEST_CASE("extent stays submultiplicative on samples") {
  CHECK_THROWS_AS(submultiplicativity_min_slack(49, 7, kThreads),
                  std::invalid_argument);
  CHECK(submultiplicativity_min_slack(50, 7, kThreads) > -1e-8);
}

TEST_CASE("simulation-cost bound holds on samples") {
  CHECK(simulation_bound_min_slack(25, 7, kThreads) > -1e-8);
}

TEST_CASE("distance ascent finds the known two-qubit maximum") {
  const MaxCResult result = max_c_search(1, 424242, kThreads);
  CHECK(result.restarts == 1);
  CHECK(result.best_c == doctest::Approx(0.866025386979660).epsilon(1e-9));
  REQUIRE(result.best_state.size() == 4);
  CHECK(result.best_state.norm() == doctest::Approx(1.0).epsilon(1e-9));

  const WignerVector w =
      wigner(DensityMatrix::pure(PureState::from_amplitudes(result.best_state)));
  CHECK(negative_count(w) == result.negative_entries);
  CHECK(result.negative_entries == 6);
}

TEST_CASE("negative-entry counts on random samples") {
  const NegativeScanResult scan = six_negative_scan(80, 20250815, kThreads);
  CHECK(scan.max_count == 7);
  CHECK(scan.over_limit == 9);
  CHECK(scan.offenders.size() == 4);
  for (const CVector& v : scan.offenders) {
    const WignerVector w = wigner(DensityMatrix::pure(v));
    CHECK(negative_count(w) > 6);
  }
}

TEST_CASE("record csv writers keep stable headers") {
  std::ostringstream dich;
  write_csv(std::vector<DichotomyRecord>{}, dich);
  CHECK(dich.str() ==
        "theta_b,phi_b,z_expect,c_rho,c_sigma,c_joint,deficit,superadditive\n");

  std::ostringstream regr;
  write_csv(std::vector<RegressionPoint>{}, regr);
  CHECK(regr.str() == "sigma_index,z_sigma,c_rho,deficit,ratio\n");

  std::ostringstream noise;
  write_csv(std::vector<NoiseRecord>{}, noise);
  CHECK(noise.str() == "p,c,gamma,kappa\n");
}
