#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "qmagic/families.hpp"
#include "qmagic/measures.hpp"
#include "qmagic/phasespace.hpp"
#include "qmagic/qcore.hpp"

using namespace qmagic;

namespace {

constexpr double kPi = std::numbers::pi;

double matrix_dist(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("family names round-trip") {
  for (Family f : {Family::kRy, Family::kRx, Family::kBellRz}) {
    CHECK(family_from_string(family_name(f)) == f);
  }
  CHECK_THROWS_AS(family_from_string("nope"), std::invalid_argument);
}

TEST_CASE("family states have the advertised amplitudes") {
  const double t = 0.9;
  const Complex i(0.0, 1.0);

  const PureState ry = family_state(Family::kRy, t);
  CHECK(std::abs(ry.amplitudes(0) - Complex(std::cos(t / 2), 0.0)) < 1e-12);
  CHECK(std::abs(ry.amplitudes(3) - Complex(std::sin(t / 2), 0.0)) < 1e-12);
  CHECK(std::abs(ry.amplitudes(1)) < 1e-12);
  CHECK(std::abs(ry.amplitudes(2)) < 1e-12);

  const PureState rx = family_state(Family::kRx, t);
  CHECK(std::abs(rx.amplitudes(3) - (-i) * std::sin(t / 2)) < 1e-12);

  const PureState brz = family_state(Family::kBellRz, t);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(brz.amplitudes(0) - Complex(r, 0.0)) < 1e-12);
  CHECK(std::abs(brz.amplitudes(3) - std::polar(r, t)) < 1e-12);

  CHECK_THROWS_AS(family_state(Family::kRy, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(family_state(Family::kRy, kPi + 0.1), std::invalid_argument);
}

TEST_CASE("closed forms match the optimization path") {
  const auto& set2 = cached_stabilizer_set(2);
  const struct {
    Family family;
    double theta;
  } cases[] = {{Family::kRy, 1.0},
               {Family::kRx, 0.6},
               {Family::kBellRz, 2.0}};
  for (const auto& cs : cases) {
    const ClosedForm cf = closed_form(cs.family, cs.theta);
    const DensityMatrix rho =
        DensityMatrix::pure(family_state(cs.family, cs.theta));
    CHECK(wigner_distance(rho, set2).c ==
          doctest::Approx(cf.c).epsilon(1e-7));
    CHECK(stabilizer_extent(rho, set2).gamma ==
          doctest::Approx(cf.gamma).epsilon(1e-7));
  }
}

TEST_CASE("family tightness constants") {
  const auto ry = closed_form(Family::kRy, kPi / 4.0);
  REQUIRE(ry.kappa.has_value());
  CHECK(*ry.kappa == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ry.c == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
  CHECK(ry.gamma == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const auto rx = closed_form(Family::kRx, kPi / 3.0);
  REQUIRE(rx.kappa.has_value());
  CHECK(*rx.kappa == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rx.c ==
        doctest::Approx((std::sqrt(3.0) / 2.0 + 0.5 - 1.0) / 2.0).epsilon(1e-12));
  CHECK(rx.gamma ==
        doctest::Approx((std::sqrt(3.0) + 1.0) / 2.0).epsilon(1e-12));

  const auto brz = closed_form(Family::kBellRz, kPi / 4.0);
  REQUIRE(brz.kappa.has_value());
  CHECK(*brz.kappa == doctest::Approx(1.0).epsilon(1e-12));

  // Stabilizer points have no ratio.
  CHECK_FALSE(closed_form(Family::kRy, 0.0).kappa.has_value());
}

TEST_CASE("closed-form witness separates the state from the polytope") {
  const auto& set2 = cached_stabilizer_set(2);
  const struct {
    Family family;
    double theta;
  } cases[] = {{Family::kRy, 0.8}, {Family::kBellRz, 2.6}};
  for (const auto& cs : cases) {
    const CMatrix h = closed_form_witness(cs.family, cs.theta);
    const DensityMatrix rho =
        DensityMatrix::pure(family_state(cs.family, cs.theta));
    const double trace_rho = (h * rho.matrix()).trace().real();
    double free_max = -1e30;
    for (const StabilizerState& s : set2.states) {
      const double val =
          (s.vector.adjoint() * h * s.vector)(0).real();
      free_max = std::max(free_max, val);
    }
    const double c = closed_form(cs.family, cs.theta).c;
    CHECK(trace_rho - free_max == doctest::Approx(c).epsilon(1e-7));
  }

  // Angles on a sign-flip boundary have no single adapted witness.
  CHECK_THROWS_AS(closed_form_witness(Family::kRy, kPi / 2.0),
                  std::invalid_argument);
}

TEST_CASE("bell-phase wigner table matches the transform") {
  for (double t : {0.4, 0.9, 2.3, 4.0, 5.8}) {
    const WignerVector table = brz_wigner_closed_form(t);
    const WignerVector direct =
        wigner(DensityMatrix::pure(family_state(Family::kBellRz, t)));
    CHECK((table.values - direct.values).cwiseAbs().maxCoeff() < 1e-12);
  }
  // Away from the axes exactly four entries are negative.
  CHECK(negative_count(brz_wigner_closed_form(0.9)) == 4);
  CHECK(negative_count(brz_wigner_closed_form(2.3)) == 4);
}

TEST_CASE("logical frame and logical bloch vector") {
  const LogicalFrame& frame = LogicalFrame::repetition();
  CHECK(matrix_dist(frame.xl, kron(pauli_x(), pauli_x())) < 1e-14);
  CHECK(matrix_dist(frame.yl, kron(pauli_y(), pauli_x())) < 1e-14);
  CHECK(matrix_dist(frame.zl, kron(pauli_z(), identity2())) < 1e-14);
  CHECK(matrix_dist(frame.code_stabilizer, kron(pauli_z(), pauli_z())) <
        1e-14);

  const double t = 0.7;
  const auto b_ry =
      logical_bloch(DensityMatrix::pure(family_state(Family::kRy, t)));
  CHECK(b_ry[0] == doctest::Approx(std::sin(t)).epsilon(1e-12));
  CHECK(std::abs(b_ry[1]) < 1e-12);
  CHECK(b_ry[2] == doctest::Approx(std::cos(t)).epsilon(1e-12));

  const auto b_rx =
      logical_bloch(DensityMatrix::pure(family_state(Family::kRx, t)));
  CHECK(std::abs(b_rx[0]) < 1e-12);
  CHECK(b_rx[1] == doctest::Approx(-std::sin(t)).epsilon(1e-12));
  CHECK(b_rx[2] == doctest::Approx(std::cos(t)).epsilon(1e-12));

  const auto b_brz =
      logical_bloch(DensityMatrix::pure(family_state(Family::kBellRz, t)));
  CHECK(b_brz[0] == doctest::Approx(std::cos(t)).epsilon(1e-12));
  CHECK(b_brz[1] == doctest::Approx(std::sin(t)).epsilon(1e-12));
  CHECK(std::abs(b_brz[2]) < 1e-12);

  // States outside the codespace are rejected.
  CVector stray(4);
  stray << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(logical_bloch(DensityMatrix::pure(stray)),
                  std::invalid_argument);
}

TEST_CASE("error correction round trip") {
  const DensityMatrix rho =
      DensityMatrix::pure(family_state(Family::kRy, 1.1));

  // A single bit flip triggers the syndrome and is undone exactly.
  const DensityMatrix fixed =
      correctable_error_roundtrip(rho, PauliString::from_string("XI"));
  CHECK(matrix_dist(fixed.matrix(), rho.matrix()) < 1e-12);

  // The stabilizer itself acts as the identity on the codespace.
  const DensityMatrix trivial =
      correctable_error_roundtrip(rho, PauliString::from_string("ZZ"));
  CHECK(matrix_dist(trivial.matrix(), rho.matrix()) < 1e-12);

  // Logical operators commute with the stabilizer but corrupt the state.
  CHECK_THROWS_AS(
      correctable_error_roundtrip(rho, PauliString::from_string("XX")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      correctable_error_roundtrip(rho, PauliString::from_string("ZI")),
      std::invalid_argument);
}

TEST_CASE("codespace depolarizing scales the logical bloch vector") {
  const double t = 1.0;
  const DensityMatrix rho =
      DensityMatrix::pure(family_state(Family::kRy, t));

  CHECK(matrix_dist(logical_depolarize(rho, 0.0).matrix(), rho.matrix()) <
        1e-14);

  const DensityMatrix flat = logical_depolarize(rho, 1.0);
  const auto b = logical_bloch(flat);
  CHECK(std::abs(b[0]) < 1e-12);
  CHECK(std::abs(b[1]) < 1e-12);
  CHECK(std::abs(b[2]) < 1e-12);

  const double p = 0.3;
  const auto shrunk = logical_bloch(logical_depolarize(rho, p));
  CHECK(shrunk[0] == doctest::Approx((1.0 - p) * std::sin(t)).epsilon(1e-12));
  CHECK(shrunk[2] == doctest::Approx((1.0 - p) * std::cos(t)).epsilon(1e-12));

  CHECK_THROWS_AS(logical_depolarize(rho, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(logical_depolarize(rho, 1.01), std::invalid_argument);
  CVector stray(4);
  stray << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(logical_depolarize(DensityMatrix::pure(stray), 0.2),
                  std::invalid_argument);
}

TEST_CASE("noisy family distance follows the closed form") {
  const double t = 1.0;
  const double p = 0.1;
  const auto& set2 = cached_stabilizer_set(2);
  const DensityMatrix noisy = logical_depolarize(
      DensityMatrix::pure(family_state(Family::kRy, t)), p);
  const double predicted =
      std::max(0.0, (1.0 - p) * (std::sin(t) + std::cos(t)) - 1.0);
  CHECK(wigner_distance(noisy, set2).c ==
        doctest::Approx(predicted).epsilon(1e-8));
}

TEST_CASE("critical noise is where the magic dies") {
  CHECK(critical_noise(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(critical_noise(kPi / 2.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(critical_noise(kPi / 3.0) ==
        doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-12));
  CHECK(critical_noise(kPi / 4.0) ==
        doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("three-term codespace decomposition") {
  const double t = 0.7;
  const auto terms = ry_codespace_decomposition(t);
  REQUIRE(terms.size() == 3);

  double sum = 0.0;
  double l1 = 0.0;
  CMatrix mix = CMatrix::Zero(4, 4);
  for (const auto& [weight, projector] : terms) {
    sum += weight;
    l1 += std::abs(weight);
    mix += weight * projector;
    CHECK(is_hermitian(projector));
    CHECK(projector.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(l1 == doctest::Approx(std::sin(t) + std::cos(t)).epsilon(1e-12));

  const DensityMatrix rho =
      DensityMatrix::pure(family_state(Family::kRy, t));
  CHECK(matrix_dist(mix, rho.matrix()) < 1e-12);

  CHECK_THROWS_AS(ry_codespace_decomposition(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ry_codespace_decomposition(kPi / 2.0),
                  std::invalid_argument);
}
