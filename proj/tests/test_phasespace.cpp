#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qmagic/phasespace.hpp"
#include "qmagic/qcore.hpp"
#include "qmagic/stabgen.hpp"

using namespace qmagic;

namespace {

double matrix_dist(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

CMatrix single_point(int q, int p) {
  const double sp = (p % 2 == 0) ? 1.0 : -1.0;
  const double sqp = ((q + p) % 2 == 0) ? 1.0 : -1.0;
  const double sq = (q % 2 == 0) ? 1.0 : -1.0;
  return 0.5 * (identity2() + sp * pauli_x() + sqp * pauli_y() +
                sq * pauli_z());
}

}  // namespace

TEST_CASE("phase space sizes") {
  CHECK(phase_space_size(1) == 4);
  CHECK(phase_space_size(2) == 16);
  CHECK(phase_space_size(3) == 64);
}

TEST_CASE("single-qubit phase-point operators match the hand formula") {
  for (int q = 0; q < 2; ++q) {
    for (int p = 0; p < 2; ++p) {
      const PhasePoint point{{{q, p}}};
      CHECK(matrix_dist(phase_point_operator(point), single_point(q, p)) <
            1e-14);
    }
  }
  // Spot values: each operator is Hermitian with trace one and A^2 has
  // trace one as well (unit Hilbert-Schmidt norm scaled by dimension).
  const CMatrix a10 = phase_point_operator(PhasePoint{{{1, 0}}});
  CHECK(a10(0, 0).real() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(a10.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("flat index is the binary word q1 p1 q2 p2") {
  const PhasePoint point{{{1, 0}, {0, 1}}};
  CHECK(point.index() == 9);  // binary 1001
  const PhasePoint back = PhasePoint::from_index(2, 9);
  CHECK(back.coords == point.coords);

  // The operator at a two-qubit point factors over the qubits.
  const CMatrix expected = kron(single_point(1, 0), single_point(0, 1));
  CHECK(matrix_dist(phase_point_operator(point), expected) < 1e-14);

  const auto& ops = phase_point_operators(2);
  REQUIRE(ops.size() == 16);
  CHECK(matrix_dist(ops[9], expected) < 1e-14);

  for (int idx = 0; idx < 64; ++idx) {
    CHECK(PhasePoint::from_index(3, idx).index() == idx);
  }
}

TEST_CASE("computational zero has weight on the q = 0 row") {
  CVector zero(2);
  zero << 1.0, 0.0;
  const WignerVector w = wigner(DensityMatrix::pure(zero));
  CHECK(w.values(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w.values(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(w.values(2)) < 1e-14);
  CHECK(std::abs(w.values(3)) < 1e-14);
}

TEST_CASE("transform preserves trace and purity") {
  for (uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const DensityMatrix rho = DensityMatrix::pure(haar_random_pure(2, seed));
    const WignerVector w = wigner(rho);
    CHECK(w.values.sum() == doctest::Approx(1.0).epsilon(1e-12));
    // Tr(rho^2) = 2^n sum_alpha W(alpha)^2.
    CHECK(4.0 * w.values.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("inverse transform reconstructs the operator") {
  const DensityMatrix rho = DensityMatrix::pure(haar_random_pure(2, 11));
  CHECK(matrix_dist(inverse_wigner(wigner(rho)), rho.matrix()) < 1e-12);

  // Arbitrary Hermitian operators round-trip through the coefficients.
  CMatrix h = CMatrix::Zero(4, 4);
  h(0, 0) = 0.3;
  h(1, 2) = Complex(0.1, -0.4);
  h(2, 1) = Complex(0.1, 0.4);
  h(3, 3) = -1.2;
  const RVector coeffs = wigner_coefficients(h);
  CHECK(matrix_dist(inverse_wigner(coeffs, 2), h) < 1e-12);
}

TEST_CASE("product states factor pointwise") {
  const PureState a = haar_random_pure(1, 21);
  const PureState b = haar_random_pure(1, 22);
  const WignerVector wa = wigner(DensityMatrix::pure(a));
  const WignerVector wb = wigner(DensityMatrix::pure(b));

  CVector joint(4);
  joint << a.amplitudes(0) * b.amplitudes(0), a.amplitudes(0) * b.amplitudes(1),
      a.amplitudes(1) * b.amplitudes(0), a.amplitudes(1) * b.amplitudes(1);
  const WignerVector wj = wigner(DensityMatrix::pure(joint));

  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(wj.values(4 * i + j) ==
            doctest::Approx(wa.values(i) * wb.values(j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("reference magic state negativity") {
  const WignerVector w = wigner(t_state());
  const double sqrt2 = std::sqrt(2.0);
  CHECK(w.values(0) == doctest::Approx((1.0 + sqrt2) / 4.0).epsilon(1e-12));
  CHECK(w.values(1) == doctest::Approx((1.0 - sqrt2) / 4.0).epsilon(1e-12));
  CHECK(w.values(2) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(w.values(3) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(wigner_l1(w) == doctest::Approx((1.0 + sqrt2) / 2.0).epsilon(1e-12));
  CHECK(negative_count(w) == 1);
  CHECK(total_negativity(w) ==
        doctest::Approx((sqrt2 - 1.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("bell state negativity") {
  CVector bell(4);
  bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  const WignerVector w = wigner(DensityMatrix::pure(bell));
  CHECK(wigner_l1(w) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(negative_count(w) == 4);
  int at_eighth = 0;
  for (int i = 0; i < 16; ++i) {
    if (std::abs(w.values(i) + 0.125) < 1e-12) ++at_eighth;
  }
  CHECK(at_eighth == 4);
  CHECK(total_negativity(w) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("negative count honours its threshold") {
  WignerVector w;
  w.nqubits = 1;
  w.values = RVector::Zero(4);
  w.values << 0.6, 0.5, -0.05, -0.05;
  CHECK(negative_count(w) == 2);
  CHECK(negative_count(w, 0.1) == 0);
}

TEST_CASE("stabilizer vertices carry unit-sum wigner rows") {
  StabilizerSet set = enumerate_stabilizers(2);
  attach_wigner(set);
  for (const StabilizerState& s : set.states) {
    REQUIRE(s.wigner.size() == 16);
    CHECK(s.wigner.sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("largest stabilizer l1 norm by qubit count") {
  CHECK(max_stab_l1(cached_stabilizer_set(1)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_stab_l1(cached_stabilizer_set(2)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(max_stab_l1(cached_stabilizer_set(3)) ==
        doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("csv writer emits coordinates and values") {
  const WignerVector w = wigner(t_state());
  std::ostringstream out;
  write_csv(w, out);
  const std::string text = out.str();
  CHECK(text.find("q1,p1,value") != std::string::npos);
  CHECK(text.find("0,0,") != std::string::npos);
  CHECK(text.find("1,1,0.25") != std::string::npos);
}
