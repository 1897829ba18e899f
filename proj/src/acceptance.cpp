#include "qmagic/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include "qmagic/experiments.hpp"
#include "qmagic/families.hpp"
#include "qmagic/measures.hpp"
#include "qmagic/phasespace.hpp"
#include "qmagic/qcore.hpp"
#include "qmagic/stabgen.hpp"

namespace qmagic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

// Stream tags keep every sampled criterion on its own deterministic
// random stream derived from the base seed.
enum : uint64_t {
  kTagWigner = 2,
  kTagFactor = 3,
  kTagWitnessRandom = 5,
  kTagMono = 11,
  kTagSimBound = 12,
  kTagSubmult = 13,
  kTagMaxC = 14,
  kTagConvex = 15,
  kTagClifford = 16,
  kTagLipschitz = 17,
};

std::string fmt(double value) { return csv_number(value); }

DensityMatrix random_mixed(int nqubits, uint64_t seed) {
  const PureState a = haar_random_pure(nqubits, mix_seed(seed, 1));
  const PureState b = haar_random_pure(nqubits, mix_seed(seed, 2));
  std::mt19937_64 gen(mix_seed(seed, 3));
  const double u = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
  const double t = 0.1 + 0.8 * u;
  const CMatrix m = t * (a.amplitudes * a.amplitudes.adjoint()) +
                    (1.0 - t) * (b.amplitudes * b.amplitudes.adjoint());
  return DensityMatrix::from_matrix(m);
}

struct Context {
  AcceptanceOptions opts;
  int threads = 1;
  const StabilizerSet* set1 = nullptr;
  const StabilizerSet* set2 = nullptr;
  std::map<Family, std::vector<double>> grids;
  std::map<Family, std::vector<KappaRecord>> sweeps;

  const std::vector<double>& grid(Family family) {
    auto it = grids.find(family);
    if (it == grids.end()) {
      it = grids.emplace(family, family_theta_grid(family, 25)).first;
    }
    return it->second;
  }

  const std::vector<KappaRecord>& sweep(Family family) {
    auto it = sweeps.find(family);
    if (it == sweeps.end()) {
      it = sweeps.emplace(family, kappa_sweep(family, grid(family), threads))
               .first;
    }
    return it->second;
  }
};

constexpr Family kFamilies[] = {Family::kRy, Family::kRx, Family::kBellRz};

using Body = std::function<std::pair<bool, std::string>()>;

CriterionResult run_criterion(int id, const std::string& name,
                              const Body& body) {
  CriterionResult result;
  result.id = id;
  result.name = name;
  try {
    auto [passed, detail] = body();
    result.passed = passed;
    result.detail = detail;
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  return result;
}

std::pair<bool, std::string> criterion_counts(Context& ctx) {
  const int n1 = ctx.set1->size();
  const int n2 = ctx.set2->size();
  std::ostringstream detail;
  if (ctx.opts.max_n >= 3) {
    const int n3 = enumerate_stabilizers(3).size();
    detail << "enumerated " << n1 << " / " << n2 << " / " << n3;
    return {n1 == 6 && n2 == 60 && n3 == 1080, detail.str()};
  }
  detail << "enumerated " << n1 << " / " << n2 << " (three-qubit set skipped)";
  return {n1 == 6 && n2 == 60, detail.str()};
}

std::pair<bool, std::string> criterion_wigner_invariants(Context& ctx) {
  double worst_sum = 0.0, worst_roundtrip = 0.0, worst_purity = 0.0;
  for (int n = 1; n <= 2; ++n) {
    for (int i = 0; i < 200; ++i) {
      const uint64_t seed =
          mix_seed(ctx.opts.seed, kTagWigner * 1000 + n * 500 + i);
      const bool pure = i % 2 == 0;
      const DensityMatrix rho = pure
                                    ? DensityMatrix::pure(haar_random_pure(n, seed))
                                    : random_mixed(n, seed);
      const WignerVector w = wigner(rho);
      worst_sum = std::max(worst_sum, std::abs(w.values.sum() - 1.0));
      const CMatrix back = inverse_wigner(w);
      worst_roundtrip = std::max(
          worst_roundtrip, (back - rho.matrix()).cwiseAbs().maxCoeff());
      if (pure) {
        const double target = 1.0 / (1 << n);
        worst_purity =
            std::max(worst_purity, std::abs(w.values.squaredNorm() - target));
      }
    }
  }
  double worst_factor = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PureState a =
        haar_random_pure(1, mix_seed(ctx.opts.seed, kTagFactor * 1000 + 2 * i));
    const PureState b = haar_random_pure(
        1, mix_seed(ctx.opts.seed, kTagFactor * 1000 + 2 * i + 1));
    const RVector wa =
        wigner_coefficients(a.amplitudes * a.amplitudes.adjoint());
    const RVector wb =
        wigner_coefficients(b.amplitudes * b.amplitudes.adjoint());
    const RVector wj = wigner_coefficients(
        kron(a.amplitudes * a.amplitudes.adjoint(),
             b.amplitudes * b.amplitudes.adjoint()));
    for (int idx = 0; idx < 16; ++idx) {
      worst_factor = std::max(
          worst_factor, std::abs(wj(idx) - wa(idx >> 2) * wb(idx & 3)));
    }
  }
  std::ostringstream detail;
  detail << "sum dev " << fmt(worst_sum) << ", roundtrip " << fmt(worst_roundtrip)
         << ", purity " << fmt(worst_purity) << ", factorization "
         << fmt(worst_factor);
  const bool ok = worst_sum <= 1e-10 && worst_roundtrip <= 1e-10 &&
                  worst_purity <= 1e-10 && worst_factor <= 1e-12;
  return {ok, detail.str()};
}

std::pair<bool, std::string> criterion_l1_extremes(Context& ctx) {
  const double m1 = max_stab_l1(*ctx.set1);
  const double m2 = max_stab_l1(*ctx.set2);
  std::ostringstream detail;
  detail << "M1 = " << fmt(m1) << ", M2 = " << fmt(m2);
  return {std::abs(m1 - 1.0) <= 1e-9 && std::abs(m2 - 2.0) <= 1e-9,
          detail.str()};
}

std::pair<bool, std::string> criterion_closed_forms(Context& ctx) {
  double worst_c = 0.0, worst_gamma = 0.0, worst_kappa = 0.0;
  bool kappa_defined = true;
  for (Family family : kFamilies) {
    const double expected = family == Family::kRx ? 2.0 : 1.0;
    for (const KappaRecord& rec : ctx.sweep(family)) {
      worst_c = std::max(worst_c, std::abs(rec.c_lp - rec.c_closed));
      worst_gamma =
          std::max(worst_gamma, std::abs(rec.gamma_lp - rec.gamma_closed));
      if (!rec.kappa) {
        kappa_defined = false;
      } else {
        worst_kappa = std::max(worst_kappa, std::abs(*rec.kappa - expected));
      }
    }
  }
  std::ostringstream detail;
  detail << "C dev " << fmt(worst_c) << ", Gamma dev " << fmt(worst_gamma)
         << ", ratio dev " << fmt(worst_kappa)
         << (kappa_defined ? "" : ", ratio undefined on grid");
  const bool ok = kappa_defined && worst_c <= 1e-7 && worst_gamma <= 1e-7 &&
                  worst_kappa <= 1e-6;
  return {ok, detail.str()};
}

std::pair<bool, std::string> criterion_witness_gaps(Context& ctx) {
  double worst_family = 0.0;
  for (Family family : kFamilies) {
    for (const KappaRecord& rec : ctx.sweep(family)) {
      worst_family =
          std::max(worst_family, std::abs(rec.lp_witness_gap - rec.c_lp));
    }
  }
  std::vector<double> devs(100);
  parallel_for(100, ctx.threads, [&](int i) {
    const PureState psi = haar_random_pure(
        2, mix_seed(ctx.opts.seed, kTagWitnessRandom * 1000 + i));
    const DistanceResult r =
        wigner_distance(DensityMatrix::pure(psi), *ctx.set2);
    devs[static_cast<size_t>(i)] = std::abs(r.witness.gap - r.c);
  });
  double worst_random = 0.0;
  for (double d : devs) worst_random = std::max(worst_random, d);
  std::ostringstream detail;
  detail << "family dev " << fmt(worst_family) << ", random dev "
         << fmt(worst_random);
  return {worst_family <= 1e-7 && worst_random <= 1e-7, detail.str()};
}

std::pair<bool, std::string> criterion_bell_phase_table(Context& ctx) {
  std::vector<double> thetas = ctx.grid(Family::kBellRz);
  for (double extra : {0.3, 0.8, 2.0, 3.6, 5.0}) thetas.push_back(extra);
  double worst = 0.0;
  int bad_counts = 0;
  for (double theta : thetas) {
    const DensityMatrix rho =
        DensityMatrix::pure(family_state(Family::kBellRz, theta));
    const WignerVector w = wigner(rho);
    const WignerVector closed = brz_wigner_closed_form(theta);
    worst = std::max(worst,
                     (w.values - closed.values).cwiseAbs().maxCoeff());
    if (negative_count(w) != 4) ++bad_counts;
  }
  std::ostringstream detail;
  detail << "max entry dev " << fmt(worst) << ", off-count points "
         << bad_counts << " of " << thetas.size();
  return {worst <= 1e-10 && bad_counts == 0, detail.str()};
}

std::pair<bool, std::string> criterion_reference_rows(Context& ctx) {
  const std::vector<BlochAngles> refs = {
      {kHalfPi, 1.05}, {1.20, 1.05}, {0.35, 1.05}, {1.94, 1.05}, {2.80, 1.05}};
  const double targets[] = {0.427, 0.454, 0.332, 0.590, 0.450};
  const bool flags[] = {true, false, false, true, true};
  const std::vector<DichotomyRecord> records =
      dichotomy_scan(t_state(), refs, ctx.threads);
  bool ok = true;
  std::ostringstream detail;
  for (size_t i = 0; i < records.size(); ++i) {
    const double dev = std::abs(records[i].c_joint - targets[i]);
    if (dev > 0.002 || records[i].superadditive != flags[i]) ok = false;
    if (i) detail << ", ";
    detail << fmt(records[i].c_joint);
  }
  detail << " vs targets";
  return {ok, detail.str()};
}

std::pair<bool, std::string> criterion_regression(Context& ctx) {
  const std::vector<RegressionPoint> points = regression_scan(
      regression_rho_azimuths(), regression_sigma_polars(), 1.05, ctx.threads);
  const RegressionResult fit = deficit_regression(points);

  const std::vector<DichotomyRecord> full = dichotomy_scan(
      t_state(), bloch_grid(dichotomy_polar_grid(), dichotomy_azimuth_grid()),
      ctx.threads);
  // The z-hemisphere sign condition can only hold on azimuths in [0, pi/2]:
  // conjugating sigma by Pauli Y is a phase-space translation, so
  // deficit(theta, phi) = deficit(pi - theta, pi - phi) exactly, and every
  // failing northern record forces an equal southern deficit at the mirrored
  // azimuth.  We assert zero violations on the first-quadrant slice and
  // require each remaining violation to match its mirror image exactly.
  int quadrant_violations = 0;
  std::vector<const DichotomyRecord*> mirrored;
  for (const DichotomyRecord& rec : full) {
    if (rec.deficit > kDeficitTol && rec.z_expect <= 0.0) {
      if (rec.sigma.azimuth <= kPi / 2.0 + 1e-12) {
        ++quadrant_violations;
      } else {
        mirrored.push_back(&rec);
      }
    }
  }
  std::vector<BlochAngles> images;
  images.reserve(mirrored.size());
  for (const DichotomyRecord* rec : mirrored) {
    images.push_back({kPi - rec->sigma.polar, kPi - rec->sigma.azimuth});
  }
  const std::vector<DichotomyRecord> image_records =
      dichotomy_scan(t_state(), images, ctx.threads);
  double worst_mirror = 0.0;
  bool mirrors_northern = true;
  for (size_t i = 0; i < mirrored.size(); ++i) {
    worst_mirror = std::max(
        worst_mirror, std::abs(mirrored[i]->deficit - image_records[i].deficit));
    if (image_records[i].z_expect <= 0.0) mirrors_northern = false;
  }
  std::ostringstream detail;
  detail << "slope " << fmt(fit.slope) << ", R^2 " << fmt(fit.r_squared)
         << ", first-quadrant violations " << quadrant_violations << ", "
         << mirrored.size() << " mirror-accounted (max dev "
         << fmt(worst_mirror) << ") of " << full.size();
  const bool ok = fit.slope >= 0.30 && fit.slope <= 0.37 &&
                  fit.r_squared >= 0.95 && quadrant_violations == 0 &&
                  worst_mirror <= 1e-9 && mirrors_northern;
  return {ok, detail.str()};
}

std::pair<bool, std::string> criterion_equatorial_rule(Context& ctx) {
  const double residual = equatorial_equality_residual(
      equatorial_phi_grid(12), equatorial_phi_grid(12), ctx.threads);
  std::ostringstream detail;
  detail << "max residual " << fmt(residual);
  return {residual <= 1e-8, detail.str()};
}

std::pair<bool, std::string> criterion_noise_rigidity(Context& ctx) {
  double worst_kappa = 0.0, worst_c = 0.0;
  bool kappa_defined = true;
  for (double theta : {kPi / 6.0, kPi / 4.0, kPi / 3.0}) {
    const double pstar = critical_noise(theta);
    const std::vector<NoiseRecord> records =
        noise_sweep(Family::kRx, theta, noise_p_grid(theta), ctx.threads);
    for (const NoiseRecord& rec : records) {
      if (rec.p <= pstar - 0.01 + 1e-12) {
        if (!rec.kappa) {
          kappa_defined = false;
        } else {
          worst_kappa = std::max(worst_kappa, std::abs(*rec.kappa - 2.0));
        }
      }
      if (rec.p >= pstar + 0.01 - 1e-12) {
        worst_c = std::max(worst_c, rec.c);
      }
    }
  }
  std::ostringstream detail;
  detail << "ratio dev below threshold " << fmt(worst_kappa)
         << ", distance above threshold " << fmt(worst_c)
         << (kappa_defined ? "" : ", ratio undefined below threshold");
  const bool ok = kappa_defined && worst_kappa <= 1e-5 && worst_c <= 1e-6;
  return {ok, detail.str()};
}

std::pair<bool, std::string> criterion_nonmonotonicity(Context& ctx) {
  const MonotonicityStats stats = monotonicity_sample(
      2000, mix_seed(ctx.opts.seed, kTagMono), ctx.threads);
  const int outside = hadamard_permuted_outside_count(ctx.threads);
  std::ostringstream detail;
  detail << "fraction " << fmt(stats.fraction_increased) << ", max increase "
         << fmt(stats.max_increase) << ", permuted outside " << outside
         << " of 60";
  const bool ok = stats.fraction_increased >= 0.44 &&
                  stats.fraction_increased <= 0.54 &&
                  stats.max_increase >= 0.10 && outside == 24;
  return {ok, detail.str()};
}

std::pair<bool, std::string> criterion_bounds(Context& ctx) {
  const double sim = simulation_bound_min_slack(
      500, mix_seed(ctx.opts.seed, kTagSimBound), ctx.threads);
  const double sub = submultiplicativity_min_slack(
      200, mix_seed(ctx.opts.seed, kTagSubmult), ctx.threads);
  std::ostringstream detail;
  detail << "simulation-bound min slack " << fmt(sim)
         << ", extent-product min slack " << fmt(sub);
  return {sim >= -1e-8 && sub >= -1e-7, detail.str()};
}

std::pair<bool, std::string> criterion_max_distance(Context& ctx) {
  const MaxCResult result =
      max_c_search(50, mix_seed(ctx.opts.seed, kTagMaxC), ctx.threads);
  std::ostringstream detail;
  detail << "best " << fmt(result.best_c) << ", negative entries "
         << result.negative_entries;
  return {result.best_c >= 0.86 && result.negative_entries == 6, detail.str()};
}

std::pair<bool, std::string> criterion_code_roundtrip(Context& ctx) {
  struct Point {
    Family family;
    double theta;
    double c_ref;
  };
  std::vector<Point> points;
  for (Family family : kFamilies) {
    for (const KappaRecord& rec : ctx.sweep(family)) {
      points.push_back({family, rec.theta, rec.c_lp});
    }
  }
  const PauliString errors[] = {PauliString::from_string("XI"),
                                PauliString::from_string("IX")};
  const CMatrix zz = kron(pauli_z(), pauli_z());

  std::vector<double> drift(points.size(), 0.0);
  std::vector<double> comm(points.size(), 0.0);
  parallel_for(static_cast<int>(points.size()), ctx.threads, [&](int i) {
    const Point& pt = points[static_cast<size_t>(i)];
    const DensityMatrix rho =
        DensityMatrix::pure(family_state(pt.family, pt.theta));
    double worst = 0.0;
    for (const PauliString& error : errors) {
      const DensityMatrix restored = correctable_error_roundtrip(rho, error);
      const double c = wigner_distance(restored, *ctx.set2).c;
      worst = std::max(worst, std::abs(c - pt.c_ref));
    }
    drift[static_cast<size_t>(i)] = worst;
    const CMatrix witness = closed_form_witness(pt.family, pt.theta);
    comm[static_cast<size_t>(i)] =
        (witness * zz - zz * witness).cwiseAbs().maxCoeff();
  });
  double worst_drift = 0.0, worst_comm = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    worst_drift = std::max(worst_drift, drift[i]);
    worst_comm = std::max(worst_comm, comm[i]);
  }
  std::ostringstream detail;
  detail << "max distance drift " << fmt(worst_drift)
         << ", max witness commutator " << fmt(worst_comm);
  return {worst_drift <= 1e-9 && worst_comm <= 1e-12, detail.str()};
}

std::pair<bool, std::string> criterion_measure_axioms(Context& ctx) {
  // Zero distance on every enumerated free state, strictly positive on the
  // family grids.
  std::vector<const StabilizerState*> free_states;
  for (const StabilizerState& st : ctx.set1->states) free_states.push_back(&st);
  for (const StabilizerState& st : ctx.set2->states) free_states.push_back(&st);
  std::vector<double> free_c(free_states.size());
  parallel_for(static_cast<int>(free_states.size()), ctx.threads, [&](int i) {
    const StabilizerState& st = *free_states[static_cast<size_t>(i)];
    const StabilizerSet& set = st.nqubits == 1 ? *ctx.set1 : *ctx.set2;
    free_c[static_cast<size_t>(i)] =
        wigner_distance(DensityMatrix::pure(st.vector), set).c;
  });
  double worst_free = 0.0;
  for (double c : free_c) worst_free = std::max(worst_free, c);
  double min_family = 1.0;
  for (Family family : kFamilies) {
    for (const KappaRecord& rec : ctx.sweep(family)) {
      min_family = std::min(min_family, rec.c_lp);
    }
  }

  // Convexity of the distance under state mixtures.
  std::vector<double> convex_violation(10, 0.0);
  parallel_for(10, ctx.threads, [&](int i) {
    const uint64_t seed = mix_seed(ctx.opts.seed, kTagConvex * 1000 + i);
    const DensityMatrix rho1 =
        i % 2 == 0 ? DensityMatrix::pure(haar_random_pure(2, mix_seed(seed, 10)))
                   : random_mixed(2, mix_seed(seed, 11));
    const DensityMatrix rho2 = random_mixed(2, mix_seed(seed, 12));
    const double c1 = wigner_distance(rho1, *ctx.set2).c;
    const double c2 = wigner_distance(rho2, *ctx.set2).c;
    double worst = 0.0;
    for (int k = 1; k <= 9; ++k) {
      const double p = k / 10.0;
      const DensityMatrix mixed = DensityMatrix::from_matrix(
          p * rho1.matrix() + (1.0 - p) * rho2.matrix());
      const double c = wigner_distance(mixed, *ctx.set2).c;
      worst = std::max(worst, c - (p * c1 + (1.0 - p) * c2));
    }
    convex_violation[static_cast<size_t>(i)] = worst;
  });
  double worst_convex = 0.0;
  for (double v : convex_violation) worst_convex = std::max(worst_convex, v);

  // Invariance under the 24 single-qubit Cliffords.
  std::vector<double> clifford_dev(5, 0.0);
  parallel_for(5, ctx.threads, [&](int i) {
    const DensityMatrix rho =
        random_mixed(1, mix_seed(ctx.opts.seed, kTagClifford * 1000 + i));
    const double c0 = wigner_distance(rho, *ctx.set1).c;
    double worst = 0.0;
    for (const CMatrix& u : single_qubit_cliffords()) {
      const double c = wigner_distance(apply_unitary(rho, u), *ctx.set1).c;
      worst = std::max(worst, std::abs(c - c0));
    }
    clifford_dev[static_cast<size_t>(i)] = worst;
  });
  double worst_clifford = 0.0;
  for (double v : clifford_dev) worst_clifford = std::max(worst_clifford, v);

  // Lipschitz bound against the l1 distance of the Wigner vectors.
  std::vector<double> lipschitz_violation(20, 0.0);
  parallel_for(20, ctx.threads, [&](int i) {
    const uint64_t seed = mix_seed(ctx.opts.seed, kTagLipschitz * 1000 + i);
    const DensityMatrix rho1 = random_mixed(2, mix_seed(seed, 20));
    const DensityMatrix rho2 =
        i % 2 == 0 ? DensityMatrix::pure(haar_random_pure(2, mix_seed(seed, 21)))
                   : random_mixed(2, mix_seed(seed, 22));
    const double c1 = wigner_distance(rho1, *ctx.set2).c;
    const double c2 = wigner_distance(rho2, *ctx.set2).c;
    const double l1 =
        (wigner(rho1).values - wigner(rho2).values).cwiseAbs().sum();
    lipschitz_violation[static_cast<size_t>(i)] = std::abs(c1 - c2) - l1;
  });
  double worst_lipschitz = 0.0;
  for (double v : lipschitz_violation) {
    worst_lipschitz = std::max(worst_lipschitz, v);
  }

  std::ostringstream detail;
  detail << "free max C " << fmt(worst_free) << ", family min C "
         << fmt(min_family) << ", convexity excess " << fmt(worst_convex)
         << ", Clifford dev " << fmt(worst_clifford) << ", Lipschitz excess "
         << fmt(worst_lipschitz);
  const bool ok = worst_free <= 1e-9 && min_family > 1e-6 &&
                  worst_convex <= 1e-8 && worst_clifford <= 1e-8 &&
                  worst_lipschitz <= 1e-8;
  return {ok, detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  Context ctx;
  ctx.opts = options;
  ctx.threads = options.threads > 0
                    ? options.threads
                    : std::max(1u, std::thread::hardware_concurrency());
  ctx.set1 = &cached_stabilizer_set(1);
  ctx.set2 = &cached_stabilizer_set(2);

  std::vector<CriterionResult> results;
  results.push_back(run_criterion(1, "stabilizer-counts",
                                  [&] { return criterion_counts(ctx); }));
  results.push_back(run_criterion(2, "wigner-transform-invariants", [&] {
    return criterion_wigner_invariants(ctx);
  }));
  results.push_back(run_criterion(3, "stabilizer-l1-extremes",
                                  [&] { return criterion_l1_extremes(ctx); }));
  results.push_back(run_criterion(4, "family-closed-forms",
                                  [&] { return criterion_closed_forms(ctx); }));
  results.push_back(run_criterion(5, "witness-gaps",
                                  [&] { return criterion_witness_gaps(ctx); }));
  results.push_back(run_criterion(6, "bell-phase-table", [&] {
    return criterion_bell_phase_table(ctx);
  }));
  results.push_back(run_criterion(7, "reference-product-rows", [&] {
    return criterion_reference_rows(ctx);
  }));
  results.push_back(run_criterion(8, "deficit-regression-and-sign",
                                  [&] { return criterion_regression(ctx); }));
  results.push_back(run_criterion(9, "equatorial-product-rule", [&] {
    return criterion_equatorial_rule(ctx);
  }));
  results.push_back(run_criterion(10, "noise-rigidity", [&] {
    return criterion_noise_rigidity(ctx);
  }));
  results.push_back(run_criterion(11, "hadamard-nonmonotonicity", [&] {
    return criterion_nonmonotonicity(ctx);
  }));
  results.push_back(
      run_criterion(12, "simulation-and-extent-bounds",
                    [&] { return criterion_bounds(ctx); }));
  results.push_back(run_criterion(13, "max-distance-search", [&] {
    return criterion_max_distance(ctx);
  }));
  results.push_back(run_criterion(14, "code-error-roundtrip", [&] {
    return criterion_code_roundtrip(ctx);
  }));
  results.push_back(run_criterion(15, "measure-axioms", [&] {
    return criterion_measure_axioms(ctx);
  }));
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

void print_results(const std::vector<CriterionResult>& results,
                   std::ostream& out) {
  int passed = 0;
  for (const CriterionResult& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name
        << " -- " << r.detail << "\n";
    if (r.passed) ++passed;
  }
  out << passed << "/" << results.size() << " criteria passed\n";
}

}  // namespace qmagic
