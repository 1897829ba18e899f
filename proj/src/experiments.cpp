#include "qmagic/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>

namespace qmagic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

double distance_c(const DensityMatrix& rho, const StabilizerSet& set) {
  return wigner_distance(rho, set).c;
}

DensityMatrix product_state(const CMatrix& a, const CMatrix& b) {
  return DensityMatrix::from_matrix(kron(a, b));
}

double z_expectation(const CMatrix& rho) {
  return (pauli_z() * rho).trace().real();
}

}  // namespace

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string csv_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

double single_qubit_c_oracle(double bx, double by, double bz) {
  const double excess =
      (std::abs(bx) + std::abs(by) + std::abs(bz) - 1.0) / 2.0;
  return std::max(0.0, excess);
}

std::vector<BlochAngles> bloch_grid(const std::vector<double>& polars,
                                    const std::vector<double>& azimuths) {
  std::vector<BlochAngles> grid;
  grid.reserve(polars.size() * azimuths.size());
  for (double polar : polars) {
    for (double azimuth : azimuths) grid.push_back({polar, azimuth});
  }
  return grid;
}

std::vector<double> dichotomy_polar_grid() {
  std::vector<double> polars;
  for (int j = 0; j < 11; ++j) {
    polars.push_back(0.1 + (3.04 - 0.1) * j / 10.0);
  }
  const double reference[] = {0.35, 1.20, kHalfPi, 1.94, 2.80};
  polars.insert(polars.end(), std::begin(reference), std::end(reference));
  std::sort(polars.begin(), polars.end());
  return polars;
}

std::vector<double> dichotomy_azimuth_grid() { return {0.0, 0.7, 1.05, 2.1}; }

std::vector<DichotomyRecord> dichotomy_scan(
    const DensityMatrix& rho, const std::vector<BlochAngles>& sigmas,
    int threads) {
  if (rho.nqubits() != 1) {
    throw std::invalid_argument("dichotomy scan takes a single-qubit state");
  }
  const StabilizerSet& set1 = cached_stabilizer_set(1);
  const StabilizerSet& set2 = cached_stabilizer_set(2);
  const double c_rho = distance_c(rho, set1);

  std::vector<DichotomyRecord> records(sigmas.size());
  parallel_for(static_cast<int>(sigmas.size()), threads, [&](int i) {
    const BlochAngles angles = sigmas[static_cast<size_t>(i)];
    const PureState sigma = bloch_state(angles.polar, angles.azimuth);
    const CMatrix sigma_m =
        sigma.amplitudes * sigma.amplitudes.adjoint();
    DichotomyRecord rec;
    rec.sigma = angles;
    rec.z_expect = z_expectation(sigma_m);
    rec.c_rho = c_rho;
    rec.c_sigma = distance_c(DensityMatrix::pure(sigma), set1);
    rec.c_joint = distance_c(product_state(rho.matrix(), sigma_m), set2);
    rec.deficit = rec.c_rho + rec.c_sigma - rec.c_joint;
    rec.superadditive = rec.deficit <= kDeficitTol;
    records[static_cast<size_t>(i)] = rec;
  });
  return records;
}

std::vector<double> equatorial_phi_grid(int points) {
  if (points <= 0) throw std::invalid_argument("grid needs at least 1 point");
  std::vector<double> phis(static_cast<size_t>(points));
  for (int k = 0; k < points; ++k) {
    phis[static_cast<size_t>(k)] = (k + 0.5) * 2.0 * kPi / points;
  }
  return phis;
}

double equatorial_equality_residual(const std::vector<double>& phis_rho,
                                    const std::vector<double>& phis_sigma,
                                    int threads) {
  const StabilizerSet& set1 = cached_stabilizer_set(1);
  const StabilizerSet& set2 = cached_stabilizer_set(2);

  auto singles = [&](const std::vector<double>& phis) {
    std::vector<std::pair<CMatrix, double>> out(phis.size());
    parallel_for(static_cast<int>(phis.size()), threads, [&](int i) {
      const PureState psi = bloch_state(kHalfPi, phis[static_cast<size_t>(i)]);
      const CMatrix m = psi.amplitudes * psi.amplitudes.adjoint();
      out[static_cast<size_t>(i)] = {m, distance_c(DensityMatrix::pure(psi), set1)};
    });
    return out;
  };
  const auto rhos = singles(phis_rho);
  const auto sigmas = singles(phis_sigma);

  const int n = static_cast<int>(rhos.size());
  const int m = static_cast<int>(sigmas.size());
  std::vector<double> residuals(static_cast<size_t>(n) * m);
  parallel_for(n * m, threads, [&](int k) {
    const auto& [rho_m, c1] = rhos[static_cast<size_t>(k / m)];
    const auto& [sigma_m, c2] = sigmas[static_cast<size_t>(k % m)];
    const double joint = distance_c(product_state(rho_m, sigma_m), set2);
    residuals[static_cast<size_t>(k)] =
        std::abs(joint - (c1 + c2 + c1 * c2));
  });
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  return worst;
}

std::vector<double> regression_rho_azimuths() {
  std::vector<double> phis(24);
  for (int k = 0; k < 24; ++k) phis[static_cast<size_t>(k)] = (k + 0.5) * kHalfPi / 24.0;
  return phis;
}

std::vector<double> regression_sigma_polars() {
  return {0.35, 0.70, 1.05, 1.20, 1.40};
}

std::vector<RegressionPoint> regression_scan(
    const std::vector<double>& rho_azimuths,
    const std::vector<double>& sigma_polars, double sigma_azimuth,
    int threads) {
  const StabilizerSet& set1 = cached_stabilizer_set(1);
  const StabilizerSet& set2 = cached_stabilizer_set(2);

  const int nrho = static_cast<int>(rho_azimuths.size());
  const int nsigma = static_cast<int>(sigma_polars.size());

  std::vector<CMatrix> rho_m(static_cast<size_t>(nrho));
  std::vector<double> c_rho(static_cast<size_t>(nrho));
  parallel_for(nrho, threads, [&](int r) {
    const PureState psi =
        bloch_state(kHalfPi, rho_azimuths[static_cast<size_t>(r)]);
    rho_m[static_cast<size_t>(r)] = psi.amplitudes * psi.amplitudes.adjoint();
    c_rho[static_cast<size_t>(r)] = distance_c(DensityMatrix::pure(psi), set1);
  });

  std::vector<CMatrix> sigma_m(static_cast<size_t>(nsigma));
  std::vector<double> c_sigma(static_cast<size_t>(nsigma));
  std::vector<double> z_sigma(static_cast<size_t>(nsigma));
  parallel_for(nsigma, threads, [&](int s) {
    const PureState psi =
        bloch_state(sigma_polars[static_cast<size_t>(s)], sigma_azimuth);
    const CMatrix m = psi.amplitudes * psi.amplitudes.adjoint();
    sigma_m[static_cast<size_t>(s)] = m;
    c_sigma[static_cast<size_t>(s)] = distance_c(DensityMatrix::pure(psi), set1);
    z_sigma[static_cast<size_t>(s)] = z_expectation(m);
  });

  std::vector<RegressionPoint> points(static_cast<size_t>(nrho) * nsigma);
  parallel_for(nrho * nsigma, threads, [&](int k) {
    const int s = k / nrho;
    const int r = k % nrho;
    const double joint = distance_c(
        product_state(rho_m[static_cast<size_t>(r)], sigma_m[static_cast<size_t>(s)]),
        set2);
    RegressionPoint pt;
    pt.sigma_index = s;
    pt.z_sigma = z_sigma[static_cast<size_t>(s)];
    pt.c_rho = c_rho[static_cast<size_t>(r)];
    pt.deficit = c_rho[static_cast<size_t>(r)] + c_sigma[static_cast<size_t>(s)] - joint;
    points[static_cast<size_t>(k)] = pt;
  });
  return points;
}

RegressionResult deficit_regression(const std::vector<RegressionPoint>& points) {
  double sxx = 0.0, sxy = 0.0, sum_y = 0.0;
  std::vector<const RegressionPoint*> northern;
  for (const RegressionPoint& pt : points) {
    if (pt.z_sigma > 0.0) northern.push_back(&pt);
  }
  if (northern.size() < 8) {
    throw std::invalid_argument("regression needs at least 8 northern points");
  }
  for (const RegressionPoint* pt : northern) {
    sxx += pt->c_rho * pt->c_rho;
    sxy += pt->c_rho * pt->deficit;
    sum_y += pt->deficit;
  }
  if (sxx <= 0.0) {
    throw std::invalid_argument("regression abscissae are degenerate");
  }
  RegressionResult result;
  result.slope = sxy / sxx;
  result.n_points = static_cast<int>(northern.size());
  double c_min = northern.front()->c_rho, c_max = c_min;
  for (const RegressionPoint* pt : northern) {
    c_min = std::min(c_min, pt->c_rho);
    c_max = std::max(c_max, pt->c_rho);
  }
  result.comparable = (c_max - c_min) > 1e-12;
  const double mean_y = sum_y / static_cast<double>(northern.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (const RegressionPoint* pt : northern) {
    const double fit = result.slope * pt->c_rho;
    ss_res += (pt->deficit - fit) * (pt->deficit - fit);
    ss_tot += (pt->deficit - mean_y) * (pt->deficit - mean_y);
  }
  result.r_squared =
      ss_tot > 1e-30 ? 1.0 - ss_res / ss_tot : (ss_res < 1e-24 ? 1.0 : 0.0);
  return result;
}

std::vector<double> family_theta_grid(Family family, int points) {
  if (points <= 0) throw std::invalid_argument("grid needs at least 1 point");
  const double span = family == Family::kBellRz ? 2.0 * kPi : kPi;
  const double margin = 1e-3;
  std::vector<double> thetas(static_cast<size_t>(points));
  for (int j = 0; j < points; ++j) {
    double theta = span * (j + 0.5) / points;
    const double nearest = std::round(theta / kHalfPi) * kHalfPi;
    if (std::abs(theta - nearest) < margin) {
      const double up = nearest + margin;
      const double down = nearest - margin;
      const bool up_ok = up <= span && (family != Family::kBellRz || up < span);
      const bool down_ok = down >= 0.0;
      if (theta >= nearest) {
        theta = up_ok ? up : down;
      } else {
        theta = down_ok ? down : up;
      }
    }
    thetas[static_cast<size_t>(j)] = theta;
  }
  return thetas;
}

std::vector<KappaRecord> kappa_sweep(Family family,
                                     const std::vector<double>& thetas,
                                     int threads) {
  for (double theta : thetas) {
    const double nearest = std::round(theta / kHalfPi) * kHalfPi;
    if (std::abs(theta - nearest) < 1e-6) {
      throw std::invalid_argument(
          "sweep grid must stay away from multiples of pi/2");
    }
  }
  const StabilizerSet& set2 = cached_stabilizer_set(2);

  std::vector<KappaRecord> records(thetas.size());
  parallel_for(static_cast<int>(thetas.size()), threads, [&](int i) {
    const double theta = thetas[static_cast<size_t>(i)];
    const DensityMatrix rho = DensityMatrix::pure(family_state(family, theta));
    const MagicReport report = magic_report(rho, set2);
    const ClosedForm closed = closed_form(family, theta);
    const CMatrix witness = closed_form_witness(family, theta);

    KappaRecord rec;
    rec.family = family;
    rec.theta = theta;
    rec.c_lp = report.c;
    rec.c_closed = closed.c;
    rec.gamma_lp = report.gamma;
    rec.gamma_closed = closed.gamma;
    rec.kappa = report.kappa;
    rec.lp_witness_gap = report.distance.witness.gap;
    rec.cf_witness_trace = (witness * rho.matrix()).trace().real();
    double free_max = 0.0;
    bool first = true;
    for (const StabilizerState& st : set2.states) {
      const double value = st.vector.dot(witness * st.vector).real();
      free_max = first ? value : std::max(free_max, value);
      first = false;
    }
    rec.cf_free_max = free_max;
    rec.negative_entries = negative_count(wigner(rho));
    records[static_cast<size_t>(i)] = rec;
  });

  const double expected = family == Family::kRx ? 2.0 : 1.0;
  for (const KappaRecord& rec : records) {
    if (rec.kappa && std::abs(*rec.kappa - expected) > 1e-6) {
      throw std::logic_error("tightness ratio drifted from the family "
                             "constant at theta = " + csv_number(rec.theta));
    }
  }
  return records;
}

std::vector<double> noise_p_grid(double theta) {
  const double pstar = critical_noise(theta);
  const double candidates[] = {0.0,
                               0.25 * pstar,
                               0.50 * pstar,
                               0.75 * pstar,
                               pstar - 0.02,
                               pstar - 0.01,
                               pstar + 0.01,
                               pstar + 0.05,
                               pstar + 0.15};
  std::vector<double> ps;
  for (double p : candidates) {
    if (p >= 0.0 && p < 1.0) ps.push_back(p);
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end(),
                       [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
           ps.end());
  return ps;
}

std::vector<NoiseRecord> noise_sweep(Family family, double theta,
                                     const std::vector<double>& ps,
                                     int threads) {
  if (family == Family::kBellRz) {
    throw std::invalid_argument("noise sweep covers the Ry and Rx families");
  }
  const StabilizerSet& set2 = cached_stabilizer_set(2);
  const DensityMatrix pure = DensityMatrix::pure(family_state(family, theta));

  std::vector<NoiseRecord> records(ps.size());
  parallel_for(static_cast<int>(ps.size()), threads, [&](int i) {
    const double p = ps[static_cast<size_t>(i)];
    const DensityMatrix noisy = logical_depolarize(pure, p);
    NoiseRecord rec;
    rec.p = p;
    rec.c = distance_c(noisy, set2);
    rec.gamma = stabilizer_extent(noisy, set2).gamma;
    rec.kappa = tightness_ratio(rec.c, rec.gamma);
    records[static_cast<size_t>(i)] = rec;
  });
  return records;
}

MonotonicityStats monotonicity_over(const std::vector<CVector>& states,
                                    uint64_t seed, int threads) {
  const StabilizerSet& set2 = cached_stabilizer_set(2);
  const CMatrix gate = kron(hadamard(), identity2());

  std::vector<double> before(states.size()), after(states.size());
  parallel_for(static_cast<int>(states.size()), threads, [&](int i) {
    const CVector& psi = states[static_cast<size_t>(i)];
    before[static_cast<size_t>(i)] = distance_c(DensityMatrix::pure(psi), set2);
    const CVector rotated = gate * psi;
    after[static_cast<size_t>(i)] =
        distance_c(DensityMatrix::pure(rotated), set2);
  });

  MonotonicityStats stats;
  stats.n_samples = static_cast<int>(states.size());
  stats.seed = seed;
  // Exact ties are common here: when the optimal free mixture uses only
  // vertices fixed by the phase-space swap, the distance is unchanged to
  // machine precision.  A tie between two genuinely magical values counts as
  // half an increase (mid-rank convention); a tie between two free values
  // counts as none.
  double increased = 0.0;
  for (size_t i = 0; i < states.size(); ++i) {
    const double delta = after[i] - before[i];
    if (delta > 1e-8) {
      increased += 1.0;
      stats.max_increase = std::max(stats.max_increase, delta);
    } else if (delta >= -1e-8 && std::max(before[i], after[i]) > 1e-8) {
      increased += 0.5;
    }
  }
  stats.fraction_increased =
      states.empty() ? 0.0 : increased / static_cast<double>(states.size());
  return stats;
}

MonotonicityStats monotonicity_sample(int n_samples, uint64_t seed,
                                      int threads) {
  if (n_samples < 100) {
    throw std::invalid_argument("monotonicity sweep needs at least 100 samples");
  }
  std::vector<CVector> states(static_cast<size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    states[static_cast<size_t>(i)] =
        haar_random_pure(2, mix_seed(seed, static_cast<uint64_t>(i))).amplitudes;
  }
  return monotonicity_over(states, seed, threads);
}

int hadamard_permuted_outside_count(int threads) {
  const StabilizerSet& set2 = cached_stabilizer_set(2);
  std::vector<int> outside(static_cast<size_t>(set2.size()), 0);
  parallel_for(set2.size(), threads, [&](int i) {
    const StabilizerState& st = set2.states[static_cast<size_t>(i)];
    RVector w = st.wigner;
    if (w.size() == 0) {
      w = wigner_coefficients(st.vector * st.vector.adjoint());
    }
    RVector permuted(w.size());
    for (int idx = 0; idx < 16; ++idx) {
      const int q1 = (idx >> 3) & 1;
      const int p1 = (idx >> 2) & 1;
      const int rest = idx & 3;
      const int swapped = (p1 << 3) | (q1 << 2) | rest;
      permuted(swapped) = w(idx);
    }
    outside[static_cast<size_t>(i)] =
        polytope_membership(permuted, set2) ? 0 : 1;
  });
  int count = 0;
  for (int flag : outside) count += flag;
  return count;
}

double self_tensor_min_margin(const std::vector<BlochAngles>& grid,
                              int threads) {
  const StabilizerSet& set1 = cached_stabilizer_set(1);
  const StabilizerSet& set2 = cached_stabilizer_set(2);
  std::vector<double> margins(grid.size());
  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    const BlochAngles angles = grid[static_cast<size_t>(i)];
    const PureState psi = bloch_state(angles.polar, angles.azimuth);
    const CMatrix m = psi.amplitudes * psi.amplitudes.adjoint();
    const double single = distance_c(DensityMatrix::pure(psi), set1);
    const double joint = distance_c(product_state(m, m), set2);
    margins[static_cast<size_t>(i)] = joint - 2.0 * single;
  });
  double worst = margins.empty() ? 0.0 : margins.front();
  for (double m : margins) worst = std::min(worst, m);
  return worst;
}

std::vector<BlochAngles> self_tensor_default_grid() {
  return bloch_grid({0.0, 0.3, 0.7, 1.05, kHalfPi, 1.6, 2.0, 2.6},
                    {0.25, kPi / 4.0, 1.05});
}

double submultiplicativity_min_slack(int pairs, uint64_t seed, int threads) {
  if (pairs < 50) {
    throw std::invalid_argument("submultiplicativity check needs >= 50 pairs");
  }
  const StabilizerSet& set1 = cached_stabilizer_set(1);
  const StabilizerSet& set2 = cached_stabilizer_set(2);
  std::vector<double> slacks(static_cast<size_t>(pairs));
  parallel_for(pairs, threads, [&](int i) {
    const uint64_t stream = 2 * static_cast<uint64_t>(i);
    const PureState a = haar_random_pure(1, mix_seed(seed, stream));
    const PureState b = haar_random_pure(1, mix_seed(seed, stream + 1));
    const CMatrix am = a.amplitudes * a.amplitudes.adjoint();
    const CMatrix bm = b.amplitudes * b.amplitudes.adjoint();
    const double g1 = stabilizer_extent(DensityMatrix::pure(a), set1).gamma;
    const double g2 = stabilizer_extent(DensityMatrix::pure(b), set1).gamma;
    const double g12 = stabilizer_extent(product_state(am, bm), set2).gamma;
    slacks[static_cast<size_t>(i)] = g1 * g2 - g12;
  });
  double worst = slacks.front();
  for (double s : slacks) worst = std::min(worst, s);
  return worst;
}

double simulation_bound_min_slack(int samples, uint64_t seed, int threads) {
  if (samples <= 0) throw std::invalid_argument("sample count must be positive");
  const StabilizerSet& set2 = cached_stabilizer_set(2);
  const double m2 = max_stab_l1(set2);
  std::vector<double> slacks(static_cast<size_t>(samples));
  parallel_for(samples, threads, [&](int i) {
    const PureState psi = haar_random_pure(2, mix_seed(seed, static_cast<uint64_t>(i)));
    slacks[static_cast<size_t>(i)] =
        simulation_bound_slack(DensityMatrix::pure(psi), set2, m2);
  });
  double worst = slacks.front();
  for (double s : slacks) worst = std::min(worst, s);
  return worst;
}

namespace {

CVector chart_state(const std::array<double, 6>& params) {
  const double a = params[0], b = params[1], c = params[2];
  CVector amplitudes(4);
  amplitudes(0) = Complex(std::cos(a), 0.0);
  amplitudes(1) = std::sin(a) * std::cos(b) *
                  std::exp(Complex(0.0, params[3]));
  amplitudes(2) = std::sin(a) * std::sin(b) * std::cos(c) *
                  std::exp(Complex(0.0, params[4]));
  amplitudes(3) = std::sin(a) * std::sin(b) * std::sin(c) *
                  std::exp(Complex(0.0, params[5]));
  return amplitudes;
}

struct RestartOutcome {
  double value = -1.0;
  std::array<double, 6> params{};
};

RestartOutcome run_restart(uint64_t restart_seed, const StabilizerSet& set2) {
  const std::array<double, 6> lo = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  const std::array<double, 6> hi = {kHalfPi, kHalfPi,      kHalfPi,
                                    2.0 * kPi, 2.0 * kPi, 2.0 * kPi};
  auto evaluate = [&](const std::array<double, 6>& params) {
    return wigner_distance(DensityMatrix::pure(chart_state(params)), set2).c;
  };

  std::mt19937_64 rng(restart_seed);
  auto uniform01 = [&rng] {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  std::array<double, 6> params;
  for (int k = 0; k < 6; ++k) params[static_cast<size_t>(k)] = lo[static_cast<size_t>(k)] + (hi[static_cast<size_t>(k)] - lo[static_cast<size_t>(k)]) * uniform01();

  double best = evaluate(params);
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int pass = 0; pass < 3; ++pass) {
    for (int k = 0; k < 6; ++k) {
      auto along = [&](double x) {
        std::array<double, 6> probe = params;
        probe[static_cast<size_t>(k)] = x;
        return evaluate(probe);
      };
      // Coarse scan picks the best cell, golden-section refines inside it.
      const double step = (hi[static_cast<size_t>(k)] - lo[static_cast<size_t>(k)]) / 8.0;
      double best_x = params[static_cast<size_t>(k)];
      double best_f = best;
      for (int j = 0; j <= 8; ++j) {
        const double x = lo[static_cast<size_t>(k)] + step * j;
        const double f = along(x);
        if (f > best_f) {
          best_f = f;
          best_x = x;
        }
      }
      double a = std::max(lo[static_cast<size_t>(k)], best_x - step);
      double b = std::min(hi[static_cast<size_t>(k)], best_x + step);
      double x1 = b - golden * (b - a);
      double x2 = a + golden * (b - a);
      double f1 = along(x1);
      double f2 = along(x2);
      if (f1 > best_f) { best_f = f1; best_x = x1; }
      if (f2 > best_f) { best_f = f2; best_x = x2; }
      for (int it = 0; it < 22; ++it) {
        if (f1 < f2) {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + golden * (b - a);
          f2 = along(x2);
          if (f2 > best_f) { best_f = f2; best_x = x2; }
        } else {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - golden * (b - a);
          f1 = along(x1);
          if (f1 > best_f) { best_f = f1; best_x = x1; }
        }
      }
      params[static_cast<size_t>(k)] = best_x;
      best = best_f;
    }
  }
  return {best, params};
}

}  // namespace

MaxCResult max_c_search(int restarts, uint64_t seed, int threads) {
  if (restarts <= 0) throw std::invalid_argument("restart count must be positive");
  const StabilizerSet& set2 = cached_stabilizer_set(2);

  std::vector<RestartOutcome> outcomes(static_cast<size_t>(restarts));
  parallel_for(restarts, threads, [&](int r) {
    outcomes[static_cast<size_t>(r)] =
        run_restart(mix_seed(seed, static_cast<uint64_t>(r)), set2);
  });

  const RestartOutcome* winner = &outcomes.front();
  for (const RestartOutcome& outcome : outcomes) {
    if (outcome.value > winner->value) winner = &outcome;
  }

  MaxCResult result;
  result.best_c = winner->value;
  result.best_state = chart_state(winner->params);
  result.restarts = restarts;
  const WignerVector w = wigner(DensityMatrix::pure(result.best_state));
  result.negative_entries = negative_count(w, 1e-8);
  return result;
}

NegativeScanResult six_negative_scan(int n_samples, uint64_t seed,
                                     int threads) {
  if (n_samples <= 0) throw std::invalid_argument("sample count must be positive");
  std::vector<int> counts(static_cast<size_t>(n_samples));
  std::vector<CVector> states(static_cast<size_t>(n_samples));
  parallel_for(n_samples, threads, [&](int i) {
    const PureState psi = haar_random_pure(2, mix_seed(seed, static_cast<uint64_t>(i)));
    WignerVector w;
    w.nqubits = 2;
    w.values = wigner_coefficients(psi.amplitudes * psi.amplitudes.adjoint());
    counts[static_cast<size_t>(i)] = negative_count(w);
    states[static_cast<size_t>(i)] = psi.amplitudes;
  });

  NegativeScanResult result;
  for (int i = 0; i < n_samples; ++i) {
    result.max_count = std::max(result.max_count, counts[static_cast<size_t>(i)]);
    if (counts[static_cast<size_t>(i)] > 6) {
      ++result.over_limit;
      if (result.offenders.size() < 4) {
        result.offenders.push_back(states[static_cast<size_t>(i)]);
      }
    }
  }
  return result;
}

void write_csv(const std::vector<DichotomyRecord>& records, std::ostream& out) {
  out << "theta_b,phi_b,z_expect,c_rho,c_sigma,c_joint,deficit,superadditive\n";
  for (const DichotomyRecord& rec : records) {
    out << csv_number(rec.sigma.polar) << ',' << csv_number(rec.sigma.azimuth)
        << ',' << csv_number(rec.z_expect) << ',' << csv_number(rec.c_rho)
        << ',' << csv_number(rec.c_sigma) << ',' << csv_number(rec.c_joint)
        << ',' << csv_number(rec.deficit) << ','
        << (rec.superadditive ? 1 : 0) << '\n';
  }
}

void write_csv(const std::vector<RegressionPoint>& points, std::ostream& out) {
  out << "sigma_index,z_sigma,c_rho,deficit,ratio\n";
  for (const RegressionPoint& pt : points) {
    out << pt.sigma_index << ',' << csv_number(pt.z_sigma) << ','
        << csv_number(pt.c_rho) << ',' << csv_number(pt.deficit) << ',';
    if (std::abs(pt.c_rho) > 1e-15) {
      out << csv_number(pt.deficit / pt.c_rho);
    }
    out << '\n';
  }
}

void write_csv(const std::vector<KappaRecord>& records, std::ostream& out) {
  out << "family,theta,c_lp,c_closed,gamma_lp,gamma_closed,kappa,"
         "lp_witness_gap,cf_witness_trace,cf_free_max,negative_entries\n";
  for (const KappaRecord& rec : records) {
    out << family_name(rec.family) << ',' << csv_number(rec.theta) << ','
        << csv_number(rec.c_lp) << ',' << csv_number(rec.c_closed) << ','
        << csv_number(rec.gamma_lp) << ',' << csv_number(rec.gamma_closed)
        << ',';
    if (rec.kappa) out << csv_number(*rec.kappa);
    out << ',' << csv_number(rec.lp_witness_gap) << ','
        << csv_number(rec.cf_witness_trace) << ','
        << csv_number(rec.cf_free_max) << ',' << rec.negative_entries << '\n';
  }
}

void write_csv(const std::vector<NoiseRecord>& records, std::ostream& out) {
  out << "p,c,gamma,kappa\n";
  for (const NoiseRecord& rec : records) {
    out << csv_number(rec.p) << ',' << csv_number(rec.c) << ','
        << csv_number(rec.gamma) << ',';
    if (rec.kappa) out << csv_number(*rec.kappa);
    out << '\n';
  }
}

}  // namespace qmagic
