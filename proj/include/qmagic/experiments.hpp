#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qmagic/families.hpp"
#include "qmagic/measures.hpp"
#include "qmagic/phasespace.hpp"
#include "qmagic/qcore.hpp"

// Numerical studies over the magic measures: tensor-product additivity
// scans and the deficit regression, family sweeps in theta and in
// depolarizing noise, Clifford (non-)monotonicity sampling, bound checks
// and a search for the largest two-qubit distance.

namespace qmagic {

// A tensor deficit above this threshold counts as a superadditivity
// failure; below it the pair is flagged superadditive.
inline constexpr double kDeficitTol = 1e-8;

// Runs fn(i) for every i in [0, count) on up to `threads` workers.  Each
// task writes results only at its own index, so parallel and serial runs
// produce identical output.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

// Formats a value with 12 significant digits for CSV output.
std::string csv_number(double value);

// Closed-form single-qubit distance max(0, (|x|+|y|+|z| - 1) / 2), used as
// a cross-check oracle next to the LP path, never as the computation.
double single_qubit_c_oracle(double bx, double by, double bz);

struct BlochAngles {
  double polar = 0.0;
  double azimuth = 0.0;
};

std::vector<BlochAngles> bloch_grid(const std::vector<double>& polars,
                                    const std::vector<double>& azimuths);

struct DichotomyRecord {
  BlochAngles sigma;
  double z_expect = 0.0;
  double c_rho = 0.0;
  double c_sigma = 0.0;
  double c_joint = 0.0;
  double deficit = 0.0;  // c_rho + c_sigma - c_joint
  bool superadditive = false;
};

// Eleven evenly spaced polar angles in [0.1, 3.04] merged with the five
// reference polars {0.35, 1.20, pi/2, 1.94, 2.80}, sorted: 16 points.
std::vector<double> dichotomy_polar_grid();
// {0, 0.7, 1.05, 2.1}; the 1.05 column carries the reference rows.
std::vector<double> dichotomy_azimuth_grid();

// Joint-distance scan of rho (single qubit) against pure sigma points.
std::vector<DichotomyRecord> dichotomy_scan(
    const DensityMatrix& rho, const std::vector<BlochAngles>& sigmas,
    int threads = 1);

// Azimuths (k + 1/2) * 2 pi / points.
std::vector<double> equatorial_phi_grid(int points);

// Max over both equatorial grids of
// |C(rho x sigma) - (C(rho) + C(sigma) + C(rho) C(sigma))|.
double equatorial_equality_residual(const std::vector<double>& phis_rho,
                                    const std::vector<double>& phis_sigma,
                                    int threads = 1);

struct RegressionPoint {
  int sigma_index = 0;
  double z_sigma = 0.0;
  double c_rho = 0.0;
  double deficit = 0.0;
};

struct RegressionResult {
  double slope = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
  // False when every point shares one abscissa (single fixed rho): the slope
  // is then just mean(deficit)/c and not comparable across scans.
  bool comparable = true;
};

// Equatorial rho azimuths (k + 1/2) * (pi/2) / 24, sweeping C(rho) across
// its single-qubit range.
std::vector<double> regression_rho_azimuths();
// Northern sigma polars {0.35, 0.70, 1.05, 1.20, 1.40}, azimuth 1.05.
std::vector<double> regression_sigma_polars();

std::vector<RegressionPoint> regression_scan(
    const std::vector<double>& rho_azimuths,
    const std::vector<double>& sigma_polars, double sigma_azimuth,
    int threads = 1);

// Pooled through-origin fit of deficit against c_rho over the northern
// (z_sigma > 0) points; rejects fewer than 8 such points.
RegressionResult deficit_regression(const std::vector<RegressionPoint>& points);

struct KappaRecord {
  Family family = Family::kRy;
  double theta = 0.0;
  double c_lp = 0.0;
  double c_closed = 0.0;
  double gamma_lp = 0.0;
  double gamma_closed = 0.0;
  std::optional<double> kappa;
  double lp_witness_gap = 0.0;   // gap of the LP dual witness
  double cf_witness_trace = 0.0; // Tr(H rho) for the closed-form witness
  double cf_free_max = 0.0;      // max Tr(H sigma) over enumerated states
  int negative_entries = 0;
};

// Midpoints of the family's theta range, nudged 1e-3 away from multiples
// of pi/2 while staying inside the range.
std::vector<double> family_theta_grid(Family family, int points);

// Per-theta LP and closed-form values; verifies the ratio is the family
// constant within 1e-6 wherever it is defined.
std::vector<KappaRecord> kappa_sweep(Family family,
                                     const std::vector<double>& thetas,
                                     int threads = 1);

struct NoiseRecord {
  double p = 0.0;
  double c = 0.0;
  double gamma = 0.0;
  std::optional<double> kappa;
};

// Default depolarizing grid straddling the critical strength of theta.
std::vector<double> noise_p_grid(double theta);

// Depolarized family sweep; Ry and Rx only.
std::vector<NoiseRecord> noise_sweep(Family family, double theta,
                                     const std::vector<double>& ps,
                                     int threads = 1);

struct MonotonicityStats {
  int n_samples = 0;
  double fraction_increased = 0.0;
  double max_increase = 0.0;
  uint64_t seed = 0;
};

// Distance before/after Hadamard on the first qubit; an increase counts
// when the difference exceeds 1e-8.
MonotonicityStats monotonicity_over(const std::vector<CVector>& states,
                                    uint64_t seed, int threads = 1);
MonotonicityStats monotonicity_sample(int n_samples, uint64_t seed,
                                      int threads = 1);

// Applies the Hadamard phase-space action (swap q and p on qubit 1) to
// every enumerated two-qubit stabilizer Wigner vector and counts how many
// land outside the polytope.
int hadamard_permuted_outside_count(int threads = 1);

// Min over the grid of C(rho x rho) - 2 C(rho).
double self_tensor_min_margin(const std::vector<BlochAngles>& grid,
                              int threads = 1);
std::vector<BlochAngles> self_tensor_default_grid();

// Min over sampled single-qubit pairs of
// Gamma(rho) Gamma(sigma) - Gamma(rho x sigma); at least 50 pairs.
double submultiplicativity_min_slack(int pairs, uint64_t seed,
                                     int threads = 1);

// Min over sampled two-qubit states of Gamma - 1 - C / max_l1.
double simulation_bound_min_slack(int samples, uint64_t seed,
                                  int threads = 1);

struct MaxCResult {
  double best_c = 0.0;
  CVector best_state;
  int negative_entries = 0;
  int restarts = 0;
};

// Multi-start coordinate golden-section ascent over a six-parameter pure
// two-qubit chart (three nested angles, three relative phases).
MaxCResult max_c_search(int restarts, uint64_t seed, int threads = 1);

struct NegativeScanResult {
  int max_count = 0;
  int over_limit = 0;  // samples with more than six negative entries
  std::vector<CVector> offenders;  // first few such states, for inspection
};

// Negative Wigner entry counts over Haar two-qubit samples.
NegativeScanResult six_negative_scan(int n_samples, uint64_t seed,
                                     int threads = 1);

// CSV writers with stable headers and 12 significant digits.
void write_csv(const std::vector<DichotomyRecord>& records, std::ostream& out);
void write_csv(const std::vector<RegressionPoint>& points, std::ostream& out);
void write_csv(const std::vector<KappaRecord>& records, std::ostream& out);
void write_csv(const std::vector<NoiseRecord>& records, std::ostream& out);

}  // namespace qmagic
