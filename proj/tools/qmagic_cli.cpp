#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmagic/acceptance.hpp"
#include "qmagic/experiments.hpp"
#include "qmagic/families.hpp"
#include "qmagic/measures.hpp"
#include "qmagic/phasespace.hpp"
#include "qmagic/qcore.hpp"
#include "qmagic/stabgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qmagic;

namespace {

// Problems with the invocation itself: unknown presets, malformed states,
// unreadable config, unwritable output.  Mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  uint64_t seed = 424242;
  int threads = 0;
  std::string output = "qmagic-out";
  std::string format = "csv";
  std::string cache_dir = "qmagic-cache";

  bool json_format() const { return format == "json"; }
};

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec);
  return buf;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path path = dir / name;
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write " + path.string());
  return file;
}

void write_summary(const Settings& settings, const std::string& command,
                   const json& results) {
  json j;
  j["command"] = command;
  j["timestamp"] = iso_timestamp();
  j["seed"] = settings.seed;
  j["threads"] = settings.threads;
  j["format"] = settings.format;
  j["tolerances"] = {{"lp_gap", kLpTol},
                     {"closed_form", 1e-7},
                     {"assert", 1e-8}};
  j["results"] = results;
  std::string base = command;
  for (char& c : base) {
    if (c == '-') c = '_';
  }
  auto file = open_output(settings.output, base + "_summary.json");
  file << j.dump(2) << "\n";
}

DensityMatrix parse_state(const std::string& spec) {
  if (spec == "t-state") return t_state();
  if (spec == "bell") {
    return DensityMatrix::pure(family_state(Family::kBellRz, 0.0));
  }
  for (const auto& [prefix, family] :
       {std::pair<std::string, Family>{"ry:", Family::kRy},
        {"rx:", Family::kRx},
        {"brz:", Family::kBellRz}}) {
    if (spec.rfind(prefix, 0) == 0) {
      double theta = 0.0;
      try {
        theta = std::stod(spec.substr(prefix.size()));
      } catch (const std::exception&) {
        throw UsageError("bad angle in state preset '" + spec + "'");
      }
      try {
        return DensityMatrix::pure(family_state(family, theta));
      } catch (const std::exception& e) {
        throw UsageError(std::string("bad state preset: ") + e.what());
      }
    }
  }

  std::string text = spec;
  if (spec.rfind('[', 0) != 0) {
    std::ifstream file(spec);
    if (!file) {
      throw UsageError("state '" + spec +
                       "' is neither a preset, inline JSON nor a readable file");
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad state JSON: ") + e.what());
  }
  if (!parsed.is_array() || parsed.empty()) {
    throw UsageError("state JSON must be a non-empty array of amplitudes");
  }
  CVector amplitudes(static_cast<Eigen::Index>(parsed.size()));
  for (size_t i = 0; i < parsed.size(); ++i) {
    const json& entry = parsed[i];
    if (entry.is_number()) {
      amplitudes(static_cast<Eigen::Index>(i)) = Complex(entry.get<double>(), 0.0);
    } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
               entry[1].is_number()) {
      amplitudes(static_cast<Eigen::Index>(i)) =
          Complex(entry[0].get<double>(), entry[1].get<double>());
    } else {
      throw UsageError("state JSON entries must be numbers or [re, im] pairs");
    }
  }
  try {
    return DensityMatrix::pure(PureState::from_amplitudes(amplitudes));
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad state amplitudes: ") + e.what());
  }
}

std::string state_label(const std::string& spec) {
  if (spec.rfind('[', 0) == 0) return "state";
  std::string label;
  for (char c : spec) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
      label += c;
    } else {
      label += '_';
    }
  }
  return label.empty() ? "state" : label;
}

Family parse_family(const std::string& name) {
  try {
    return family_from_string(name);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

json sparse_json(const RVector& values, double threshold = 1e-12) {
  json j = json::object();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values(i)) > threshold) {
      j[std::to_string(i)] = values(i);
    }
  }
  return j;
}

json vector_json(const RVector& values) {
  json j = json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) j.push_back(values(i));
  return j;
}

json amplitudes_json(const CVector& amplitudes) {
  json j = json::array();
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    j.push_back({amplitudes(i).real(), amplitudes(i).imag()});
  }
  return j;
}

int cmd_enumerate(const Settings& settings, int n) {
  const StabilizerSet set = load_or_enumerate(n, settings.cache_dir);
  const std::string base = "stabilizers_n" + std::to_string(n);
  fs::path written;
  if (settings.json_format()) {
    json states = json::array();
    for (const StabilizerState& st : set.states) {
      json generators = json::array();
      for (const PauliString& g : st.generators) generators.push_back(g.to_string());
      states.push_back(
          {{"generators", generators}, {"amplitudes", amplitudes_json(st.vector)}});
    }
    auto file = open_output(settings.output, base + ".json");
    file << json{{"nqubits", n}, {"states", states}}.dump(2) << "\n";
    written = fs::path(settings.output) / (base + ".json");
  } else {
    auto file = open_output(settings.output, base + ".csv");
    file << "index,generators";
    for (Eigen::Index k = 0; k < set.states.front().vector.size(); ++k) {
      file << ",re" << k << ",im" << k;
    }
    file << "\n";
    for (int i = 0; i < set.size(); ++i) {
      const StabilizerState& st = set.states[static_cast<size_t>(i)];
      file << i << ",";
      for (size_t g = 0; g < st.generators.size(); ++g) {
        if (g) file << ' ';
        file << st.generators[g].to_string();
      }
      for (Eigen::Index k = 0; k < st.vector.size(); ++k) {
        file << ',' << csv_number(st.vector(k).real()) << ','
             << csv_number(st.vector(k).imag());
      }
      file << "\n";
    }
    written = fs::path(settings.output) / (base + ".csv");
  }
  write_summary(settings, "enumerate-stabilizers",
                {{"nqubits", n},
                 {"count", set.size()},
                 {"cache_dir", settings.cache_dir}});
  std::cout << "enumerated " << set.size() << " stabilizer states (n=" << n
            << ") -> " << written.string() << "\n";
  return 0;
}

int cmd_wigner(const Settings& settings, const std::string& spec) {
  const DensityMatrix rho = parse_state(spec);
  const WignerVector w = wigner(rho);
  const std::string base = "wigner_" + state_label(spec);
  fs::path written;
  if (settings.json_format()) {
    auto file = open_output(settings.output, base + ".json");
    file << json{{"nqubits", w.nqubits},
                 {"values", vector_json(w.values)},
                 {"l1", wigner_l1(w)},
                 {"negative_count", negative_count(w)},
                 {"total_negativity", total_negativity(w)}}
                .dump(2)
         << "\n";
    written = fs::path(settings.output) / (base + ".json");
  } else {
    auto file = open_output(settings.output, base + ".csv");
    write_csv(w, file);
    written = fs::path(settings.output) / (base + ".csv");
  }
  write_summary(settings, "wigner",
                {{"state", spec},
                 {"l1", wigner_l1(w)},
                 {"negative_count", negative_count(w)}});
  std::cout << "wigner l1 = " << csv_number(wigner_l1(w)) << ", negatives = "
            << negative_count(w) << " -> " << written.string() << "\n";
  return 0;
}

int cmd_distance(const Settings& settings, const std::string& spec) {
  const DensityMatrix rho = parse_state(spec);
  const StabilizerSet& set = cached_stabilizer_set(rho.nqubits());
  const DistanceResult result = wigner_distance(rho, set);
  const std::string base = "distance_" + state_label(spec);
  fs::path written;
  if (settings.json_format()) {
    auto file = open_output(settings.output, base + ".json");
    file << json{{"c", result.c},
                 {"free_max", result.witness.free_max},
                 {"gap", result.witness.gap},
                 {"svec", vector_json(result.witness.svec)},
                 {"nearest_free", sparse_json(result.nearest_free)}}
                .dump(2)
         << "\n";
    written = fs::path(settings.output) / (base + ".json");
  } else {
    WignerVector svec;
    svec.nqubits = rho.nqubits();
    svec.values = result.witness.svec;
    auto file = open_output(settings.output, base + ".csv");
    write_csv(svec, file);
    written = fs::path(settings.output) / (base + ".csv");
  }
  write_summary(settings, "distance",
                {{"state", spec},
                 {"c", result.c},
                 {"witness_gap", result.witness.gap}});
  std::cout << "distance C = " << csv_number(result.c) << " (witness gap "
            << csv_number(result.witness.gap) << ") -> " << written.string()
            << "\n";
  return 0;
}

int cmd_extent(const Settings& settings, const std::string& spec) {
  const DensityMatrix rho = parse_state(spec);
  const StabilizerSet& set = cached_stabilizer_set(rho.nqubits());
  const ExtentResult result = stabilizer_extent(rho, set);
  const std::string base = "extent_" + state_label(spec);
  fs::path written;
  if (settings.json_format()) {
    auto file = open_output(settings.output, base + ".json");
    file << json{{"gamma", result.gamma},
                 {"coefficients", sparse_json(result.decomposition.coefficients)}}
                .dump(2)
         << "\n";
    written = fs::path(settings.output) / (base + ".json");
  } else {
    auto file = open_output(settings.output, base + ".csv");
    file << "index,coefficient\n";
    const RVector& coef = result.decomposition.coefficients;
    for (Eigen::Index i = 0; i < coef.size(); ++i) {
      if (std::abs(coef(i)) > 1e-12) {
        file << i << ',' << csv_number(coef(i)) << "\n";
      }
    }
    written = fs::path(settings.output) / (base + ".csv");
  }
  write_summary(settings, "extent",
                {{"state", spec}, {"gamma", result.gamma}});
  std::cout << "extent Gamma = " << csv_number(result.gamma) << " -> "
            << written.string() << "\n";
  return 0;
}

int cmd_kappa_sweep(const Settings& settings, const std::string& family_name_in,
                    int points) {
  const Family family = parse_family(family_name_in);
  const std::vector<double> thetas = family_theta_grid(family, points);
  const std::vector<KappaRecord> records =
      kappa_sweep(family, thetas, settings.threads);
  const std::string base = "kappa_sweep_" + family_name(family);
  fs::path written;
  if (settings.json_format()) {
    json rows = json::array();
    for (const KappaRecord& rec : records) {
      json row = {{"theta", rec.theta},
                  {"c_lp", rec.c_lp},
                  {"c_closed", rec.c_closed},
                  {"gamma_lp", rec.gamma_lp},
                  {"gamma_closed", rec.gamma_closed},
                  {"lp_witness_gap", rec.lp_witness_gap},
                  {"cf_witness_trace", rec.cf_witness_trace},
                  {"cf_free_max", rec.cf_free_max},
                  {"negative_entries", rec.negative_entries}};
      if (rec.kappa) row["kappa"] = *rec.kappa;
      rows.push_back(row);
    }
    auto file = open_output(settings.output, base + ".json");
    file << rows.dump(2) << "\n";
    written = fs::path(settings.output) / (base + ".json");
  } else {
    auto file = open_output(settings.output, base + ".csv");
    write_csv(records, file);
    written = fs::path(settings.output) / (base + ".csv");
  }
  double kmin = 0.0, kmax = 0.0;
  bool first = true;
  for (const KappaRecord& rec : records) {
    if (!rec.kappa) continue;
    kmin = first ? *rec.kappa : std::min(kmin, *rec.kappa);
    kmax = first ? *rec.kappa : std::max(kmax, *rec.kappa);
    first = false;
  }
  write_summary(settings, "kappa-sweep",
                {{"family", family_name(family)},
                 {"points", points},
                 {"kappa_min", kmin},
                 {"kappa_max", kmax}});
  std::cout << "kappa sweep (" << family_name(family) << ", " << points
            << " points): ratio in [" << csv_number(kmin) << ", "
            << csv_number(kmax) << "] -> " << written.string() << "\n";
  return 0;
}

int cmd_dichotomy(const Settings& settings, const std::string& rho_spec,
                  std::vector<double> polars, std::vector<double> phis) {
  const DensityMatrix rho = parse_state(rho_spec);
  if (rho.nqubits() != 1) {
    throw UsageError("dichotomy needs a single-qubit reference state");
  }
  if (polars.empty()) polars = dichotomy_polar_grid();
  if (phis.empty()) phis = dichotomy_azimuth_grid();
  const std::vector<DichotomyRecord> records =
      dichotomy_scan(rho, bloch_grid(polars, phis), settings.threads);
  fs::path written;
  if (settings.json_format()) {
    json rows = json::array();
    for (const DichotomyRecord& rec : records) {
      rows.push_back({{"theta_b", rec.sigma.polar},
                      {"phi_b", rec.sigma.azimuth},
                      {"z_expect", rec.z_expect},
                      {"c_rho", rec.c_rho},
                      {"c_sigma", rec.c_sigma},
                      {"c_joint", rec.c_joint},
                      {"deficit", rec.deficit},
                      {"superadditive", rec.superadditive}});
    }
    auto file = open_output(settings.output, "dichotomy.json");
    file << rows.dump(2) << "\n";
    written = fs::path(settings.output) / "dichotomy.json";
  } else {
    auto file = open_output(settings.output, "dichotomy.csv");
    write_csv(records, file);
    written = fs::path(settings.output) / "dichotomy.csv";
  }
  int superadditive = 0, quadrant_violations = 0, mirror_slice = 0;
  for (const DichotomyRecord& rec : records) {
    if (rec.superadditive) ++superadditive;
    if (rec.deficit > kDeficitTol && rec.z_expect <= 0.0) {
      // The z-sign rule is exact only for azimuths in [0, pi/2]; a Pauli-Y
      // phase-space translation mirrors every northern failure to the
      // azimuth-reflected southern point.
      if (rec.sigma.azimuth <= std::numbers::pi / 2.0 + 1e-12) {
        ++quadrant_violations;
      } else {
        ++mirror_slice;
      }
    }
  }
  write_summary(settings, "dichotomy",
                {{"rho", rho_spec},
                 {"n_records", records.size()},
                 {"superadditive", superadditive},
                 {"sign_violations_first_quadrant", quadrant_violations},
                 {"southern_failures_mirrored_azimuths", mirror_slice}});
  std::cout << "dichotomy: " << records.size() << " pairs, " << superadditive
            << " superadditive, " << quadrant_violations
            << " first-quadrant sign violations, " << mirror_slice
            << " southern failures at mirrored azimuths -> " << written.string()
            << "\n";
  return 0;
}

int cmd_regression(const Settings& settings, double sigma_azimuth) {
  const std::vector<RegressionPoint> points =
      regression_scan(regression_rho_azimuths(), regression_sigma_polars(),
                      sigma_azimuth, settings.threads);
  const RegressionResult fit = deficit_regression(points);
  fs::path written;
  if (settings.json_format()) {
    json rows = json::array();
    for (const RegressionPoint& pt : points) {
      rows.push_back({{"sigma_index", pt.sigma_index},
                      {"z_sigma", pt.z_sigma},
                      {"c_rho", pt.c_rho},
                      {"deficit", pt.deficit}});
    }
    auto file = open_output(settings.output, "regression_points.json");
    file << rows.dump(2) << "\n";
    written = fs::path(settings.output) / "regression_points.json";
  } else {
    auto file = open_output(settings.output, "regression_points.csv");
    write_csv(points, file);
    written = fs::path(settings.output) / "regression_points.csv";
  }
  write_summary(settings, "regression",
                {{"sigma_azimuth", sigma_azimuth},
                 {"slope", fit.slope},
                 {"r_squared", fit.r_squared},
                 {"n_points", fit.n_points},
                 {"comparable", fit.comparable}});
  std::cout << "regression slope " << csv_number(fit.slope) << " (R^2 "
            << csv_number(fit.r_squared) << ") over " << fit.n_points
            << " points -> " << written.string() << "\n";
  return 0;
}

int cmd_noise_sweep(const Settings& settings, const std::string& family_name_in,
                    double theta, std::vector<double> ps) {
  const Family family = parse_family(family_name_in);
  if (ps.empty()) ps = noise_p_grid(theta);
  const std::vector<NoiseRecord> records =
      noise_sweep(family, theta, ps, settings.threads);
  const std::string base = "noise_sweep_" + family_name(family);
  fs::path written;
  if (settings.json_format()) {
    json rows = json::array();
    for (const NoiseRecord& rec : records) {
      json row = {{"p", rec.p}, {"c", rec.c}, {"gamma", rec.gamma}};
      if (rec.kappa) row["kappa"] = *rec.kappa;
      rows.push_back(row);
    }
    auto file = open_output(settings.output, base + ".json");
    file << rows.dump(2) << "\n";
    written = fs::path(settings.output) / (base + ".json");
  } else {
    auto file = open_output(settings.output, base + ".csv");
    write_csv(records, file);
    written = fs::path(settings.output) / (base + ".csv");
  }
  write_summary(settings, "noise-sweep",
                {{"family", family_name(family)},
                 {"theta", theta},
                 {"critical_p", critical_noise(theta)},
                 {"n_records", records.size()}});
  std::cout << "noise sweep (" << family_name(family) << ", theta "
            << csv_number(theta) << "): " << records.size()
            << " strengths, critical p " << csv_number(critical_noise(theta))
            << " -> " << written.string() << "\n";
  return 0;
}

int cmd_monotonicity(const Settings& settings, int samples) {
  const MonotonicityStats stats =
      monotonicity_sample(samples, settings.seed, settings.threads);
  fs::path written;
  if (settings.json_format()) {
    auto file = open_output(settings.output, "monotonicity.json");
    file << json{{"n_samples", stats.n_samples},
                 {"fraction_increased", stats.fraction_increased},
                 {"max_increase", stats.max_increase},
                 {"seed", stats.seed}}
                .dump(2)
         << "\n";
    written = fs::path(settings.output) / "monotonicity.json";
  } else {
    auto file = open_output(settings.output, "monotonicity.csv");
    file << "n_samples,fraction_increased,max_increase,seed\n";
    file << stats.n_samples << ',' << csv_number(stats.fraction_increased)
         << ',' << csv_number(stats.max_increase) << ',' << stats.seed << "\n";
    written = fs::path(settings.output) / "monotonicity.csv";
  }
  write_summary(settings, "monotonicity",
                {{"n_samples", stats.n_samples},
                 {"fraction_increased", stats.fraction_increased},
                 {"max_increase", stats.max_increase}});
  std::cout << "monotonicity: fraction " << csv_number(stats.fraction_increased)
            << ", max increase " << csv_number(stats.max_increase) << " over "
            << stats.n_samples << " samples -> " << written.string() << "\n";
  return 0;
}

int cmd_tensor_suite(const Settings& settings, int pairs, int samples) {
  const double residual = equatorial_equality_residual(
      equatorial_phi_grid(12), equatorial_phi_grid(12), settings.threads);
  const double margin =
      self_tensor_min_margin(self_tensor_default_grid(), settings.threads);
  const double sub_slack = submultiplicativity_min_slack(
      pairs, mix_seed(settings.seed, 21), settings.threads);
  const double sim_slack = simulation_bound_min_slack(
      samples, mix_seed(settings.seed, 22), settings.threads);

  const bool residual_ok = residual <= 1e-8;
  const bool margin_ok = margin >= -1e-8;  // reported, not gating
  const bool sub_ok = sub_slack >= -1e-7;
  const bool sim_ok = sim_slack >= -1e-8;

  fs::path written;
  if (settings.json_format()) {
    auto file = open_output(settings.output, "tensor_suite.json");
    file << json{{"equatorial_residual", {{"value", residual}, {"pass", residual_ok}}},
                 {"self_tensor_margin", {{"value", margin}, {"pass", margin_ok}}},
                 {"extent_product_slack", {{"value", sub_slack}, {"pass", sub_ok}}},
                 {"simulation_bound_slack", {{"value", sim_slack}, {"pass", sim_ok}}}}
                .dump(2)
         << "\n";
    written = fs::path(settings.output) / "tensor_suite.json";
  } else {
    auto file = open_output(settings.output, "tensor_suite.csv");
    file << "check,value,threshold,pass\n";
    file << "equatorial_residual," << csv_number(residual) << ",1e-08,"
         << (residual_ok ? 1 : 0) << "\n";
    file << "self_tensor_margin," << csv_number(margin) << ",-1e-08,"
         << (margin_ok ? 1 : 0) << "\n";
    file << "extent_product_slack," << csv_number(sub_slack) << ",-1e-07,"
         << (sub_ok ? 1 : 0) << "\n";
    file << "simulation_bound_slack," << csv_number(sim_slack) << ",-1e-08,"
         << (sim_ok ? 1 : 0) << "\n";
    written = fs::path(settings.output) / "tensor_suite.csv";
  }
  const bool pass = residual_ok && sub_ok && sim_ok;
  write_summary(settings, "tensor-suite",
                {{"equatorial_residual", residual},
                 {"self_tensor_margin", margin},
                 {"extent_product_slack", sub_slack},
                 {"simulation_bound_slack", sim_slack},
                 {"pass", pass}});
  std::cout << "tensor suite: residual " << csv_number(residual)
            << ", self-tensor margin " << csv_number(margin)
            << ", extent slack " << csv_number(sub_slack)
            << ", bound slack " << csv_number(sim_slack) << " -> "
            << written.string() << "\n";
  return pass ? 0 : 1;
}

int cmd_max_c(const Settings& settings, int restarts) {
  const MaxCResult result =
      max_c_search(restarts, mix_seed(settings.seed, 23), settings.threads);
  fs::path written;
  if (settings.json_format()) {
    auto file = open_output(settings.output, "max_c.json");
    file << json{{"best_c", result.best_c},
                 {"negative_entries", result.negative_entries},
                 {"restarts", result.restarts},
                 {"state", amplitudes_json(result.best_state)}}
                .dump(2)
         << "\n";
    written = fs::path(settings.output) / "max_c.json";
  } else {
    auto file = open_output(settings.output, "max_c.csv");
    file << "best_c,negative_entries,restarts";
    for (Eigen::Index k = 0; k < result.best_state.size(); ++k) {
      file << ",re" << k << ",im" << k;
    }
    file << "\n";
    file << csv_number(result.best_c) << ',' << result.negative_entries << ','
         << result.restarts;
    for (Eigen::Index k = 0; k < result.best_state.size(); ++k) {
      file << ',' << csv_number(result.best_state(k).real()) << ','
           << csv_number(result.best_state(k).imag());
    }
    file << "\n";
    written = fs::path(settings.output) / "max_c.csv";
  }
  write_summary(settings, "max-c",
                {{"best_c", result.best_c},
                 {"negative_entries", result.negative_entries},
                 {"restarts", result.restarts}});
  std::cout << "max-c: best " << csv_number(result.best_c) << " with "
            << result.negative_entries << " negative entries ("
            << result.restarts << " restarts) -> " << written.string() << "\n";
  return 0;
}

int cmd_verify(const Settings& settings, int max_n) {
  AcceptanceOptions options;
  options.seed = settings.seed;
  options.threads = settings.threads;
  options.max_n = max_n;
  const std::vector<CriterionResult> results = run_acceptance(options);
  print_results(results, std::cout);
  json rows = json::array();
  for (const CriterionResult& r : results) {
    rows.push_back({{"id", r.id},
                    {"name", r.name},
                    {"passed", r.passed},
                    {"detail", r.detail}});
  }
  write_summary(settings, "verify",
                {{"max_n", max_n},
                 {"criteria", rows},
                 {"pass", all_passed(results)}});
  return all_passed(results) ? 0 : 1;
}

template <typename T>
T pick(const CLI::Option* option, const T& flag_value, const json& section,
       const std::string& key, const T& fallback) {
  if (option != nullptr && option->count() > 0) return flag_value;
  if (section.is_object() && section.contains(key)) {
    try {
      return section.at(key).get<T>();
    } catch (const std::exception& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  }
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabilizer-polytope magic measures for one to three qubits"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  uint64_t seed = 424242;
  int threads = 0;
  std::string output = "qmagic-out";
  std::string format = "csv";
  std::string cache_dir = "qmagic-cache";
  auto* opt_config =
      app.add_option("--config", config_path, "JSON config file");
  auto* opt_seed = app.add_option("--seed", seed, "Base random seed");
  auto* opt_threads =
      app.add_option("--threads", threads, "Worker cap (0 = hardware)");
  auto* opt_output = app.add_option("--output", output, "Output directory");
  auto* opt_format = app.add_option("--format", format, "Output format")
                         ->check(CLI::IsMember({"csv", "json"}));
  auto* opt_cache =
      app.add_option("--cache-dir", cache_dir, "Stabilizer cache directory");

  auto* sc_enum = app.add_subcommand("enumerate-stabilizers",
                                     "Enumerate the pure stabilizer states");
  int enum_n = 2;
  auto* opt_enum_n = sc_enum->add_option("--n", enum_n, "Qubit count")
                         ->check(CLI::Range(1, 3));

  auto* sc_wigner =
      app.add_subcommand("wigner", "Wigner vector of a state");
  std::string wigner_state;
  auto* opt_wigner_state =
      sc_wigner->add_option("--state", wigner_state, "Preset or JSON state");

  auto* sc_distance =
      app.add_subcommand("distance", "Distance to the stabilizer polytope");
  std::string distance_state;
  auto* opt_distance_state =
      sc_distance->add_option("--state", distance_state, "Preset or JSON state");

  auto* sc_extent =
      app.add_subcommand("extent", "Minimal signed stabilizer decomposition");
  std::string extent_state;
  auto* opt_extent_state =
      sc_extent->add_option("--state", extent_state, "Preset or JSON state");

  auto* sc_kappa = app.add_subcommand("kappa-sweep",
                                      "Family sweep of distance, extent and ratio");
  std::string kappa_family = "ry";
  int kappa_points = 25;
  auto* opt_kappa_family =
      sc_kappa->add_option("--family", kappa_family, "ry, rx or brz");
  auto* opt_kappa_points =
      sc_kappa->add_option("--points", kappa_points, "Grid size")
          ->check(CLI::PositiveNumber);

  auto* sc_dicho =
      app.add_subcommand("dichotomy", "Tensor additivity scan over the sphere");
  std::string dicho_rho = "t-state";
  std::vector<double> dicho_polars, dicho_phis;
  auto* opt_dicho_rho =
      sc_dicho->add_option("--rho", dicho_rho, "Single-qubit reference state");
  auto* opt_dicho_polars =
      sc_dicho->add_option("--polar", dicho_polars, "Polar angles");
  auto* opt_dicho_phis =
      sc_dicho->add_option("--phi", dicho_phis, "Azimuth angles");

  auto* sc_regr =
      app.add_subcommand("regression", "Deficit-versus-distance fit");
  double regr_azimuth = 1.05;
  auto* opt_regr_azimuth =
      sc_regr->add_option("--sigma-azimuth", regr_azimuth, "Sigma azimuth");

  auto* sc_noise =
      app.add_subcommand("noise-sweep", "Depolarized family sweep");
  std::string noise_family = "rx";
  double noise_theta = std::numbers::pi / 4.0;
  std::vector<double> noise_ps;
  auto* opt_noise_family =
      sc_noise->add_option("--family", noise_family, "ry or rx");
  auto* opt_noise_theta =
      sc_noise->add_option("--theta", noise_theta, "Family angle");
  auto* opt_noise_ps =
      sc_noise->add_option("--p", noise_ps, "Depolarizing strengths");

  auto* sc_mono = app.add_subcommand(
      "monotonicity", "Distance change under Hadamard on Haar samples");
  int mono_samples = 2000;
  auto* opt_mono_samples =
      sc_mono->add_option("--samples", mono_samples, "Sample count");

  auto* sc_tensor = app.add_subcommand(
      "tensor-suite", "Product-rule, self-tensor and bound checks");
  int tensor_pairs = 200;
  int tensor_samples = 500;
  auto* opt_tensor_pairs =
      sc_tensor->add_option("--pairs", tensor_pairs, "Random pairs");
  auto* opt_tensor_samples =
      sc_tensor->add_option("--samples", tensor_samples, "Random states");

  auto* sc_maxc =
      app.add_subcommand("max-c", "Search for the largest two-qubit distance");
  int maxc_restarts = 50;
  auto* opt_maxc_restarts =
      sc_maxc->add_option("--restarts", maxc_restarts, "Search restarts");

  auto* sc_verify =
      app.add_subcommand("verify", "Run the full acceptance property suite");
  int verify_n = 3;
  auto* opt_verify_n = sc_verify->add_option("--n", verify_n, "Largest qubit count")
                           ->check(CLI::Range(1, 3));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    json cfg = json::object();
    if (opt_config->count() > 0) {
      std::ifstream file(config_path);
      if (!file) throw UsageError("cannot read config " + config_path);
      try {
        cfg = json::parse(file);
      } catch (const std::exception& e) {
        throw UsageError(std::string("bad config JSON: ") + e.what());
      }
      if (!cfg.is_object()) throw UsageError("config must be a JSON object");
    }

    Settings settings;
    settings.seed = pick<uint64_t>(opt_seed, seed, cfg, "seed", 424242);
    settings.threads = pick<int>(opt_threads, threads, cfg, "threads", 0);
    settings.output =
        pick<std::string>(opt_output, output, cfg, "output", "qmagic-out");
    settings.format =
        pick<std::string>(opt_format, format, cfg, "format", "csv");
    if (settings.format != "csv" && settings.format != "json") {
      throw UsageError("format must be csv or json");
    }
    if (opt_cache->count() > 0) {
      settings.cache_dir = cache_dir;
    } else if (const char* env = std::getenv("QMAGIC_CACHE_DIR")) {
      settings.cache_dir = env;
    } else {
      settings.cache_dir = cfg.value("cache_dir", std::string("qmagic-cache"));
    }
    if (settings.threads <= 0) {
      settings.threads = static_cast<int>(
          std::max(1u, std::thread::hardware_concurrency()));
    }

    auto section = [&cfg](const std::string& name) {
      return cfg.is_object() ? cfg.value(name, json::object()) : json::object();
    };

    if (app.got_subcommand(sc_enum)) {
      const json sec = section("enumerate-stabilizers");
      return cmd_enumerate(settings, pick<int>(opt_enum_n, enum_n, sec, "n", 2));
    }
    if (app.got_subcommand(sc_wigner)) {
      const json sec = section("wigner");
      const std::string spec =
          pick<std::string>(opt_wigner_state, wigner_state, sec, "state", "");
      if (spec.empty()) throw UsageError("wigner needs --state");
      return cmd_wigner(settings, spec);
    }
    if (app.got_subcommand(sc_distance)) {
      const json sec = section("distance");
      const std::string spec = pick<std::string>(opt_distance_state,
                                                 distance_state, sec, "state", "");
      if (spec.empty()) throw UsageError("distance needs --state");
      return cmd_distance(settings, spec);
    }
    if (app.got_subcommand(sc_extent)) {
      const json sec = section("extent");
      const std::string spec =
          pick<std::string>(opt_extent_state, extent_state, sec, "state", "");
      if (spec.empty()) throw UsageError("extent needs --state");
      return cmd_extent(settings, spec);
    }
    if (app.got_subcommand(sc_kappa)) {
      const json sec = section("kappa-sweep");
      return cmd_kappa_sweep(
          settings,
          pick<std::string>(opt_kappa_family, kappa_family, sec, "family", "ry"),
          pick<int>(opt_kappa_points, kappa_points, sec, "points", 25));
    }
    if (app.got_subcommand(sc_dicho)) {
      const json sec = section("dichotomy");
      return cmd_dichotomy(
          settings,
          pick<std::string>(opt_dicho_rho, dicho_rho, sec, "rho", "t-state"),
          pick<std::vector<double>>(opt_dicho_polars, dicho_polars, sec,
                                    "polar", {}),
          pick<std::vector<double>>(opt_dicho_phis, dicho_phis, sec, "phi",
                                    {}));
    }
    if (app.got_subcommand(sc_regr)) {
      const json sec = section("regression");
      return cmd_regression(settings,
                            pick<double>(opt_regr_azimuth, regr_azimuth, sec,
                                         "sigma_azimuth", 1.05));
    }
    if (app.got_subcommand(sc_noise)) {
      const json sec = section("noise-sweep");
      return cmd_noise_sweep(
          settings,
          pick<std::string>(opt_noise_family, noise_family, sec, "family", "rx"),
          pick<double>(opt_noise_theta, noise_theta, sec, "theta",
                       std::numbers::pi / 4.0),
          pick<std::vector<double>>(opt_noise_ps, noise_ps, sec, "p", {}));
    }
    if (app.got_subcommand(sc_mono)) {
      const json sec = section("monotonicity");
      return cmd_monotonicity(
          settings, pick<int>(opt_mono_samples, mono_samples, sec, "samples", 2000));
    }
    if (app.got_subcommand(sc_tensor)) {
      const json sec = section("tensor-suite");
      return cmd_tensor_suite(
          settings, pick<int>(opt_tensor_pairs, tensor_pairs, sec, "pairs", 200),
          pick<int>(opt_tensor_samples, tensor_samples, sec, "samples", 500));
    }
    if (app.got_subcommand(sc_maxc)) {
      const json sec = section("max-c");
      return cmd_max_c(settings, pick<int>(opt_maxc_restarts, maxc_restarts,
                                           sec, "restarts", 50));
    }
    if (app.got_subcommand(sc_verify)) {
      const json sec = section("verify");
      return cmd_verify(settings, pick<int>(opt_verify_n, verify_n, sec, "n", 3));
    }
    throw UsageError("no command selected");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
