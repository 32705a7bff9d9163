#pragma once

/** @file sweep.hpp
    @brief Parameter sweeps over materials, confinement models, thicknesses,
           separations and relaxation frequencies, written as CSV datasets plus a
           key-value run manifest.

    One CSV is written per (material, gamma) with one value column per model.
    Rows are the cartesian product of the thickness grid and, for force
    quantities, the separation grid, in grid order.
 */

#include "casimir_qse/csv.hpp"
#include "casimir_qse/lifshitz.hpp"
#include "casimir_qse/version.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace casimir_qse {

enum class Quantity { EfRatio, EpsZz0, DeltaP, DeltaD, Force };

inline std::string to_string(Quantity q) {
  switch (q) {
  case Quantity::EfRatio: return "EF_ratio";
  case Quantity::EpsZz0: return "eps_zz0";
  case Quantity::DeltaP: return "delta_P";
  case Quantity::DeltaD: return "delta_D";
  case Quantity::Force: return "force";
  }
  return "?";
}

inline bool needs_separation(Quantity q) {
  return q == Quantity::DeltaP || q == Quantity::DeltaD || q == Quantity::Force;
}

/// Units of the thickness grid: nanometres or k_F D / pi with the bulk k_F.
enum class ThicknessAxis { Nanometres, FermiUnits };

struct SweepPlan {
  std::string name = "sweep";
  std::vector<Material> materials;
  std::vector<ModelKind> models;
  std::vector<double> thickness_grid;
  ThicknessAxis thickness_axis = ThicknessAxis::Nanometres;
  std::vector<double> separation_grid; ///< nm
  std::vector<double> gammas;          ///< rad/s
  bool material_gammas = false;        ///< use {0} and each material's own relaxation frequencies
  Quantity quantity = Quantity::DeltaP;
  std::filesystem::path output_dir = ".";
  ForceOptions force_options{reduction_rel_tol};
  OmegaScaling scaling = OmegaScaling::SquareRoot;
  unsigned threads = 0; ///< 0: hardware concurrency

  void validate() const {
    auto increasing = [](const std::vector<double>& g) {
      for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) return false;
      return true;
    };
    if (materials.empty()) throw std::invalid_argument("sweep plan: no materials");
    if (models.empty()) throw std::invalid_argument("sweep plan: no models");
    if (thickness_grid.empty() || !increasing(thickness_grid) || !(thickness_grid.front() > 0.0))
      throw std::invalid_argument("sweep plan: thickness grid must be nonempty, positive, increasing");
    if (needs_separation(quantity) &&
        (separation_grid.empty() || !increasing(separation_grid) || !(separation_grid.front() > 0.0)))
      throw std::invalid_argument(
          "sweep plan: separation grid must be nonempty, positive, increasing");
    if (quantity == Quantity::DeltaD && gammas.empty() && !material_gammas)
      throw std::invalid_argument("sweep plan: delta_D needs a nonempty gamma set");
    if (!increasing(gammas)) throw std::invalid_argument("sweep plan: gammas must be increasing");
    for (double g : gammas)
      if (!(g >= 0.0)) throw std::invalid_argument("sweep plan: gammas must be >= 0");
    for (const auto& m : materials) m.validate();
  }

  std::vector<double> gammas_for(const Material& m) const {
    if (quantity == Quantity::EfRatio || quantity == Quantity::EpsZz0 ||
        quantity == Quantity::DeltaP)
      return {0.0};
    std::vector<double> g = gammas;
    if (material_gammas) {
      g.push_back(0.0);
      g.insert(g.end(), m.relaxation_frequencies.begin(), m.relaxation_frequencies.end());
      std::sort(g.begin(), g.end());
      g.erase(std::unique(g.begin(), g.end()), g.end());
    }
    return g;
  }

  double thickness_nm(const Material& m, double grid_value) const {
    return thickness_axis == ThicknessAxis::FermiUnits
               ? grid_value * units::pi / derive_bulk(m).kF_bulk
               : grid_value;
  }
};

struct PointFailure {
  std::string material;
  std::string model;
  double thickness = 0.0;
  double separation = std::numeric_limits<double>::quiet_NaN();
  double gamma = 0.0;
  std::string error;
};

struct SweepOutcome {
  std::vector<std::filesystem::path> files;
  std::filesystem::path manifest;
  std::vector<PointFailure> failures;
  double wall_seconds = 0.0;
};

namespace detail {

inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
  g.back() = hi;
  return g;
}

inline std::string gamma_tag(double gamma) {
  if (gamma == 0.0) return "gamma0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "gamma%.3g", gamma);
  std::string s = buf;
  for (auto& ch : s)
    if (ch == '+') ch = 'p';
  return s;
}

/// Work unit: one film (material, model, thickness, gamma) across the separation grid.
struct Job {
  std::size_t material, model, thickness, gamma;
};

struct JobResult {
  std::vector<double> values; ///< one per separation, or a single value
  std::vector<double> extra;  ///< m0 for EF_ratio
  std::vector<PointFailure> failures;
};

inline JobResult run_job(const SweepPlan& plan, const Material& mat, ModelKind model, double D,
                         double gamma) {
  JobResult r;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t width = needs_separation(plan.quantity) ? plan.separation_grid.size() : 1;
  r.values.assign(width, nan);
  r.extra.assign(width, nan);
  auto fail = [&](double ell, const std::string& what) {
    r.failures.push_back({mat.name, to_string(model), D, ell, gamma, what});
  };
  std::shared_ptr<const DielectricTensor> tensor;
  BulkReference bulk;
  try {
    bulk = derive_bulk(mat);
    auto state = make_film_state(mat, model, D);
    if (plan.quantity == Quantity::EfRatio) {
      r.values[0] = state.fermi_kinetic / bulk.EF_bulk;
      r.extra[0] = static_cast<double>(state.occupied);
      return r;
    }
    tensor = std::make_shared<const DielectricTensor>(std::move(state), bulk, plan.scaling, gamma);
    if (plan.quantity == Quantity::EpsZz0) {
      r.values[0] = tensor->eps_zz_static() / (D * D);
      return r;
    }
  } catch (const std::exception& e) {
    fail(nan, e.what());
    return r;
  }
  const auto film = quantized_slab(tensor);
  const auto reference = bulk_reference_slab(bulk, gamma, D);
  for (std::size_t i = 0; i < width; ++i) {
    const double ell = plan.separation_grid[i];
    try {
      if (plan.quantity == Quantity::Force)
        r.values[i] = force(film, ell, plan.force_options).pressure;
      else
        r.values[i] = force_reduction(film, reference, ell, plan.force_options).delta;
    } catch (const std::exception& e) {
      fail(ell, e.what());
    }
  }
  return r;
}

inline std::string quantity_units(Quantity q) {
  switch (q) {
  case Quantity::EfRatio: return "E_F / E_F_bulk (dimensionless), E_F measured from the well bottom";
  case Quantity::EpsZz0: return "eps_zz(0) / D^2 in nm^-2";
  case Quantity::DeltaP: return "delta_P = (F_P - F_Q) / F_P (dimensionless)";
  case Quantity::DeltaD: return "delta_D = (F_D - F_QD) / F_D (dimensionless)";
  case Quantity::Force: return "film pressure F_Q in Pa (negative = attractive)";
  }
  return "";
}

} // namespace detail

inline SweepOutcome run(const SweepPlan& plan) {
  plan.validate();
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(plan.output_dir);

  // Enumerate jobs in deterministic order.
  std::vector<std::vector<double>> gammas;
  std::vector<detail::Job> jobs;
  for (std::size_t mi = 0; mi < plan.materials.size(); ++mi) {
    gammas.push_back(plan.gammas_for(plan.materials[mi]));
    for (std::size_t gi = 0; gi < gammas[mi].size(); ++gi)
      for (std::size_t di = 0; di < plan.thickness_grid.size(); ++di)
        for (std::size_t ki = 0; ki < plan.models.size(); ++ki) jobs.push_back({mi, ki, di, gi});
  }
  std::vector<detail::JobResult> results(jobs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const auto& job = jobs[j];
      const auto& mat = plan.materials[job.material];
      results[j] = detail::run_job(plan, mat, plan.models[job.model],
                                   plan.thickness_nm(mat, plan.thickness_grid[job.thickness]),
                                   gammas[job.material][job.gamma]);
    }
  };
  unsigned n_threads = plan.threads ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, std::max<std::size_t>(1, jobs.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }

  SweepOutcome out;
  const bool with_ell = needs_separation(plan.quantity);
  std::size_t j = 0;
  for (std::size_t mi = 0; mi < plan.materials.size(); ++mi) {
    const auto& mat = plan.materials[mi];
    const auto bulk = derive_bulk(mat);
    for (std::size_t gi = 0; gi < gammas[mi].size(); ++gi) {
      const double gamma = gammas[mi][gi];
      std::string file = plan.name + "_" + mat.name;
      if (plan.quantity == Quantity::DeltaD || plan.quantity == Quantity::Force)
        file += "_" + detail::gamma_tag(gamma);
      const auto path = plan.output_dir / (file + ".csv");
      std::ofstream os(path);
      if (!os) throw std::runtime_error("sweep: cannot write '" + path.string() + "'");
      csv::Writer w(os);
      w.comment("casimir_qse " + std::string(version) + " sweep=" + plan.name +
                " quantity=" + to_string(plan.quantity));
      w.comment("material=" + mat.name + " rs_over_a0=" + csv::format_number(mat.rs_over_a0) +
                " work_function_eV=" + csv::format_number(mat.work_function) +
                " gamma_rad/s=" + csv::format_number(gamma) +
                " omega_P_scaling=" + to_string(plan.scaling));
      w.comment("columns: D_nm (film thickness), kFD_over_pi (bulk k_F times D over pi)" +
                std::string(with_ell ? ", ell_nm (separation)" : "") +
                ", then one column per model: " + detail::quantity_units(plan.quantity));
      std::vector<std::string> header{"D_nm", "kFD_over_pi"};
      if (with_ell) header.push_back("ell_nm");
      for (auto m : plan.models) header.push_back(to_string(m));
      if (plan.quantity == Quantity::EfRatio)
        for (auto m : plan.models) header.push_back(to_string(m) + "_m0");
      w.header(header);

      for (std::size_t di = 0; di < plan.thickness_grid.size(); ++di) {
        const double D = plan.thickness_nm(mat, plan.thickness_grid[di]);
        const std::size_t first = j;
        j += plan.models.size();
        const std::size_t width = with_ell ? plan.separation_grid.size() : 1;
        for (std::size_t li = 0; li < width; ++li) {
          std::vector<double> row{D, bulk.kF_bulk * D / units::pi};
          if (with_ell) row.push_back(plan.separation_grid[li]);
          for (std::size_t ki = 0; ki < plan.models.size(); ++ki)
            row.push_back(results[first + ki].values[li]);
          if (plan.quantity == Quantity::EfRatio)
            for (std::size_t ki = 0; ki < plan.models.size(); ++ki)
              row.push_back(results[first + ki].extra[li]);
          w.row(row);
        }
        for (std::size_t ki = 0; ki < plan.models.size(); ++ki)
          out.failures.insert(out.failures.end(), results[first + ki].failures.begin(),
                              results[first + ki].failures.end());
      }
      out.files.push_back(path);
    }
  }

  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.manifest = plan.output_dir / (plan.name + "_manifest.txt");
  std::ofstream mf(out.manifest);
  auto join = [](const auto& v, auto fmt) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s;
  };
  auto num = [](double x) { return csv::format_number(x); };
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  mf << "name = " << plan.name << '\n'
     << "library_version = " << version << '\n'
     << "timestamp = " << stamp << '\n'
     << "quantity = " << to_string(plan.quantity) << '\n'
     << "materials = " << join(plan.materials, [](const Material& m) { return m.name; }) << '\n'
     << "models = " << join(plan.models, [](ModelKind m) { return to_string(m); }) << '\n'
     << "thickness_axis = "
     << (plan.thickness_axis == ThicknessAxis::FermiUnits ? "kFD_over_pi" : "nm") << '\n'
     << "thickness_grid = " << join(plan.thickness_grid, num) << '\n'
     << "separation_grid_nm = " << join(plan.separation_grid, num) << '\n'
     << "gammas_rad_per_s = " << join(plan.gammas, num) << '\n'
     << "material_gammas = " << (plan.material_gammas ? "true" : "false") << '\n'
     << "omega_p_scaling = " << to_string(plan.scaling) << '\n'
     << "rel_tol = " << num(plan.force_options.rel_tol) << '\n'
     << "max_intervals = " << plan.force_options.max_intervals << '\n'
     << "wall_time_s = " << num(out.wall_seconds) << '\n'
     << "files = " << join(out.files, [](const auto& p) { return p.filename().string(); }) << '\n'
     << "failures = " << out.failures.size() << '\n';
  for (std::size_t i = 0; i < out.failures.size(); ++i) {
    const auto& f = out.failures[i];
    mf << "failure." << i << " = material=" << f.material << " model=" << f.model
       << " D_nm=" << num(f.thickness) << " ell_nm=" << num(f.separation)
       << " gamma=" << num(f.gamma) << " error=" << f.error << '\n';
  }
  return out;
}

/// Reads a key = value manifest.
inline std::map<std::string, std::string> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest '" + path.string() + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return kv;
}

inline const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig2", "fig3", "fig4", "fig5",
                                            "fig6", "fig7", "fig8", "fig9"};
  return ids;
}

/** Plans that regenerate each figure dataset: Fermi level (fig2), static eps_zz
    (fig3), plasma reductions at D = 1 and 5 nm (fig4, fig5), Drude reductions at
    D = 1 and 5 nm (fig6, fig7), Ag model comparison at gamma = 1e14 (fig8) and
    Ag thickness dependence at l = 5 nm (fig9).
 */
inline SweepPlan figure_plan(const std::string& id, const MaterialTable& table,
                             const std::filesystem::path& output_dir) {
  const std::vector<ModelKind> all_models{ModelKind::FWM, ModelKind::IWM, ModelKind::PBM};
  const std::vector<Material> metals{table.at("Al"), table.at("Ag"), table.at("Cs")};
  const auto separations = detail::log_grid(1.0, 100.0, 60);
  SweepPlan p;
  p.name = id;
  p.output_dir = output_dir;
  p.materials = metals;
  if (id == "fig2" || id == "fig3") {
    p.quantity = id == "fig2" ? Quantity::EfRatio : Quantity::EpsZz0;
    p.models = id == "fig2" ? std::vector<ModelKind>{ModelKind::FWM, ModelKind::IWM} : all_models;
    p.thickness_axis = ThicknessAxis::FermiUnits;
    // The static response is followed well into its large-D plateau.
    p.thickness_grid = id == "fig2" ? detail::log_grid(0.5, 12.0, 240) : detail::log_grid(0.5, 60.0, 320);
  } else if (id == "fig4" || id == "fig5") {
    p.quantity = Quantity::DeltaP;
    p.models = all_models;
    p.thickness_grid = {id == "fig4" ? 1.0 : 5.0};
    p.separation_grid = separations;
  } else if (id == "fig6" || id == "fig7") {
    p.quantity = Quantity::DeltaD;
    p.models = {ModelKind::FWM};
    p.thickness_grid = {id == "fig6" ? 1.0 : 5.0};
    p.separation_grid = separations;
    p.material_gammas = true;
  } else if (id == "fig8") {
    p.quantity = Quantity::DeltaD;
    p.materials = {table.at("Ag")};
    p.models = all_models;
    p.thickness_grid = {5.0};
    p.separation_grid = separations;
    p.gammas = {1e14};
  } else if (id == "fig9") {
    p.quantity = Quantity::DeltaD;
    p.materials = {table.at("Ag")};
    p.models = {ModelKind::FWM};
    p.thickness_grid = detail::log_grid(1.0, 50.0, 40);
    p.separation_grid = {5.0};
    p.gammas = {0.0, 1e14};
  } else {
    throw std::invalid_argument("unknown figure '" + id + "' (expected fig2..fig9)");
  }
  return p;
}

} // namespace casimir_qse
