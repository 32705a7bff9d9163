#include "casimir_qse/lifshitz.hpp"
#include "casimir_qse/sweep.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using namespace casimir_qse;

namespace {

constexpr int exit_usage = 2;
constexpr int exit_numerical = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string figure;
  std::string material = "Al";
  std::string model = "FWM";
  double thickness = 1.0;
  double ell = 10.0;
  double gamma = 0.0;
  std::string dump_dir;
  std::string out_dir;
  std::string materials_config;
  std::string omega_scaling = "sqrt";
  double tol = reduction_rel_tol;
  unsigned threads = 0;
};

MaterialTable load_table(const Config& cfg) {
  if (cfg.materials_config.empty()) return MaterialTable{};
  std::ifstream in(cfg.materials_config);
  if (!in) throw UsageError("cannot open materials config '" + cfg.materials_config + "'");
  try {
    return load_materials(in);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad materials config: ") + e.what());
  }
}

OmegaScaling scaling_of(const Config& cfg) {
  try {
    return parse_omega_scaling(cfg.omega_scaling);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

fs::path output_dir(const Config& cfg) {
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("CASIMIR_QSE_OUTPUT_DIR"); env && *env) return env;
  return "casimir_qse_output";
}

int run_materials(const Config& cfg) {
  const auto table = load_table(cfg);
  csv::Writer w(std::cout);
  w.comment("units: W, E_F, V0 in eV; k_F in 1/nm; n0 in 1/nm^3; Omega_P and gamma in rad/s");
  w.header({"name", "rs_over_a0", "work_function", "EF_bulk", "kF_bulk", "n0", "Omega_P", "V0",
            "gammas"});
  for (const auto& m : table.materials()) {
    const auto b = derive_bulk(m);
    std::string gammas;
    for (double g : m.relaxation_frequencies)
      gammas += (gammas.empty() ? "" : " ") + csv::format_number(g);
    w.row_strings({m.name, csv::format_number(m.rs_over_a0), csv::format_number(m.work_function),
                   csv::format_number(b.EF_bulk), csv::format_number(b.kF_bulk),
                   csv::format_number(b.n0), csv::format_number(b.Omega_P),
                   csv::format_number(bulk_well_depth(m)), gammas});
  }
  return 0;
}

int run_figure(const Config& cfg) {
  const auto table = load_table(cfg);
  SweepPlan plan;
  try {
    plan = figure_plan(cfg.figure, table, output_dir(cfg));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  plan.scaling = scaling_of(cfg);
  plan.force_options.rel_tol = cfg.tol;
  plan.threads = cfg.threads;
  const auto out = run(plan);
  for (const auto& f : out.files) std::cout << f.string() << '\n';
  std::cout << out.manifest.string() << '\n';
  if (!out.failures.empty()) {
    std::cerr << "casimir_qse: " << out.failures.size() << " point(s) failed; see "
              << out.manifest.string() << '\n';
    return exit_numerical;
  }
  return 0;
}

void dump_point(const Config& cfg, const DielectricTensor& tensor) {
  const fs::path dir = cfg.dump_dir;
  fs::create_directories(dir);
  const std::string stem = cfg.material + "_" + cfg.model + "_D" + csv::format_number(cfg.thickness);
  {
    std::ofstream os(dir / (stem + "_spectrum.csv"));
    write_spectrum_csv(os, tensor.state().spectrum, 201);
  }
  {
    std::ofstream os(dir / (stem + "_density.csv"));
    write_density_profile_csv(os, tensor.state());
  }
  std::vector<double> xi;
  for (int i = 0; i <= 80; ++i) xi.push_back(1e12 * std::pow(10.0, i * 6.0 / 80.0));
  std::ofstream os(dir / (stem + "_dielectric.csv"));
  write_dielectric_table_csv(os, tensor, xi);
}

int run_point(const Config& cfg) {
  const auto table = load_table(cfg);
  const auto mat = table.find(cfg.material);
  if (!mat) throw UsageError("unknown material '" + cfg.material + "'");
  ModelKind model;
  try {
    model = parse_model(cfg.model);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const auto scaling = scaling_of(cfg);
  if (!(cfg.thickness > 0.0) || !(cfg.ell > 0.0) || !(cfg.gamma >= 0.0) ||
      !(cfg.tol > 0.0 && cfg.tol < 1.0))
    throw UsageError("need D > 0, ell > 0, gamma >= 0 and 0 < tol < 1");

  const auto echo = "material=" + cfg.material + " model=" + cfg.model +
                    " D=" + csv::format_number(cfg.thickness) + " ell=" + csv::format_number(cfg.ell) +
                    " gamma=" + csv::format_number(cfg.gamma);
  try {
    const auto bulk = derive_bulk(*mat);
    auto tensor = std::make_shared<const DielectricTensor>(
        make_film_state(*mat, model, cfg.thickness), bulk, scaling, cfg.gamma);
    if (!cfg.dump_dir.empty()) dump_point(cfg, *tensor);
    const auto r = force_reduction(quantized_slab(tensor),
                                   bulk_reference_slab(bulk, cfg.gamma, cfg.thickness), cfg.ell,
                                   ForceOptions{cfg.tol});
    csv::Writer w(std::cout);
    w.comment("F_Q and F_ref in Pa (negative = attractive); delta = (F_ref - F_Q) / F_ref");
    w.header({"material", "model", "D_nm", "ell_nm", "gamma_rad_s", "F_Q_Pa", "F_ref_Pa", "delta"});
    w.row_strings({mat->name, to_string(model), csv::format_number(cfg.thickness),
                   csv::format_number(cfg.ell), csv::format_number(cfg.gamma),
                   csv::format_number(r.film.pressure), csv::format_number(r.reference.pressure),
                   csv::format_number(r.delta)});
  } catch (const std::exception& e) {
    std::cerr << "casimir_qse: numerical failure (" << echo << "): " << e.what() << '\n';
    return exit_numerical;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir force between quantized metal films"};
  app.require_subcommand(1, 1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--materials-config", cfg.materials_config,
                    "INI file overriding or extending the material presets");
  };
  auto add_numeric = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "relative quadrature tolerance");
    sub->add_option("--omega-scaling", cfg.omega_scaling,
                    "film plasma frequency scaling for the box model: sqrt|linear");
  };

  auto* figure = app.add_subcommand("figure", "regenerate the dataset of one figure (fig2..fig9)");
  figure->add_option("id", cfg.figure, "figure id")->required();
  figure->add_option("--out", cfg.out_dir, "output directory (default $CASIMIR_QSE_OUTPUT_DIR)");
  figure->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
  add_common(figure);
  add_numeric(figure);

  auto* point = app.add_subcommand("point", "force and reduction ratio at one point");
  point->add_option("--material", cfg.material, "material name")->required();
  point->add_option("--model", cfg.model, "FWM|IWM|PBM")->required();
  point->add_option("--D", cfg.thickness, "film thickness in nm")->required();
  point->add_option("--ell", cfg.ell, "separation in nm")->required();
  point->add_option("--gamma", cfg.gamma, "relaxation frequency in rad/s (0 = plasma)");
  point->add_option("--dump", cfg.dump_dir, "write spectrum, density and dielectric CSVs here");
  add_common(point);
  add_numeric(point);

  auto* materials = app.add_subcommand("materials", "list material presets");
  add_common(materials);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*figure) return run_figure(cfg);
    if (*point) return run_point(cfg);
    return run_materials(cfg);
  } catch (const UsageError& e) {
    std::cerr << "casimir_qse: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "casimir_qse: " << e.what() << '\n';
    return exit_numerical;
  }
}
