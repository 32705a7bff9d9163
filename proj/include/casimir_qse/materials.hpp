#pragma once

/** @file materials.hpp
    @brief Free-electron material definitions and the bulk reference quantities
           derived from them.
 */

#include "casimir_qse/units.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace casimir_qse {

struct Material {
  std::string name;
  double rs_over_a0 = 0.0;
  double work_function = 0.0;                 ///< eV
  std::vector<double> relaxation_frequencies; ///< rad/s

  void validate() const {
    if (!(rs_over_a0 > 0.0))
      throw std::invalid_argument("material '" + name + "': r_s/a0 must be positive");
    if (!(work_function >= 0.0))
      throw std::invalid_argument("material '" + name + "': work function must be non-negative");
    for (double g : relaxation_frequencies)
      if (!(g >= 0.0))
        throw std::invalid_argument("material '" + name +
                                    "': relaxation frequencies must be non-negative");
  }
};

/// Bulk free-electron quantities in library units.
struct BulkReference {
  double n0 = 0.0;      ///< 1/nm^3
  double kF_bulk = 0.0; ///< 1/nm
  double EF_bulk = 0.0; ///< eV
  double Omega_P = 0.0; ///< rad/s
};

/// Same quantities in SI (1/m^3, 1/m, J, rad/s).
struct BulkReferenceSI {
  double n0 = 0.0;
  double kF_bulk = 0.0;
  double EF_bulk = 0.0;
  double Omega_P = 0.0;
};

inline BulkReferenceSI to_si(const BulkReference& b) {
  constexpr double m = units::meter_per_nm;
  return {b.n0 / (m * m * m), b.kF_bulk / m, b.EF_bulk * units::joule_per_ev, b.Omega_P};
}

inline BulkReference from_si(const BulkReferenceSI& b) {
  constexpr double m = units::meter_per_nm;
  return {b.n0 * (m * m * m), b.kF_bulk * m, b.EF_bulk / units::joule_per_ev, b.Omega_P};
}

/// Free-electron plasma frequency (rad/s) of an electron gas of density n (1/nm^3).
inline double plasma_frequency(double density) {
  // (hbar Omega)^2 = 4 pi e^2 n hbar^2 / m
  const double hbar_omega_sq =
      4.0 * units::pi * units::e_squared * density * 2.0 * units::hbar2_over_2m;
  return std::sqrt(hbar_omega_sq) / units::hbar;
}

inline BulkReference derive_bulk(double rs_over_a0) {
  if (!(rs_over_a0 > 0.0))
    throw std::invalid_argument("derive_bulk: r_s/a0 must be positive");
  const double rs = rs_over_a0 * units::bohr;
  BulkReference b;
  b.kF_bulk = std::cbrt(9.0 * units::pi / 4.0) / rs;
  b.n0 = b.kF_bulk * b.kF_bulk * b.kF_bulk / (3.0 * units::pi * units::pi);
  b.EF_bulk = units::kinetic_energy(b.kF_bulk * b.kF_bulk);
  b.Omega_P = plasma_frequency(b.n0);
  return b;
}

inline BulkReference derive_bulk(const Material& material) {
  material.validate();
  return derive_bulk(material.rs_over_a0);
}

/// Depth of the finite well measured from vacuum: work function plus Fermi energy.
inline double well_depth(const Material& material, double fermi_energy) {
  if (!(fermi_energy > 0.0))
    throw std::invalid_argument("well_depth: Fermi energy must be positive");
  return material.work_function + fermi_energy;
}

/// Well depth from the bulk Fermi energy; fixed per material.
inline double bulk_well_depth(const Material& material) {
  return well_depth(material, derive_bulk(material).EF_bulk);
}

/// How the film plasma frequency follows the average electron density n(D).
enum class OmegaScaling {
  SquareRoot, ///< omega_P = Omega_P sqrt(n/n0), the density scaling of a free electron gas
  Linear,     ///< omega_P = Omega_P n/n0, as literally printed in the source model
};

inline double film_plasma_frequency(const BulkReference& bulk, double average_density,
                                    OmegaScaling scaling) {
  const double ratio = average_density / bulk.n0;
  return scaling == OmegaScaling::Linear ? bulk.Omega_P * ratio
                                         : bulk.Omega_P * std::sqrt(ratio);
}

inline std::string to_string(OmegaScaling s) {
  return s == OmegaScaling::Linear ? "linear" : "sqrt";
}

inline OmegaScaling parse_omega_scaling(const std::string& s) {
  if (s == "sqrt" || s == "square-root") return OmegaScaling::SquareRoot;
  if (s == "linear") return OmegaScaling::Linear;
  throw std::invalid_argument("unknown omega_P scaling '" + s + "' (expected sqrt|linear)");
}

namespace presets {

// Work functions in eV from the standard free-electron tables; relaxation
// frequencies are the pair used for each metal in the Drude sweeps.
inline Material aluminium() { return {"Al", 2.07, 4.28, {1e14, 1e15}}; }
inline Material silver() { return {"Ag", 3.02, 4.26, {5e13, 1e14}}; }
inline Material cesium() { return {"Cs", 5.62, 2.14, {5e13, 1e14}}; }

inline std::vector<Material> all() { return {aluminium(), silver(), cesium()}; }

} // namespace presets

/// Ordered material table with name lookup.
class MaterialTable {
public:
  MaterialTable() : materials_(presets::all()) {}
  explicit MaterialTable(std::vector<Material> materials) : materials_(std::move(materials)) {}

  const std::vector<Material>& materials() const { return materials_; }

  std::optional<Material> find(const std::string& name) const {
    auto it = std::find_if(materials_.begin(), materials_.end(),
                           [&](const Material& m) { return m.name == name; });
    if (it == materials_.end()) return std::nullopt;
    return *it;
  }

  const Material& at(const std::string& name) const {
    auto it = std::find_if(materials_.begin(), materials_.end(),
                           [&](const Material& m) { return m.name == name; });
    if (it == materials_.end()) throw std::out_of_range("unknown material '" + name + "'");
    return *it;
  }

  /// Inserts or replaces by name.
  void upsert(Material m) {
    m.validate();
    auto it = std::find_if(materials_.begin(), materials_.end(),
                           [&](const Material& x) { return x.name == m.name; });
    if (it == materials_.end())
      materials_.push_back(std::move(m));
    else
      *it = std::move(m);
  }

private:
  std::vector<Material> materials_;
};

inline std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    auto last = item.find_last_not_of(" \t");
    out.push_back(std::stod(item.substr(first, last - first + 1)));
  }
  return out;
}

/** Reads materials from an INI-style file, one section per material:

        [Cs]
        rs_over_a0 = 5.62
        work_function = 2.14
        relaxation_frequencies = 5e13, 1e14

    Sections naming a preset override that preset; other names are appended.
 */
inline MaterialTable load_materials(std::istream& in, MaterialTable base = {}) {
  boost::property_tree::ptree tree;
  boost::property_tree::read_ini(in, tree);
  for (const auto& [section, body] : tree) {
    Material m;
    m.name = section;
    if (auto existing = base.find(section)) m = *existing;
    m.rs_over_a0 = body.get<double>("rs_over_a0", m.rs_over_a0);
    m.work_function = body.get<double>("work_function", m.work_function);
    if (auto g = body.get_optional<std::string>("relaxation_frequencies"))
      m.relaxation_frequencies = parse_number_list(*g);
    base.upsert(std::move(m));
  }
  return base;
}

} // namespace casimir_qse
