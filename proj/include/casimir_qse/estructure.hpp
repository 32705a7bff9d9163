#pragma once

/** @file estructure.hpp
    @brief Occupied electronic state of a film: Fermi level under charge
           neutrality, subband filling, and the electron density profile.

    Occupation arithmetic works with wavevectors squared measured from the well
    bottom. Subband n holds (1/2pi) q_n^2 electrons per nm^2 (spin included),
    with q_n^2 = 2 m E_F / hbar^2 - k_n^2, and neutrality requires the sum over
    occupied subbands to equal n0 D.
 */

#include "casimir_qse/csv.hpp"
#include "casimir_qse/materials.hpp"
#include "casimir_qse/qwell.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace casimir_qse {

enum class ModelKind { FWM, IWM, PBM };

inline std::string to_string(ModelKind m) {
  switch (m) {
  case ModelKind::FWM: return "FWM";
  case ModelKind::IWM: return "IWM";
  case ModelKind::PBM: return "PBM";
  }
  return "?";
}

inline ModelKind parse_model(const std::string& s) {
  if (s == "FWM" || s == "fwm") return ModelKind::FWM;
  if (s == "IWM" || s == "iwm") return ModelKind::IWM;
  if (s == "PBM" || s == "pbm") return ModelKind::PBM;
  throw std::invalid_argument("unknown model '" + s + "' (expected FWM|IWM|PBM)");
}

struct FilmElectronicState {
  WellSpectrum spectrum;
  double fermi_energy = 0.0;     ///< eV, same origin as spectrum level energies
  double fermi_kinetic = 0.0;    ///< eV above the well bottom
  std::size_t occupied = 0;      ///< m0, index of the last occupied subband
  double areal_density = 0.0;    ///< electrons per nm^2
  double box_width = 0.0;        ///< nm; d for the box model, D otherwise
  double average_density = 0.0;  ///< n(D), 1/nm^3
  double ion_density = 0.0;      ///< n0, 1/nm^3
  std::vector<double> fill;      ///< q_n^2 for n = 1..m0, 1/nm^2

  double thickness() const { return spectrum.thickness(); }
  double fermi_wavevector() const { return std::sqrt(units::wavevector_squared(fermi_kinetic)); }
};

namespace detail {

inline double areal_from_fill(const std::vector<double>& fill) {
  return std::accumulate(fill.begin(), fill.end(), 0.0) / (2.0 * units::pi);
}

} // namespace detail

/** Aufbau Fermi level for a spectrum holding n0 D electrons per unit area.
    The candidate m0 = 1, 2, ... has the closed form
    k_F^2 = (2 pi n0 D + sum_{n<=m0} k_n^2) / m0 and is accepted once
    k_F^2 <= k_{m0+1}^2; a Fermi level exactly at a subband edge leaves that
    subband empty.
 */
inline FilmElectronicState fermi_level(const WellSpectrum& spectrum, double n0, double thickness) {
  if (spectrum.size() == 0) throw std::invalid_argument("fermi_level: empty spectrum");
  if (!(n0 > 0.0) || !(thickness > 0.0))
    throw std::invalid_argument("fermi_level: density and thickness must be positive");
  const double target = 2.0 * units::pi * n0 * thickness;
  double sum_k2 = 0.0;
  double kf2 = 0.0;
  std::size_t m0 = 0;
  for (std::size_t m = 1; m <= spectrum.size(); ++m) {
    const double km = spectrum.level(m).k;
    sum_k2 += km * km;
    kf2 = (target + sum_k2) / static_cast<double>(m);
    if (m == spectrum.size()) {
      if (!spectrum.hard_wall() && kf2 >= spectrum.k0() * spectrum.k0())
        throw std::domain_error(
            "fermi_level: neutrality needs more electrons than the bound spectrum holds (D=" +
            std::to_string(thickness) + " nm, V0=" + std::to_string(spectrum.depth()) + " eV)");
      if (spectrum.hard_wall())
        throw std::domain_error("fermi_level: hard-wall spectrum truncated below the Fermi level (D=" +
                                std::to_string(thickness) + " nm, " +
                                std::to_string(spectrum.size()) + " levels)");
      m0 = m;
      break;
    }
    const double next = spectrum.level(m + 1).k;
    if (kf2 <= next * next) {
      m0 = m;
      break;
    }
  }
  FilmElectronicState st{spectrum};
  st.occupied = m0;
  st.fermi_kinetic = units::kinetic_energy(kf2);
  st.fermi_energy = st.fermi_kinetic + spectrum.energy_offset();
  st.fill.resize(m0);
  for (std::size_t n = 1; n <= m0; ++n) {
    const double k = spectrum.level(n).k;
    st.fill[n - 1] = kf2 - k * k;
  }
  st.areal_density = detail::areal_from_fill(st.fill);
  st.box_width = thickness;
  st.average_density = n0;
  st.ion_density = n0;
  return st;
}

/// Electrons per nm^2 in a hard-wall box of width d filled up to bulk k_F.
inline double box_areal_density(double kf, double width) {
  double sum = 0.0;
  for (std::size_t n = 1;; ++n) {
    const double k = static_cast<double>(n) * units::pi / width;
    if (!(k < kf)) break;
    sum += kf * kf - k * k;
  }
  return sum / (2.0 * units::pi);
}

/** Particle-in-a-box state: the Fermi level stays at the bulk value and the box
    width d >= D is chosen so the box holds n0 D electrons per unit area.
 */
inline FilmElectronicState pbm_box_width(const BulkReference& bulk, double thickness,
                                         std::size_t extra_levels = 40) {
  if (!(thickness > 0.0)) throw std::invalid_argument("pbm_box_width: thickness must be positive");
  const double kf = bulk.kF_bulk;
  const double target = bulk.n0 * thickness;
  auto residual = [&](double d) { return box_areal_density(kf, d) - target; };
  if (residual(thickness) > 0.0)
    throw std::domain_error("pbm_box_width: no box width d >= D satisfies neutrality (D=" +
                            std::to_string(thickness) + " nm)");
  double lo = thickness;
  double hi = thickness + 3.0 * units::pi / (4.0 * kf);
  for (int i = 0; residual(hi) <= 0.0; ++i) {
    if (i > 60) throw std::domain_error("pbm_box_width: failed to bracket d");
    lo = hi;
    hi = thickness + 2.0 * (hi - thickness);
  }
  const double d = find_root(residual, lo, hi, 1e-15 * hi);

  const auto m0 = static_cast<std::size_t>(std::ceil(kf * d / units::pi)) - 1;
  auto spectrum = solve_spectrum(ParticleInBox{d}, thickness, 2 * m0 + extra_levels);
  FilmElectronicState st{spectrum};
  st.fermi_kinetic = bulk.EF_bulk;
  st.fermi_energy = bulk.EF_bulk;
  for (std::size_t n = 1; n <= spectrum.size(); ++n) {
    const double k = spectrum.level(n).k;
    if (!(k < kf)) break;
    st.fill.push_back(kf * kf - k * k);
  }
  st.occupied = st.fill.size();
  st.areal_density = detail::areal_from_fill(st.fill);
  st.box_width = d;
  st.average_density = bulk.n0 * thickness / d;
  st.ion_density = bulk.n0;
  return st;
}

/// n(z) in 1/nm^3.
inline double electron_density(const FilmElectronicState& st, double z) {
  double n = 0.0;
  for (std::size_t i = 1; i <= st.occupied; ++i) {
    const double phi = st.spectrum.envelope(i, z);
    n += st.fill[i - 1] * phi * phi;
  }
  return n / (2.0 * units::pi);
}

struct FilmOptions {
  std::size_t extra_levels = 40; ///< unoccupied hard-wall levels kept beyond 2 m0
};

/** Occupied state of a film of thickness D under one confinement model. The
    finite well depth is W + E_F of the bulk.
 */
inline FilmElectronicState make_film_state(const Material& material, ModelKind model,
                                           double thickness, const FilmOptions& opt = {}) {
  const auto bulk = derive_bulk(material);
  switch (model) {
  case ModelKind::FWM: {
    auto spectrum = solve_spectrum(FiniteWell{bulk_well_depth(material)}, thickness);
    return fermi_level(spectrum, bulk.n0, thickness);
  }
  case ModelKind::IWM: {
    auto levels = 2 * static_cast<std::size_t>(std::ceil(bulk.kF_bulk * thickness / units::pi)) +
                  opt.extra_levels;
    for (;;) {
      auto spectrum = solve_spectrum(InfiniteWell{}, thickness, levels);
      try {
        auto st = fermi_level(spectrum, bulk.n0, thickness);
        if (levels >= 2 * st.occupied + opt.extra_levels) return st;
        levels = 2 * st.occupied + opt.extra_levels;
      } catch (const std::domain_error&) {
        levels *= 2;
      }
    }
  }
  case ModelKind::PBM: return pbm_box_width(bulk, thickness, opt.extra_levels);
  }
  throw std::logic_error("make_film_state: unhandled model");
}

inline void write_density_profile_csv(std::ostream& out, const FilmElectronicState& st,
                                      std::size_t samples = 401) {
  csv::Writer w(out);
  w.comment("model=" + model_name(st.spectrum.model()) + " D_nm=" + csv::format_number(st.thickness()) +
            " EF_eV=" + csv::format_number(st.fermi_energy) + " m0=" + std::to_string(st.occupied));
  w.comment("units: z in nm, n in 1/nm^3; ion slab occupies |z| <= D/2 with density n0=" +
            csv::format_number(st.ion_density));
  w.header({"z_nm", "n_nm^-3"});
  const double extent = st.spectrum.hard_wall() ? st.spectrum.half_width()
                                                : st.spectrum.half_width() + 0.5 * st.thickness();
  for (std::size_t i = 0; i < samples; ++i) {
    const double z = -extent + 2.0 * extent * static_cast<double>(i) /
                                   static_cast<double>(samples > 1 ? samples - 1 : 1);
    w.row({z, electron_density(st, z)});
  }
}

} // namespace casimir_qse
