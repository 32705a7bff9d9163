#pragma once

/** @file qwell.hpp
    @brief Bound states of a symmetric one-dimensional confining potential.

    Three confinement models share one representation. The well is centred at
    z = 0 and has half-width a. Inside, odd-numbered levels are cos(k z) and
    even-numbered levels sin(k z); outside, a finite well continues each level
    with exp(-kappa (|z| - a)) while hard walls force it to zero.

      - finite well (depth V0 from vacuum, a = D/2): k_n solves
        k D = n pi - 2 asin(k / k0), k0 = sqrt(2 m V0) / hbar
      - infinite well (a = D/2): k_n = n pi / D
      - particle in a box (a = d/2, d >= D): k_n = n pi / d
 */

#include "casimir_qse/csv.hpp"
#include "casimir_qse/quadrature.hpp"
#include "casimir_qse/units.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace casimir_qse {

struct FiniteWell {
  double depth = 0.0; ///< V0, eV
};
struct InfiniteWell {};
struct ParticleInBox {
  double box_width = 0.0; ///< d, nm
};

using ConfinementModel = std::variant<FiniteWell, InfiniteWell, ParticleInBox>;

inline std::string model_name(const ConfinementModel& m) {
  struct {
    std::string operator()(const FiniteWell&) const { return "FWM"; }
    std::string operator()(const InfiniteWell&) const { return "IWM"; }
    std::string operator()(const ParticleInBox&) const { return "PBM"; }
  } v;
  return std::visit(v, m);
}

struct SubbandLevel {
  double k = 0.0;         ///< quantized transverse wavevector, 1/nm
  double energy = 0.0;    ///< eV; from vacuum for the finite well, from the bottom otherwise
  double kappa = 0.0;     ///< outside decay constant, 1/nm; infinite for hard walls
  double amplitude = 0.0; ///< inside normalization, 1/sqrt(nm)
};

class WellSpectrum {
public:
  WellSpectrum(ConfinementModel model, double thickness, double half_width, double depth,
               std::vector<SubbandLevel> levels)
      : model_(model), thickness_(thickness), half_width_(half_width), depth_(depth),
        levels_(std::move(levels)) {}

  const ConfinementModel& model() const { return model_; }
  bool hard_wall() const { return !std::holds_alternative<FiniteWell>(model_); }

  /// Ion slab thickness D (nm).
  double thickness() const { return thickness_; }
  /// Half-width of the confining region (nm).
  double half_width() const { return half_width_; }
  /// V0 for the finite well; infinity for hard walls.
  double depth() const { return depth_; }
  /// k0 = sqrt(2 m V0) / hbar; infinity for hard walls.
  double k0() const { return hard_wall() ? std::numeric_limits<double>::infinity()
                                         : std::sqrt(units::wavevector_squared(depth_)); }

  std::size_t size() const { return levels_.size(); }
  const std::vector<SubbandLevel>& levels() const { return levels_; }

  /// Level n, 1-based.
  const SubbandLevel& level(std::size_t n) const {
    check_index(n);
    return levels_[n - 1];
  }

  /// hbar^2 k_n^2 / 2m: the energy of level n above the well bottom.
  double well_bottom_energy(std::size_t n) const {
    const double k = level(n).k;
    return units::kinetic_energy(k * k);
  }

  /// Energy origin of level energies relative to the well bottom.
  double energy_offset() const { return hard_wall() ? 0.0 : -depth_; }

  double envelope(std::size_t n, double z) const {
    const auto& l = level(n);
    const double a = half_width_;
    if (std::abs(z) <= a) return l.amplitude * inner(n, l.k * z);
    if (hard_wall()) return 0.0;
    const double edge = l.amplitude * inner(n, l.k * std::copysign(a, z));
    return edge * std::exp(-l.kappa * (std::abs(z) - a));
  }

  double envelope_derivative(std::size_t n, double z) const {
    const auto& l = level(n);
    const double a = half_width_;
    if (std::abs(z) <= a) return l.amplitude * l.k * inner_derivative(n, l.k * z);
    if (hard_wall()) return 0.0;
    return -l.kappa * std::copysign(1.0, z) * envelope(n, z);
  }

  /** Integral of phi_n phi_m' over all z, in 1/nm. The momentum matrix element
      <n|p_z|m> is -i hbar times this value; it is antisymmetric in (n, m) and
      vanishes between levels of equal parity.
   */
  double momentum_matrix_element(std::size_t n, std::size_t m) const {
    const auto& ln = level(n);
    const auto& lm = level(m);
    if (n % 2 == m % 2) return 0.0;
    const double a = half_width_;
    auto sinc_int = [a](double q) { return std::abs(q * a) < 1e-8 ? a : std::sin(q * a) / q; };
    const double minus = sinc_int(ln.k - lm.k);
    const double plus = sinc_int(ln.k + lm.k);
    double inside;
    if (n % 2 == 1) // cos_n, sin_m
      inside = lm.k * (minus + plus);
    else // sin_n, cos_m
      inside = -lm.k * (minus - plus);
    inside *= ln.amplitude * lm.amplitude;
    if (hard_wall()) return inside;
    const double bn = ln.amplitude * inner(n, ln.k * a);
    const double bm = lm.amplitude * inner(m, lm.k * a);
    return inside - 2.0 * lm.kappa * bn * bm / (ln.kappa + lm.kappa);
  }

  /// Probability of level n outside the ion slab |z| <= D/2.
  double spill_out(std::size_t n) const {
    const auto& l = level(n);
    const double half_d = 0.5 * thickness_;
    const double s = std::sin(2.0 * l.k * half_d) / (2.0 * l.k);
    const double inside = l.amplitude * l.amplitude * (n % 2 == 1 ? half_d + s : half_d - s);
    return std::max(0.0, 1.0 - inside);
  }

  /** Thomas-Reiche-Kuhn sum over the bound spectrum for level n:
      sum_m 2 |<n|p|m>|^2 / (m_e (E_m - E_n)). Equals 1 for a complete set of states.
   */
  double trk_sum(std::size_t n) const {
    double sum = 0.0;
    for (std::size_t m = 1; m <= size(); ++m) {
      if (m == n) continue;
      const double p = momentum_matrix_element(n, m);
      sum += 4.0 * units::hbar2_over_2m * p * p / (levels_[m - 1].energy - levels_[n - 1].energy);
    }
    return sum;
  }

  /// Left-hand side minus right-hand side of the finite-well quantization condition.
  double quantization_residual(std::size_t n) const {
    const double k = level(n).k;
    if (hard_wall()) return k - static_cast<double>(n) * units::pi / (2.0 * half_width_);
    return k - (static_cast<double>(n) * units::pi / thickness_ -
                (2.0 / thickness_) * std::asin(k / k0()));
  }

private:
  void check_index(std::size_t n) const {
    if (n < 1 || n > levels_.size())
      throw std::out_of_range("WellSpectrum: level " + std::to_string(n) + " out of range 1.." +
                              std::to_string(levels_.size()));
  }
  static double inner(std::size_t n, double x) { return n % 2 == 1 ? std::cos(x) : std::sin(x); }
  static double inner_derivative(std::size_t n, double x) {
    return n % 2 == 1 ? -std::sin(x) : std::cos(x);
  }

  ConfinementModel model_;
  double thickness_;
  double half_width_;
  double depth_;
  std::vector<SubbandLevel> levels_;
};

namespace detail {

inline double hard_wall_amplitude(double half_width) { return 1.0 / std::sqrt(half_width); }

inline WellSpectrum hard_wall_spectrum(ConfinementModel model, double thickness, double width,
                                       std::size_t count) {
  const double a = 0.5 * width;
  std::vector<SubbandLevel> levels(count);
  for (std::size_t n = 1; n <= count; ++n) {
    auto& l = levels[n - 1];
    l.k = static_cast<double>(n) * units::pi / width;
    l.energy = units::kinetic_energy(l.k * l.k);
    l.kappa = std::numeric_limits<double>::infinity();
    l.amplitude = hard_wall_amplitude(a);
  }
  return {model, thickness, a, std::numeric_limits<double>::infinity(), std::move(levels)};
}

inline WellSpectrum finite_well_spectrum(double depth, double thickness) {
  const double k0 = std::sqrt(units::wavevector_squared(depth));
  const double D = thickness;
  const double a = 0.5 * D;
  const auto count = static_cast<std::size_t>(std::ceil(k0 * D / units::pi));
  std::vector<SubbandLevel> levels;
  levels.reserve(count);
  double previous = 0.0;
  for (std::size_t n = 1; n <= count; ++n) {
    const double npi = static_cast<double>(n) * units::pi;
    auto g = [&](double k) { return k * D + 2.0 * std::asin(std::min(1.0, k / k0)) - npi; };
    auto dg = [&](double k) { return D + 2.0 / std::sqrt((k0 - k) * (k0 + k)); };
    const double lo = std::max(previous, (npi - units::pi) / D);
    const double hi = std::min(npi / D, k0);
    if (!(g(lo) < 0.0 && g(hi) > 0.0)) continue; // root pinned to k0: not bound
    const double k = find_root(g, dg, lo, hi, 1e-15 * k0);
    const double kappa = std::sqrt((k0 - k) * (k0 + k));
    if (!(kappa > 0.0)) continue;
    SubbandLevel l;
    l.k = k;
    l.energy = units::kinetic_energy(k * k) - depth;
    l.kappa = kappa;
    const double s = std::sin(2.0 * k * a) / (2.0 * k);
    const double edge = n % 2 == 1 ? std::cos(k * a) : std::sin(k * a);
    const double norm = (n % 2 == 1 ? a + s : a - s) + edge * edge / kappa;
    l.amplitude = 1.0 / std::sqrt(norm);
    levels.push_back(l);
    previous = k;
  }
  return {FiniteWell{depth}, thickness, a, depth, std::move(levels)};
}

} // namespace detail

inline constexpr std::size_t default_hard_wall_levels = 64;

/** Solves the confinement problem for a film of thickness D (nm). Hard-wall
    spectra are infinite and are truncated to hard_wall_levels levels
    (default_hard_wall_levels when zero); a finite well returns every bound state.
 */
inline WellSpectrum solve_spectrum(const ConfinementModel& model, double thickness,
                                   std::size_t hard_wall_levels = 0) {
  if (!(thickness > 0.0)) throw std::invalid_argument("solve_spectrum: thickness must be positive");
  const std::size_t count = hard_wall_levels ? hard_wall_levels : default_hard_wall_levels;
  if (auto fw = std::get_if<FiniteWell>(&model)) {
    if (!(fw->depth > 0.0)) throw std::invalid_argument("solve_spectrum: well depth must be positive");
    auto s = detail::finite_well_spectrum(fw->depth, thickness);
    // A symmetric one-dimensional well always binds its ground state.
    if (s.size() == 0)
      throw std::logic_error("solve_spectrum: finite well returned no bound state (D=" +
                             std::to_string(thickness) + " nm, V0=" + std::to_string(fw->depth) +
                             " eV)");
    return s;
  }
  if (auto box = std::get_if<ParticleInBox>(&model)) {
    if (!(box->box_width >= thickness))
      throw std::invalid_argument("solve_spectrum: box width d must be >= D");
    return detail::hard_wall_spectrum(model, thickness, box->box_width, count);
  }
  return detail::hard_wall_spectrum(model, thickness, thickness, count);
}

/// Debug dump: one row per level, then one row per (level, z) sample.
inline void write_spectrum_csv(std::ostream& out, const WellSpectrum& s, std::size_t samples = 201) {
  csv::Writer w(out);
  w.comment("model=" + model_name(s.model()) + " D_nm=" + csv::format_number(s.thickness()) +
            " half_width_nm=" + csv::format_number(s.half_width()));
  w.comment("columns: n, k_nm^-1, E_eV, z_nm, phi_nm^-1/2 ; z and phi empty on level rows");
  w.header({"n", "k_nm^-1", "E_eV", "z_nm", "phi"});
  for (std::size_t n = 1; n <= s.size(); ++n)
    w.row_strings({std::to_string(n), csv::format_number(s.level(n).k),
                   csv::format_number(s.level(n).energy), "", ""});
  const double extent = s.hard_wall() ? s.half_width() : s.half_width() + 0.5 * s.thickness();
  for (std::size_t n = 1; n <= s.size(); ++n)
    for (std::size_t i = 0; i < samples; ++i) {
      const double z = -extent + 2.0 * extent * static_cast<double>(i) /
                                     static_cast<double>(samples > 1 ? samples - 1 : 1);
      w.row_strings({std::to_string(n), csv::format_number(s.level(n).k),
                     csv::format_number(s.level(n).energy), csv::format_number(z),
                     csv::format_number(s.envelope(n, z))});
    }
}

} // namespace casimir_qse
