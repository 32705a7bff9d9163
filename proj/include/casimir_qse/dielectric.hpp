#pragma once

/** @file dielectric.hpp
    @brief Film dielectric tensor on the imaginary frequency axis.

    Lateral components follow the plasma/Drude form 1 + w_P^2 / (xi (xi + gamma)).
    The normal component is built from inter-subband oscillators. Relaxation
    enters through w^2 -> w (w + i gamma), which at w = i xi becomes
    -s with s = xi (xi + gamma).

    Each resonance fraction dE / (dE^2 + hbar^2 s) is split as
    1/dE - hbar^2 s / (dE (dE^2 + hbar^2 s)); the 1/dE parts carry the sum-rule
    weight that cancels the -w_P^2 / w^2 term, so eps_zz is evaluated as the
    explicitly finite remainder

        eps_zz(i xi) = 1 + sum_j w_j / (dE_j (dE_j^2 + hbar^2 s)),

    w_j = 16 e^2 (hbar^2/2m)^2 q_n^2 |P_nn'|^2 / d  for occupied n and any n' != n,
    where P_nn' is the integral of phi_n phi_n'' and d the normalization length.
 */

#include "casimir_qse/csv.hpp"
#include "casimir_qse/estructure.hpp"
#include "casimir_qse/materials.hpp"

#include <cmath>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace casimir_qse {

struct Oscillator {
  std::size_t from = 0;  ///< occupied subband n
  std::size_t to = 0;    ///< subband n'
  double delta_e = 0.0;  ///< E_n' - E_n, eV (signed)
  double p2 = 0.0;       ///< |P_nn'|^2, 1/nm^2
  double weight = 0.0;   ///< eV^3
};

class DielectricTensor {
public:
  DielectricTensor(FilmElectronicState state, const BulkReference& bulk,
                   OmegaScaling scaling = OmegaScaling::SquareRoot, double gamma = 0.0)
      : state_(std::move(state)), gamma_(gamma) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("DielectricTensor: gamma must be >= 0");
    omega_p_ = film_plasma_frequency(bulk, state_.average_density, scaling);
    build_oscillators();
  }

  const FilmElectronicState& state() const { return state_; }
  double omega_p() const { return omega_p_; }
  double gamma() const { return gamma_; }
  const std::vector<Oscillator>& oscillators() const { return oscillators_; }

  /// Sum-rule weight S (rad^2/s^2) captured by the bound transitions: eps_zz - 1 -> S / xi^2.
  double sum_rule_weight() const { return sum_rule_weight_; }
  /// S / w_P^2; below one when part of the oscillator strength lies outside the spectrum.
  double sum_rule_fraction() const { return sum_rule_weight_ / (omega_p_ * omega_p_); }

  double eps_xx(double xi) const {
    if (!(xi > 0.0)) throw std::domain_error("eps_xx: xi must be positive");
    return 1.0 + omega_p_ * omega_p_ / (xi * (xi + gamma_));
  }

  double eps_zz(double xi) const {
    if (!(xi >= 0.0)) throw std::domain_error("eps_zz: xi must be non-negative");
    const double hs = units::hbar * units::hbar * xi * (xi + gamma_);
    double sum = 0.0;
    for (const auto& o : oscillators_)
      sum += o.weight / (o.delta_e * (o.delta_e * o.delta_e + hs));
    return 1.0 + sum;
  }

  double eps_zz_static() const { return eps_zz(0.0); }

private:
  void build_oscillators() {
    const auto& sp = state_.spectrum;
    const double h = units::hbar2_over_2m;
    const double scale = 16.0 * units::e_squared * h * h / state_.box_width;
    sum_rule_weight_ = 0.0;
    for (std::size_t n = 1; n <= state_.occupied; ++n) {
      for (std::size_t m = 1; m <= sp.size(); ++m) {
        if (m == n || n % 2 == m % 2) continue; // parity selection
        const double p = sp.momentum_matrix_element(n, m);
        Oscillator o;
        o.from = n;
        o.to = m;
        o.delta_e = sp.level(m).energy - sp.level(n).energy;
        o.p2 = p * p;
        o.weight = scale * state_.fill[n - 1] * o.p2;
        oscillators_.push_back(o);
        sum_rule_weight_ += o.weight / o.delta_e;
      }
    }
    sum_rule_weight_ /= units::hbar * units::hbar;
  }

  FilmElectronicState state_;
  double gamma_;
  double omega_p_ = 0.0;
  double sum_rule_weight_ = 0.0;
  std::vector<Oscillator> oscillators_;
};

/// Isotropic bulk plasma (gamma = 0) or Drude reference.
inline double eps_isotropic_bulk(const BulkReference& bulk, double gamma, double xi) {
  if (!(xi > 0.0)) throw std::domain_error("eps_isotropic_bulk: xi must be positive");
  return 1.0 + bulk.Omega_P * bulk.Omega_P / (xi * (xi + gamma));
}

inline void write_dielectric_table_csv(std::ostream& out, const DielectricTensor& t,
                                       std::span<const double> xi_grid) {
  csv::Writer w(out);
  w.comment("model=" + model_name(t.state().spectrum.model()) +
            " D_nm=" + csv::format_number(t.state().thickness()) +
            " omega_P_rad/s=" + csv::format_number(t.omega_p()) +
            " gamma_rad/s=" + csv::format_number(t.gamma()));
  w.comment("eps_zz(0)=" + csv::format_number(t.eps_zz_static()) +
            " sum_rule_fraction=" + csv::format_number(t.sum_rule_fraction()));
  w.header({"xi_rad/s", "eps_xx", "eps_zz"});
  for (double xi : xi_grid) w.row({xi, t.eps_xx(xi), t.eps_zz(xi)});
}

} // namespace casimir_qse
