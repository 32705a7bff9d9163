#pragma once

/** @file lifshitz.hpp
    @brief Casimir pressure between two identical uniaxial slabs.

    All quantities live on the imaginary frequency axis w = i xi:

        F = -(hbar / 2 pi^2) int_0^inf k dk int_0^inf dxi  q
              [ Q_TM^2 / (1 - Q_TM^2) + Q_TE^2 / (1 - Q_TE^2) ]

        q    = sqrt(k^2 + xi^2/c^2)
        g_TE = sqrt(k^2 + xi^2 eps_xx / c^2)
        g_TM = sqrt((k^2 / eps_zz + xi^2 / c^2) eps_xx)
        rho_TM = (g_TM - q eps_xx) / (g_TM + q eps_xx),  rho_TE = (g_TE - q) / (g_TE + q)
        Q = rho (1 - exp(-2 g D)) / (1 - rho^2 exp(-2 g D)) exp(-q l)

    The frequency integral is the outer one so the dielectric functions are
    evaluated once per frequency node.
 */

#include "casimir_qse/dielectric.hpp"
#include "casimir_qse/quadrature.hpp"
#include "casimir_qse/units.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace casimir_qse {

struct SlabOptics {
  std::function<double(double)> eps_xx;
  std::function<double(double)> eps_zz;
  double thickness = 0.0;       ///< nm
  double frequency_scale = 0.0; ///< rad/s; where the response dies off (plasma frequency)
};

/// Uniaxial slab with plasma/Drude response in every direction.
inline SlabOptics plasma_slab(double omega_p, double gamma, double thickness) {
  auto eps = [omega_p, gamma](double xi) { return 1.0 + omega_p * omega_p / (xi * (xi + gamma)); };
  return {eps, eps, thickness, omega_p};
}

inline SlabOptics bulk_reference_slab(const BulkReference& bulk, double gamma, double thickness) {
  return plasma_slab(bulk.Omega_P, gamma, thickness);
}

inline SlabOptics quantized_slab(std::shared_ptr<const DielectricTensor> tensor) {
  SlabOptics s;
  s.eps_xx = [tensor](double xi) { return tensor->eps_xx(xi); };
  s.eps_zz = [tensor](double xi) { return tensor->eps_zz(xi); };
  s.thickness = tensor->state().thickness();
  s.frequency_scale = tensor->omega_p();
  return s;
}

inline SlabOptics quantized_slab(const DielectricTensor& tensor) {
  return quantized_slab(std::make_shared<const DielectricTensor>(tensor));
}

/// Vacuum slab: no reflection.
inline SlabOptics vacuum_slab(double thickness) {
  auto one = [](double) { return 1.0; };
  return {one, one, thickness, 0.0};
}

struct QFactors {
  double tm = 0.0;
  double te = 0.0;
};

namespace detail {

/// log|rho| for rho = (a - b) / (a + b), a, b > 0; -inf when a == b.
inline double log_abs_reflection(double a, double b) {
  return std::log1p(-2.0 * std::min(a, b) / (a + b));
}

/// log|Q| for one polarization.
inline double log_abs_q(double a, double b, double g_slab, double thickness, double q, double ell) {
  const double log_rho = log_abs_reflection(a, b);
  if (std::isinf(log_rho)) return log_rho;
  const double e = std::exp(-2.0 * g_slab * thickness);
  const double rho2 = std::exp(2.0 * log_rho);
  return log_rho + std::log1p(-e) - std::log1p(-rho2 * e) - q * ell;
}

/// Q^2 / (1 - Q^2) from log|Q|, stable as Q^2 -> 1.
inline double mode_term(double log_q) {
  if (std::isinf(log_q)) return 0.0;
  const double x = 2.0 * log_q;
  return std::exp(x) / -std::expm1(x);
}

struct Wavevectors {
  double q, g_te, g_tm;
};

inline Wavevectors wavevectors(double k, double xi, double exx, double ezz) {
  const double w2 = xi * xi / (units::c * units::c);
  const double te_arg = k * k + w2 * exx;
  const double tm_arg = (k * k / ezz + w2) * exx;
  if (!(te_arg >= 0.0) || !(tm_arg >= 0.0) || !(exx > 0.0) || !(ezz > 0.0))
    throw std::domain_error("lifshitz: negative square-root argument on the imaginary axis");
  return {std::sqrt(k * k + w2), std::sqrt(te_arg), std::sqrt(tm_arg)};
}

/// k q [Q_TM^2/(1-Q_TM^2) + Q_TE^2/(1-Q_TE^2)], nm^-2.
inline double integrand(double k, double xi, double exx, double ezz, double thickness, double ell) {
  const auto w = wavevectors(k, xi, exx, ezz);
  const double tm = mode_term(log_abs_q(w.g_tm, w.q * exx, w.g_tm, thickness, w.q, ell));
  const double te = mode_term(log_abs_q(w.g_te, w.q, w.g_te, thickness, w.q, ell));
  return k * w.q * (tm + te);
}

} // namespace detail

/** Finite-thickness reflection factors with the separation damping exp(-q l).
    Signs follow rho_TM and rho_TE above: Q_TM < 0 and Q_TE > 0 for a metal.
 */
inline QFactors q_factors(const SlabOptics& slab, double k, double xi, double ell) {
  if (!(k >= 0.0) || !(xi > 0.0) || !(ell > 0.0))
    throw std::invalid_argument("q_factors: need k >= 0, xi > 0, ell > 0");
  const double exx = slab.eps_xx(xi);
  const double ezz = slab.eps_zz(xi);
  const auto w = detail::wavevectors(k, xi, exx, ezz);
  auto factor = [&](double g, double b) {
    const double rho = (g - b) / (g + b);
    const double e = std::exp(-2.0 * g * slab.thickness);
    return rho * (1.0 - e) / (1.0 - rho * rho * e) * std::exp(-w.q * ell);
  };
  return {factor(w.g_tm, w.q * exx), factor(w.g_te, w.q)};
}

struct ForceOptions {
  double rel_tol = 1e-6;
  std::size_t max_intervals = 2000; ///< per one-dimensional integral
};

struct ForceResult {
  double pressure = 0.0;           ///< Pa, negative = attractive
  double abs_error_estimate = 0.0; ///< Pa
  std::size_t evaluations = 0;
};

/// Pressure between two identical slabs at separation ell (nm).
inline ForceResult force(const SlabOptics& slab, double ell, const ForceOptions& opt = {}) {
  if (!(ell > 0.0)) throw std::invalid_argument("force: separation must be positive");
  if (!(opt.rel_tol > 0.0 && opt.rel_tol < 1.0))
    throw std::invalid_argument("force: relative tolerance must lie in (0, 1)");

  const double light_scale = units::c / (2.0 * ell);
  const double xi0 = slab.frequency_scale > 0.0 ? std::min(slab.frequency_scale, light_scale)
                                                : light_scale;
  const double k0 = 1.0 / (2.0 * ell);

  QuadratureOptions inner_opt;
  inner_opt.rel_tol = 0.1 * opt.rel_tol;
  inner_opt.max_intervals = opt.max_intervals;
  QuadratureOptions outer_opt;
  outer_opt.rel_tol = 0.5 * opt.rel_tol;
  outer_opt.max_intervals = opt.max_intervals;

  std::size_t evaluations = 0;
  double worst_inner_rel = 0.0;
  bool inner_failed = false;

  auto over_k = [&](double t) {
    const double xi = xi0 * t / (1.0 - t);
    const double jac = xi0 / ((1.0 - t) * (1.0 - t));
    const double exx = slab.eps_xx(xi);
    const double ezz = slab.eps_zz(xi);
    auto f = [&](double u) {
      const double k = k0 * u / (1.0 - u);
      return detail::integrand(k, xi, exx, ezz, slab.thickness, ell) * k0 / ((1.0 - u) * (1.0 - u));
    };
    const auto r = integrate_adaptive(f, 0.0, 1.0, inner_opt);
    evaluations += r.evaluations;
    if (!r.converged) inner_failed = true;
    if (r.value != 0.0) worst_inner_rel = std::max(worst_inner_rel, r.abs_error / std::abs(r.value));
    return r.value * jac;
  };
  const auto outer = integrate_adaptive(over_k, 0.0, 1.0, outer_opt);

  const double prefactor = -units::hbar / (2.0 * units::pi * units::pi) * units::pascal_per_ev_nm3;
  ForceResult res;
  res.pressure = prefactor * outer.value;
  res.abs_error_estimate =
      std::abs(prefactor) * (outer.abs_error + worst_inner_rel * std::abs(outer.value));
  res.evaluations = evaluations;
  if (!outer.converged || inner_failed || res.abs_error_estimate > opt.rel_tol * std::abs(res.pressure))
    throw ConvergenceError("force: quadrature did not converge at ell=" + std::to_string(ell) +
                               " nm, D=" + std::to_string(slab.thickness) + " nm",
                           res.pressure, res.abs_error_estimate);
  return res;
}

/// -pi^2 hbar c / (240 l^4) in Pa.
inline double ideal_mirror_pressure(double ell) {
  return -units::pi * units::pi * units::hbar * units::c / (240.0 * std::pow(ell, 4)) *
         units::pascal_per_ev_nm3;
}

struct ReductionResult {
  ForceResult film;      ///< F_Q (plasma) or F_QD (Drude)
  ForceResult reference; ///< F_P or F_D from the isotropic bulk model
  double delta = 0.0;    ///< (F_ref - F_film) / F_ref
};

/// Default tolerance for reduction ratios, which are differences of close forces.
inline constexpr double reduction_rel_tol = 1e-7;

inline ReductionResult force_reduction(const SlabOptics& film, const SlabOptics& reference,
                                       double ell, const ForceOptions& opt) {
  ReductionResult r;
  r.film = force(film, ell, opt);
  r.reference = force(reference, ell, opt);
  r.delta = (r.reference.pressure - r.film.pressure) / r.reference.pressure;
  return r;
}

/** Force reduction of a quantized film relative to the isotropic bulk Drude
    model with the same relaxation frequency. gamma = 0 is the plasma case.
 */
inline ReductionResult delta_D(const Material& material, ModelKind model, double thickness,
                               double ell, double gamma,
                               ForceOptions opt = {reduction_rel_tol},
                               OmegaScaling scaling = OmegaScaling::SquareRoot) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("delta_D: gamma must be >= 0");
  const auto bulk = derive_bulk(material);
  auto tensor = std::make_shared<const DielectricTensor>(
      make_film_state(material, model, thickness), bulk, scaling, gamma);
  return force_reduction(quantized_slab(tensor), bulk_reference_slab(bulk, gamma, thickness), ell,
                         opt);
}

/// Force reduction relative to the isotropic bulk plasma model.
inline ReductionResult delta_P(const Material& material, ModelKind model, double thickness,
                               double ell, ForceOptions opt = {reduction_rel_tol},
                               OmegaScaling scaling = OmegaScaling::SquareRoot) {
  const auto bulk = derive_bulk(material);
  auto tensor = std::make_shared<const DielectricTensor>(
      make_film_state(material, model, thickness), bulk, scaling);
  return force_reduction(quantized_slab(tensor), bulk_reference_slab(bulk, 0.0, thickness), ell,
                         opt);
}

} // namespace casimir_qse
