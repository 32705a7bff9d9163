#pragma once

/** @file quadrature.hpp
    @brief Globally adaptive Gauss-Kronrod (7/15) integration on finite intervals
           and a bracketed scalar root finder.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace casimir_qse {

/// Thrown when an iterative numerical procedure exhausts its budget.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double partial_value, double partial_error)
      : std::runtime_error(what), partial_value_(partial_value), partial_error_(partial_error) {}

  double partial_value() const { return partial_value_; }
  double partial_error() const { return partial_error_; }

private:
  double partial_value_;
  double partial_error_;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  std::size_t max_intervals = 2000;
  std::size_t initial_intervals = 4;
};

namespace detail {

// Kronrod abscissae on [0, 1]; odd indices are the embedded Gauss points.
inline constexpr std::array<double, 8> kronrod15_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

inline constexpr std::array<double, 8> kronrod15_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss7_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel kronrod15(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kronrod15_weights[7];
  double gauss = fc * gauss7_weights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kronrod15_nodes[j];
    const double sum = f(centre - dx) + f(centre + dx);
    kronrod += kronrod15_weights[j] * sum;
    if (j % 2 == 1) gauss += gauss7_weights[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

} // namespace detail

/** Integrates f over [a, b], bisecting the panel with the largest error estimate
    until the summed estimate satisfies max(abs_tol, rel_tol |I|). Never evaluates
    f at the endpoints. Returns with converged = false when the panel budget runs out.
 */
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  QuadratureResult r;
  std::priority_queue<detail::Panel> panels;
  const std::size_t n0 = opt.initial_intervals == 0 ? 1 : opt.initial_intervals;
  double value = 0.0, error = 0.0;
  for (std::size_t i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * static_cast<double>(i) / static_cast<double>(n0);
    const double hi = (i + 1 == n0) ? b : a + (b - a) * static_cast<double>(i + 1) / n0;
    auto p = detail::kronrod15(f, lo, hi);
    value += p.value;
    error += p.error;
    panels.push(p);
  }
  r.evaluations = 15 * n0;

  auto satisfied = [&] { return error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value)); };
  while (!satisfied() && panels.size() < opt.max_intervals) {
    auto worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) { // interval exhausted at machine resolution
      panels.push(worst);
      break;
    }
    auto left = detail::kronrod15(f, worst.a, mid);
    auto right = detail::kronrod15(f, mid, worst.b);
    r.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  r.value = value;
  r.abs_error = error;
  r.converged = satisfied();
  return r;
}

namespace detail {

template <class F, class DF>
double find_root_impl(F& f, DF& df, double lo, double hi, double abs_tol, bool polish) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::domain_error("find_root: interval does not bracket a sign change");
  for (int it = 0; it < 400 && hi - lo > abs_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (polish && hi - lo < 1e3 * abs_tol) break;
  }
  double x = 0.5 * (lo + hi);
  if (!polish) return x;
  // Newton polish, kept inside the bracket.
  for (int it = 0; it < 8; ++it) {
    const double fx = f(x);
    const double d = df(x);
    if (fx == 0.0 || d == 0.0 || !std::isfinite(d)) break;
    const double next = x - fx / d;
    if (!(next > lo && next < hi)) break;
    if (std::abs(next - x) <= 0.5 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

} // namespace detail

/** Root of a continuous function with a sign change on [lo, hi]: bisection to a
    narrow bracket, then safeguarded Newton steps when a derivative is supplied.
 */
template <class F, class DF>
double find_root(F&& f, DF&& df, double lo, double hi, double abs_tol) {
  return detail::find_root_impl(f, df, lo, hi, abs_tol, true);
}

/// Plain bisection down to abs_tol.
template <class F>
double find_root(F&& f, double lo, double hi, double abs_tol) {
  auto none = [](double) { return 0.0; };
  return detail::find_root_impl(f, none, lo, hi, abs_tol, false);
}

} // namespace casimir_qse
