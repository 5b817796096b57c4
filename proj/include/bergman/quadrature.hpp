#pragma once
// Adaptive Gauss-Kronrod (7/15) integration with bisection of the panel
// carrying the largest error estimate. The reported error is the sum over
// panels of |K15 - G7|, which bounds the G7 error and in practice overstates
// the K15 error by several orders of magnitude.

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "bergman/errors.hpp"

namespace bergman {

template <class Scalar = double>
struct QuadratureConfig {
  Scalar rel_tol = Scalar(1e-12);
  int max_subdivisions = 60;
  Scalar abs_tol = Scalar(0); // floor for integrals that are small by design

  void validate() const {
    if (!(rel_tol > Scalar(0)) || rel_tol > Scalar(1e-4))
      throw DomainError("rel_tol must lie in (0, 1e-4]");
    if (max_subdivisions < 1)
      throw DomainError("max_subdivisions must be positive");
    if (!(abs_tol >= Scalar(0))) throw DomainError("abs_tol must be nonnegative");
  }
};

template <class Scalar = double>
struct QuadratureResult {
  Scalar value = 0;
  Scalar abs_err = 0;
  int subdivisions = 0;
};

namespace detail {

// QUADPACK qk15 abscissae and weights.
inline constexpr std::array<long double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
inline constexpr std::array<long double, 8> kronrod_weights = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<long double, 4> gauss_weights = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <class Scalar>
struct Panel {
  Scalar a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class Scalar, class F>
Panel<Scalar> kronrod15(F& f, Scalar a, Scalar b) {
  const Scalar center = (a + b) / 2;
  const Scalar half = (b - a) / 2;
  const Scalar fc = f(center);
  Scalar kronrod = fc * Scalar(kronrod_weights[7]);
  Scalar gauss = fc * Scalar(gauss_weights[3]);
  for (std::size_t j = 0; j < 7; ++j) {
    const Scalar dx = half * Scalar(kronrod_nodes[j]);
    const Scalar sum = f(center - dx) + f(center + dx);
    kronrod += Scalar(kronrod_weights[j]) * sum;
    if (j % 2 == 1) gauss += Scalar(gauss_weights[j / 2]) * sum;
  }
  kronrod *= half;
  gauss *= half;
  using std::abs;
  return {a, b, kronrod, abs(kronrod - gauss)};
}

} // namespace detail

// Integrates f over the finite interval [a, b]. The interval is first cut
// into `initial_panels` equal pieces; thereafter the worst panel is bisected
// until the summed error is within max(rel_tol |value|, abs_tol) or the subdivision
// budget is spent (QuadratureFailure carries the best estimate).
template <class Scalar, class F>
QuadratureResult<Scalar> integrate_adaptive(F&& f, Scalar a, Scalar b,
                                            const QuadratureConfig<Scalar>& cfg,
                                            int initial_panels = 8) {
  cfg.validate();
  std::priority_queue<detail::Panel<Scalar>> panels;
  Scalar total = 0, err = 0;
  const Scalar width = (b - a) / Scalar(initial_panels);
  for (int i = 0; i < initial_panels; ++i) {
    const Scalar lo = a + width * Scalar(i);
    const Scalar hi = (i + 1 == initial_panels) ? b : a + width * Scalar(i + 1);
    auto p = detail::kronrod15(f, lo, hi);
    total += p.value;
    err += p.err;
    panels.push(p);
  }

  using std::abs;
  int subdivisions = 0;
  while (err > cfg.rel_tol * abs(total) && err > cfg.abs_tol) {
    if (subdivisions >= cfg.max_subdivisions)
      throw QuadratureFailure("adaptive quadrature did not converge",
                              static_cast<double>(total), static_cast<double>(err));
    auto worst = panels.top();
    panels.pop();
    const Scalar mid = (worst.a + worst.b) / 2;
    auto left = detail::kronrod15(f, worst.a, mid);
    auto right = detail::kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }

  // Re-sum to shed the drift accumulated by the running updates.
  total = 0;
  err = 0;
  while (!panels.empty()) {
    total += panels.top().value;
    err += panels.top().err;
    panels.pop();
  }
  return {total, err, subdivisions};
}

} // namespace bergman
