#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <string>
#include <vector>

#include "bohmslit/errors.hpp"

namespace bohmslit {

struct QuadratureOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  int max_intervals = 4000;
  // Uniform pre-split of [a, b] before adaptive refinement starts.
  int initial_pieces = 1;
};

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0;
  int evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T, class F>
Segment<T> gauss_kronrod_15(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(centre);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T sum = f(centre - dx) + f(centre + dx);
    kronrod += sum * kKronrodWeights[j];
    if (j % 2 == 1) gauss += sum * kGaussWeights[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, magnitude(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// T is the integrand's value type (double or std::complex<double>). The
/// segment with the largest error estimate is bisected until the summed
/// estimate is below max(abs_tol, rel_tol |I|). Throws QuadratureFailure if
/// the interval budget runs out first.
template <class T, class F>
QuadratureResult<T> integrate_adaptive(F&& f, double a, double b,
                                       const QuadratureOptions& opt = {}) {
  QuadratureResult<T> out;
  if (!(b > a)) return out;

  std::priority_queue<detail::Segment<T>> heap;
  const int pieces = std::max(1, opt.initial_pieces);
  const double width = (b - a) / pieces;
  T total{};
  double total_err = 0;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == pieces) ? b : a + (i + 1) * width;
    auto seg = detail::gauss_kronrod_15<T>(f, lo, hi);
    total += seg.value;
    total_err += seg.error;
    heap.push(seg);
  }
  int evaluations = 15 * pieces;

  while (total_err > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total))) {
    if (static_cast<int>(heap.size()) >= opt.max_intervals) {
      throw QuadratureFailure("adaptive quadrature: tolerance not met within " +
                              std::to_string(opt.max_intervals) +
                              " intervals (error estimate " + std::to_string(total_err) + ")");
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureFailure("adaptive quadrature: interval collapsed to machine resolution");
    }
    auto left = detail::gauss_kronrod_15<T>(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15<T>(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the segments to drop the cancellation noise accumulated by
  // the running update.
  T resummed{};
  double err = 0;
  while (!heap.empty()) {
    resummed += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = resummed;
  out.error = err;
  out.evaluations = evaluations;
  return out;
}

}  // namespace bohmslit
