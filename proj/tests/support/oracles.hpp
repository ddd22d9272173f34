#pragma once

// Reference implementations used only by the tests. They evaluate the
// formulas the slow, direct way (no log domain, no cached constants, no
// separability) so they share no code path with the library.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using cplx = std::complex<double>;

struct Scenario {
  double hbar = 1.0;
  double mass = 1.0;
  double sigma0 = 1.0;
  double Y = 5.0;
  double D = 50.0;
  double kx = 5.0;
  double ky = 0.0;
};

inline double detection_time(const Scenario& s) { return s.mass * s.D / (s.hbar * s.kx); }

inline cplx width(const Scenario& s, double t) {
  return s.sigma0 * cplx(1.0, s.hbar * t / (2.0 * s.mass * s.sigma0 * s.sigma0));
}

// sign = +1 for the packet from +Y, -1 for the one from -Y.
inline cplx packet(const Scenario& s, double sign, double y, double t) {
  const cplx st = width(s, t);
  const double u = sign * y - s.Y - s.hbar * s.ky * t / s.mass;
  const cplx pre = std::pow(2.0 * std::numbers::pi * st * st, -0.25);
  const cplx gauss = std::exp(-u * u / (4.0 * s.sigma0 * st));
  const cplx wave = std::exp(cplx(0.0, s.ky * (sign * y - s.Y - s.hbar * s.ky * t / (2.0 * s.mass))));
  return pre * gauss * wave;
}

inline double overlap(const Scenario& s) {
  return std::exp(-s.Y * s.Y / (2.0 * s.sigma0 * s.sigma0) - 2.0 * s.ky * s.ky * s.sigma0 * s.sigma0);
}

inline double norm_constant(const Scenario& s) {
  const double ov = overlap(s);
  return 1.0 / std::sqrt(2.0 * (1.0 + ov * ov));
}

inline cplx psi(const Scenario& s, double y1, double y2, double t) {
  return norm_constant(s) *
         (packet(s, 1, y1, t) * packet(s, -1, y2, t) + packet(s, -1, y1, t) * packet(s, 1, y2, t));
}

inline double density(const Scenario& s, double y1, double y2, double t) {
  return std::norm(psi(s, y1, y2, t));
}

// Fourth-order central difference of a complex function of one variable.
inline cplx derivative(const std::function<cplx(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

// (hbar/m) Im(d psi / psi) by finite differences of the direct wavefunction.
inline std::pair<double, double> velocity(const Scenario& s, double y1, double y2, double t) {
  const double h = 1e-4 * s.sigma0;
  const cplx p = psi(s, y1, y2, t);
  const cplx d1 = derivative([&](double a) { return psi(s, a, y2, t); }, y1, h);
  const cplx d2 = derivative([&](double b) { return psi(s, y1, b, t); }, y2, h);
  return {s.hbar / s.mass * (d1 / p).imag(), s.hbar / s.mass * (d2 / p).imag()};
}

// Composite Simpson rule with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

template <class F>
double simpson2d(F&& f, double a1, double b1, double a2, double b2, int n) {
  return simpson([&](double x) { return simpson([&](double y) { return f(x, y); }, a2, b2, n); },
                 a1, b1, n);
}

// P(a <= Y < b) for a normal variable.
inline double normal_interval(double mean, double sd, double a, double b) {
  return 0.5 * (std::erf((b - mean) / (sd * std::numbers::sqrt2)) -
                std::erf((a - mean) / (sd * std::numbers::sqrt2)));
}

inline double com_law(const Scenario& s, double com0, double t) {
  const double tau = s.hbar * t / (2.0 * s.mass * s.sigma0 * s.sigma0);
  return com0 * std::sqrt(1.0 + tau * tau);
}

}  // namespace oracle
