#pragma once

#include <complex>
#include <string_view>

namespace bohmslit {

using cplx = std::complex<double>;

enum class ExchangeSign { boson, fermion };

std::string_view to_string(ExchangeSign sign);
ExchangeSign exchange_sign_from_string(std::string_view name);

/// Geometry and physical constants of the two-double-slit setup.
///
/// Slits sit at (+-d, +-Y) with Gaussian half-width sigma0; detectors are a
/// distance D beyond the slits. Defaults are natural units (hbar = m = 1)
/// and a demonstration scenario, not measured values.
struct PhysicalConfig {
  double hbar = 1.0;
  double mass = 1.0;
  double sigma0 = 1.0;
  double Y = 5.0;
  double d = 10.0;
  double D = 50.0;
  double kx = 5.0;
  double ky = 0.0;
  double deltaQ = 0.5;
  // Recorded and echoed in reports; no detected-sector quantity depends on it.
  ExchangeSign exchange_sign = ExchangeSign::boson;

  /// Throws ValidationError naming the first offending field.
  void validate() const;

  bool operator==(const PhysicalConfig&) const = default;
};

/// The complex packet width sigma_t = sigma0 (1 + i hbar t / (2 m sigma0^2)).
struct ComplexWidth {
  cplx value;

  double modulus() const { return std::abs(value); }
};

/// A is the slit at +Y, B the one at -Y. The primed slits on the left screen
/// share the same transverse profile.
enum class Slit { A, B };

constexpr double slit_sign(Slit s) { return s == Slit::A ? 1.0 : -1.0; }

ComplexWidth sigma_t(const PhysicalConfig& cfg, double t);

/// Fixed detection time m D / (hbar kx): the longitudinal motion is ballistic.
double detection_time(const PhysicalConfig& cfg);

/// Transverse centre of the packet from `slit` at time t.
double packet_center(const PhysicalConfig& cfg, Slit slit, double t);

/// Time-frozen packet evaluator. Holds every t-dependent constant so the
/// per-point cost is a complex quadratic and (for values) one exp.
class PacketSlice {
 public:
  PacketSlice(const PhysicalConfig& cfg, double t);

  /// Natural log of the transverse packet amplitude (principal branch).
  cplx log_value(Slit slit, double y) const;
  cplx value(Slit slit, double y) const { return std::exp(log_value(slit, y)); }
  /// d/dy ln f_slit(y, t).
  cplx log_grad(Slit slit, double y) const;

  double time() const { return t_; }
  const ComplexWidth& width() const { return width_; }

 private:
  double t_;
  double Y_;
  double ky_;
  double drift_;         // hbar ky t / m
  double phase_drift_;   // hbar ky t / (2 m)
  ComplexWidth width_;
  cplx inv_four_s0st_;   // 1 / (4 sigma0 sigma_t)
  cplx log_prefactor_;   // -1/4 ln(2 pi sigma_t^2)
};

cplx packet_value(const PhysicalConfig& cfg, Slit slit, double y, double t);
cplx packet_log_grad(const PhysicalConfig& cfg, Slit slit, double y, double t);

/// <f_A | f_B>, which is real and time independent:
/// exp(-Y^2 / (2 sigma0^2) - 2 ky^2 sigma0^2).
double packet_overlap(const PhysicalConfig& cfg);

}  // namespace bohmslit
