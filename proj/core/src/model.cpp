#include "bohmslit/model.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bohmslit/errors.hpp"

namespace bohmslit {

std::string_view to_string(ExchangeSign sign) {
  return sign == ExchangeSign::boson ? "boson" : "fermion";
}

ExchangeSign exchange_sign_from_string(std::string_view name) {
  if (name == "boson") return ExchangeSign::boson;
  if (name == "fermion") return ExchangeSign::fermion;
  throw ValidationError("exchange_sign",
                        "expected \"boson\" or \"fermion\", got \"" + std::string(name) + "\"");
}

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ValidationError(field, what);
}

}  // namespace

void PhysicalConfig::validate() const {
  require(std::isfinite(hbar) && hbar > 0, "hbar", "must be finite and > 0");
  require(std::isfinite(mass) && mass > 0, "mass", "must be finite and > 0");
  require(std::isfinite(sigma0) && sigma0 > 0, "sigma0", "must be finite and > 0");
  // Y == 0 is the overlapping-slit degenerate case and is allowed.
  require(std::isfinite(Y) && Y >= 0, "Y", "must be finite and >= 0");
  require(std::isfinite(d), "d", "must be finite");
  require(std::isfinite(D) && D > 0, "D", "must be finite and > 0");
  require(std::isfinite(kx) && kx > 0, "kx", "must be finite and > 0");
  require(std::isfinite(ky), "ky", "must be finite");
  require(std::isfinite(deltaQ) && deltaQ > 0, "deltaQ", "must be finite and > 0");
}

ComplexWidth sigma_t(const PhysicalConfig& cfg, double t) {
  if (t < 0) throw std::invalid_argument("sigma_t: t must be >= 0");
  const double spread = cfg.hbar * t / (2.0 * cfg.mass * cfg.sigma0 * cfg.sigma0);
  return ComplexWidth{cfg.sigma0 * cplx(1.0, spread)};
}

double detection_time(const PhysicalConfig& cfg) {
  return cfg.mass * cfg.D / (cfg.hbar * cfg.kx);
}

double packet_center(const PhysicalConfig& cfg, Slit slit, double t) {
  return slit_sign(slit) * (cfg.Y + cfg.hbar * cfg.ky * t / cfg.mass);
}

PacketSlice::PacketSlice(const PhysicalConfig& cfg, double t)
    : t_(t),
      Y_(cfg.Y),
      ky_(cfg.ky),
      drift_(cfg.hbar * cfg.ky * t / cfg.mass),
      phase_drift_(cfg.hbar * cfg.ky * t / (2.0 * cfg.mass)),
      width_(sigma_t(cfg, t)) {
  // Principal branch of (2 pi sigma_t^2)^(-1/4) never crosses its cut: arg
  // sigma_t lies in [0, pi/2).
  assert(width_.value.real() > 0);
  inv_four_s0st_ = 1.0 / (4.0 * cfg.sigma0 * width_.value);
  log_prefactor_ = -0.25 * std::log(2.0 * std::numbers::pi * width_.value * width_.value);
}

cplx PacketSlice::log_value(Slit slit, double y) const {
  const double sy = slit_sign(slit) * y;
  const double u = sy - Y_ - drift_;
  return log_prefactor_ - u * u * inv_four_s0st_ + cplx(0.0, ky_ * (sy - Y_ - phase_drift_));
}

cplx PacketSlice::log_grad(Slit slit, double y) const {
  const double s = slit_sign(slit);
  const double u = s * y - Y_ - drift_;
  // -u / (2 sigma0 sigma_t) == -2 u / (4 sigma0 sigma_t)
  return s * (-2.0 * u * inv_four_s0st_ + cplx(0.0, ky_));
}

cplx packet_value(const PhysicalConfig& cfg, Slit slit, double y, double t) {
  return PacketSlice(cfg, t).value(slit, y);
}

cplx packet_log_grad(const PhysicalConfig& cfg, Slit slit, double y, double t) {
  return PacketSlice(cfg, t).log_grad(slit, y);
}

double packet_overlap(const PhysicalConfig& cfg) {
  const double s2 = cfg.sigma0 * cfg.sigma0;
  return std::exp(-cfg.Y * cfg.Y / (2.0 * s2) - 2.0 * cfg.ky * cfg.ky * s2);
}

}  // namespace bohmslit
