#include "mobo/gaussian.hpp"

#include "mobo/types.hpp"

#include <cmath>
#include <limits>

namespace mobo {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2*pi)
constexpr double kInvSqrt2 = 0.7071067811865475244;    // 1/sqrt(2)
}  // namespace

double heaviside(double t) {
  if (t > 0.0) return 1.0;
  if (t < 0.0) return 0.0;
  return 0.5;
}

double normal_pdf(double y, double mu, double sigma) {
  require(sigma >= 0.0, "normal_pdf: sigma >= 0 required");
  if (sigma == 0.0) return (y == mu) ? std::numeric_limits<double>::infinity() : 0.0;
  const double z = (y - mu) / sigma;
  return kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z);
}

double normal_cdf(double y, double mu, double sigma) {
  require(sigma >= 0.0, "normal_cdf: sigma >= 0 required");
  if (sigma == 0.0) return heaviside(y - mu);
  return 0.5 * (1.0 + std::erf((y - mu) * kInvSqrt2 / sigma));
}

double normal_sf(double y, double mu, double sigma) {
  require(sigma >= 0.0, "normal_sf: sigma >= 0 required");
  if (sigma == 0.0) return heaviside(mu - y);
  return 0.5 * (1.0 - std::erf((y - mu) * kInvSqrt2 / sigma));
}

double gaussian_integral_i1(double a, double b, double c, double mu, double sigma) {
  require(a <= b, "gaussian_integral_i1: a <= b required");
  require(sigma >= 0.0, "gaussian_integral_i1: sigma >= 0 required");
  if (sigma == 0.0) return (mu - c) * heaviside(b - mu) * heaviside(mu - a);
  const double za = (a - mu) * kInvSqrt2 / sigma;
  const double zb = (b - mu) * kInvSqrt2 / sigma;
  return 0.5 * (mu - c) * (std::erf(zb) - std::erf(za)) +
         sigma * kInvSqrt2Pi * (std::exp(-za * za) - std::exp(-zb * zb));
}

double gaussian_integral_i2(double b, double c, double mu, double sigma) {
  require(sigma >= 0.0, "gaussian_integral_i2: sigma >= 0 required");
  if (sigma == 0.0) return (mu - c) * heaviside(b - mu);
  const double zb = (b - mu) * kInvSqrt2 / sigma;
  return 0.5 * (mu - c) * (std::erf(zb) + 1.0) - sigma * kInvSqrt2Pi * std::exp(-zb * zb);
}

double gaussian_integral_i3(double a, double b, double mu, double sigma) {
  require(a <= b, "gaussian_integral_i3: a <= b required");
  require(sigma >= 0.0, "gaussian_integral_i3: sigma >= 0 required");
  if (sigma == 0.0) return heaviside(b - mu) * heaviside(mu - a);
  const double za = (a - mu) * kInvSqrt2 / sigma;
  const double zb = (b - mu) * kInvSqrt2 / sigma;
  return 0.5 * (std::erf(zb) - std::erf(za));
}

}  // namespace mobo
