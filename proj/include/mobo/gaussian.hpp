// gaussian.hpp - one-dimensional Gaussian moment integrals in closed form,
// with Dirac limits for vanishing standard deviation.
#pragma once

namespace mobo {

// Heaviside step, symmetric convention theta(0) = 1/2.
double heaviside(double t);

double normal_pdf(double y, double mu, double sigma);

// P(Y <= y) for Y ~ N(mu, sigma^2); sigma = 0 degenerates to heaviside(y - mu).
double normal_cdf(double y, double mu, double sigma);

// P(Y >= y); sigma = 0 degenerates to heaviside(mu - y).
double normal_sf(double y, double mu, double sigma);

// int_a^b (y - c) N(y | mu, sigma^2) dy. Requires a <= b, sigma >= 0.
// sigma = 0: (mu - c) * theta(b - mu) * theta(mu - a).
double gaussian_integral_i1(double a, double b, double c, double mu, double sigma);

// int_{-inf}^b (y - c) N(y | mu, sigma^2) dy. sigma = 0: (mu - c) * theta(b - mu).
double gaussian_integral_i2(double b, double c, double mu, double sigma);

// int_a^b N(y | mu, sigma^2) dy (probability mass). Requires a <= b.
// sigma = 0: theta(b - mu) * theta(mu - a).
double gaussian_integral_i3(double a, double b, double mu, double sigma);

}  // namespace mobo
