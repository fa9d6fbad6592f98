#include "doctest.h"

#include "mobo/gaussian.hpp"
#include "mobo/types.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace {

// Adaptive Simpson quadrature, independent of the erf closed forms.
double simpson(double a, double b,
               double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double quadrature(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-13) {
  if (a >= b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 48);
}

// Integrate in standardized coordinates z = (y - mu) / sigma so narrow
// kernels keep full floating-point resolution, with breakpoints that keep
// the adaptive rule sampling inside the hump.
double quad_standardized(const std::function<double(double)>& g, double a, double b,
                         double mu, double sigma) {
  const double za = std::max((a - mu) / sigma, -60.0);
  const double zb = std::min((b - mu) / sigma, 60.0);
  if (za >= zb) return 0.0;
  std::vector<double> cuts = {za};
  for (double k : {-8.0, -2.0, 0.0, 2.0, 8.0})
    if (k > za && k < zb) cuts.push_back(k);
  cuts.push_back(zb);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += quadrature(g, cuts[i], cuts[i + 1]);
  return total;
}

double quad_moment(double a, double b, double c, double mu, double sigma) {
  constexpr double inv_sqrt_2pi = 0.3989422804014326779;
  return quad_standardized(
      [&](double z) {
        return (mu - c + sigma * z) * inv_sqrt_2pi * std::exp(-0.5 * z * z);
      },
      a, b, mu, sigma);
}

double quad_mass(double a, double b, double mu, double sigma) {
  constexpr double inv_sqrt_2pi = 0.3989422804014326779;
  return quad_standardized(
      [&](double z) { return inv_sqrt_2pi * std::exp(-0.5 * z * z); }, a, b, mu, sigma);
}

}  // namespace

TEST_CASE("i1 full first moment and dirac limit") {
  CHECK(mobo::gaussian_integral_i1(1 - 50, 1 + 50, 0.0, 1.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mobo::gaussian_integral_i1(0.0, 2.0, 0.5, 1.0, 0.0) == doctest::Approx(0.5));
  CHECK(std::abs(mobo::gaussian_integral_i1(0.0, 1.0, 0.0, 0.3, 0.7) -
                 quad_moment(0, 1, 0, 0.3, 0.7)) <= 1e-10);
  CHECK_THROWS_AS((void)mobo::gaussian_integral_i1(1.0, 0.0, 0.0, 0.0, 1.0),
                  mobo::ContractViolation);
}

TEST_CASE("i2 half-open variant") {
  CHECK(mobo::gaussian_integral_i2(1 + 50, 0.0, 1.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mobo::gaussian_integral_i2(0.0, 0.0, 1.0, 0.0) == 0.0);
  // Quadrature from far below stands in for the infinite lower bound.
  const double expected =
      quadrature([&](double y) { return (y + 1.0) * mobo::normal_pdf(y, 0.0, 1.0); },
                 -40.0, 0.4);
  CHECK(std::abs(mobo::gaussian_integral_i2(0.4, -1.0, 0.0, 1.0) - expected) <= 1e-10);
}

TEST_CASE("i3 probability mass") {
  CHECK(mobo::gaussian_integral_i3(1 - 50, 1 + 50, 1.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mobo::gaussian_integral_i3(0.0, 2.0, 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(std::abs(mobo::gaussian_integral_i3(-1.0, 0.5, 0.0, 2.0) -
                 quad_mass(-1, 0.5, 0.0, 2.0)) <= 1e-10);
  CHECK_THROWS_AS((void)mobo::gaussian_integral_i3(1.0, 0.0, 0.0, 1.0),
                  mobo::ContractViolation);
}

TEST_CASE("dirac limits at interval boundaries use the symmetric step") {
  // The sigma -> 0 limit of the erf forms puts half of the mass on a
  // boundary atom; the dirac branch must agree.
  CHECK(mobo::gaussian_integral_i3(0.0, 2.0, 0.0, 0.0) == doctest::Approx(0.5));
  CHECK(mobo::gaussian_integral_i3(0.0, 2.0, 2.0, 0.0) == doctest::Approx(0.5));
  CHECK(mobo::gaussian_integral_i2(1.0, 0.0, 1.0, 0.0) == doctest::Approx(0.5));
  const double tiny = 1e-13;
  CHECK(mobo::gaussian_integral_i3(0.0, 2.0, 0.0, tiny) == doctest::Approx(0.5));
}

TEST_CASE("closed forms match quadrature on random tuples") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> coord(-3.0, 3.0), width(0.05, 3.0),
      sig(0.05, 2.0);
  for (int t = 0; t < 200; ++t) {
    const double a = coord(rng);
    const double b = a + width(rng);
    const double c = coord(rng);
    const double mu = coord(rng);
    const double sigma = (t % 5 == 0) ? 1e-12 : sig(rng);

    const double i1 = mobo::gaussian_integral_i1(a, b, c, mu, sigma);
    CHECK(std::abs(i1 - quad_moment(a, b, c, mu, sigma)) <= 1e-10);

    const double i3 = mobo::gaussian_integral_i3(a, b, mu, sigma);
    CHECK(std::abs(i3 - quad_mass(a, b, mu, sigma)) <= 1e-10);

    const double lo = std::min(a, mu - 60.0 * std::max(sigma, 1e-6)) - 1.0;
    const double i2 = mobo::gaussian_integral_i2(b, c, mu, sigma);
    CHECK(std::abs(i2 - quad_moment(lo, b, c, mu, sigma)) <= 1e-10);
  }
}

TEST_CASE("cdf and survival are complementary") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int t = 0; t < 100; ++t) {
    const double y = u(rng), mu = u(rng);
    CHECK(mobo::normal_cdf(y, mu, 1.3) + mobo::normal_sf(y, mu, 1.3) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(mobo::normal_cdf(0.0, 1.0, 0.0) == 0.0);
  CHECK(mobo::normal_cdf(1.0, 1.0, 0.0) == 0.5);
  CHECK(mobo::normal_sf(0.0, 1.0, 0.0) == 1.0);
}
