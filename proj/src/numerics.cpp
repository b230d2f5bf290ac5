#include "disorder/numerics.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace disorder {

double erfcx(double x) {
  if (x < 26.0) {
    // exp(x^2) stays below overflow and erfc(x) is still a normal double.
    return std::exp(x * x) * std::erfc(x);
  }
  // Asymptotic series 1/(x sqrt(pi)) * (1 - u(1 - 3u(1 - 5u(1 - 7u(1 - 9u)))))
  // with u = 1/(2x^2); truncation error < 1e-13 for x >= 26.
  const double u = 0.5 / (x * x);
  const double series =
      1.0 - u * (1.0 - 3.0 * u * (1.0 - 5.0 * u * (1.0 - 7.0 * u * (1.0 - 9.0 * u))));
  return series / (x * std::sqrt(M_PI));
}

double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

namespace {

double simpson_panel(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(const std::function<double(double)>& f, double a,
                       double fa, double b, double fb, double m, double fm,
                       double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_panel(a, fa, m, fm, flm);
  const double right = simpson_panel(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (!(b > a)) throw std::invalid_argument("adaptive_simpson: need b > a");
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson_panel(a, fa, b, fb, fm);
  return simpson_recurse(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 32) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace disorder
