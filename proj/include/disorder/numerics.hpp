// Small numerical utilities shared across the library.
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace disorder {

/// Scaled complementary error function exp(x^2) * erfc(x) for x >= 0.
///
/// Direct evaluation is exact up to the point where exp(x^2) would lose
/// accuracy; beyond that the standard asymptotic series is used (relative
/// error < 1e-13 at the switch point).
double erfcx(double x);

/// log(exp(a) + exp(b)) without intermediate overflow. Accepts -inf.
double log_sum_exp(double a, double b);

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

/// Sum with pairwise (cascade) splitting. Deterministic for a fixed input
/// order and independent of any threading used to fill the buffer.
double pairwise_sum(std::span<const double> values);

/// SplitMix64 finalizer; used to derive per-path RNG seeds from
/// (master seed, path index).
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace disorder
