#pragma once

#include <string>

#include "wavode/rational.hpp"

namespace wavode {

// Exponent e with 10^e <= |q| < 10^(e+1); q must be nonzero.
long floor_log10_abs(const BigRational& q);

// Directed rational bounds on sqrt(q), q >= 0, sharp to about `digits`
// decimal digits. sqrt_lower never overshoots, sqrt_upper never undershoots.
BigRational sqrt_lower(const BigRational& q, long digits);
BigRational sqrt_upper(const BigRational& q, long digits);

// floor(pi * 10^digits), accurate to +/-1 in the last place.
BigInt pi_scaled(long digits);

// Renders x*sqrt(sqrt_factor) with `digits` significant decimal digits
// (round to nearest). sqrt_factor >= 0. Deterministic.
std::string decimal_render(const BigRational& x, const BigRational& sqrt_factor, int digits);

// Renders x (>= 0) with `digits` significant decimal digits, rounding up.
std::string decimal_render_up(const BigRational& x, int digits);

// Plain fixed-point rendering with `places` digits after the point,
// round half away from zero.
std::string fixed_decimal(const BigRational& x, int places);

// Fixed-point rendering of x / sqrt(pi) with `places` digits after the
// point. Used when a coefficient vector carries the raw normalization.
std::string fixed_decimal_over_sqrt_pi(const BigRational& x, int places);

}  // namespace wavode
