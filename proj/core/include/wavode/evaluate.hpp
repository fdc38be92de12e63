#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "wavode/forms.hpp"

namespace wavode {

// A coefficient vector interpreted as a function. Under the raw tag the
// stored coefficients sit over the orthonormal basis, so point values carry
// a symbolic 1/sqrt(pi) that is only applied at decimal rendering. Under
// the paper tag the normalization has absorbed the factor and point values
// are exact rationals.
enum class Normalization { raw, paper };

struct EvaluatedSolution {
    CoeffVector coeffs;
    long k0 = 0;
    Normalization normalization = Normalization::raw;
};

// Exact value of sum_n f_n psi_{k0, ddn(n)} at x. For a raw-tagged solution
// this is sqrt(pi) times the function value.
GaussianRational eval_at(const EvaluatedSolution& sol, const BigRational& x);

// Exact quotient of two point values; the symbolic factor cancels.
GaussianRational ratio_points(const EvaluatedSolution& sol, const BigRational& x0,
                              const BigRational& x1);

GaussianRational ratio_coeffs(const EvaluatedSolution& sol, long n, long m);

// Rescales so that the two coefficients paired by the basis symmetry sum
// to the normalizing constant; the result carries the paper tag and its
// point values are exact rationals at rational points.
EvaluatedSolution normalize_paper(const EvaluatedSolution& sol);

// Per-component count of matching decimal digits against a reference,
// with the half-ulp rule; nullopt marks an exactly equal component.
struct SignificantDigits {
    std::optional<long> re;
    std::optional<long> im;
};
SignificantDigits significant_digits(const GaussianRational& a, const GaussianRational& ref);
std::optional<long> significant_digits_real(const BigRational& a, const BigRational& ref);

// CSV rows "x,re,im" over the grid, fixed-point with `digits` places.
void emit_plot_data(const EvaluatedSolution& sol, const std::vector<BigRational>& grid,
                    int digits, std::ostream& os);

}  // namespace wavode
