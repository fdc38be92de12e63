#pragma once

#include <optional>
#include <string>

#include "wavode/ortho.hpp"

namespace wavode {

// A-posteriori error-bound data: the certified bound is A + B * Delta_K
// where Delta_K is the caller's estimate of the worst normalized
// truncation tail of a true solution.
struct BoundReport {
    BigRational xi_sq;                        // certified upper bound on xi(g)^2
    BigRational C_sq_upper;                   // upper bound on C^2
    std::optional<BigRational> Gamma_sq_lower;  // lower bound on Gamma^2; empty = infinite
    std::string A;                            // outward-rounded decimal
    std::string B;
    BigRational A_exact;                      // the rationals the decimals came from
    BigRational B_exact;
    bool feasible = false;
    int digits = 50;
};

// Certified upper bound on xi(g)^2 for the given dimensions; exact when
// the nested radical degenerates (Dl2 = 1).
BigRational xi_of_g(long g, long D, long Dl2);

// Certified upper bound on the suboptimality constant c(g, h, Dl2).
BigRational c_factor(long g, long h, long Dl2);

struct BoundOptions {
    int digits = 50;
    bool verbatim_sums = false;  // use unsquared norm-ratio sums
    long sqrt_digits = 60;       // precision of the directed radical bounds
};

// Assembles the report from a solution set produced with compute_bound_data.
// Infeasibility (Gamma too small against xi*C) is reported, not thrown.
BoundReport bound_coeffs(const SolutionSet& sol, const OrthoParams& params,
                         const WeightSpec& spec, const BoundOptions& opts = {});

}  // namespace wavode
