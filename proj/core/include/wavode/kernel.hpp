#pragma once

#include <vector>

#include "wavode/forms.hpp"
#include "wavode/operator.hpp"

namespace wavode {

// Basis of the solution space of the truncated band system. Vectors are
// dense and index-aligned with the unilateral basis.
struct KernelBasis {
    std::vector<CoeffVector> vectors;
    long D = 0;
    long p0 = 0;  // effective head length - 1 (may be the one-larger variant)
    long ell0 = 0;
    long j0 = 0;
};

// Solves the head system { f : sum_n b_m^n f_n = 0 for every complete row m }
// on indices 0..p0 by exact Gaussian elimination. Pivots are chosen by
// smallest combined numerator/denominator bit length to curb growth.
// p0_shift = 1 selects the one-larger head convention; the dimension found
// is the same either way.
KernelBasis initial_basis(const BetaTable& beta, int p0_shift = 0);

// Extends every vector to length N+1 with the band recursion
//   F_n = -(1/b_{n-ell0}^n) * sum_{r=max(0,n-2 ell0)}^{n-1} b_{n-ell0}^r F_r.
// Entries of each vector share nested denominators; the extension works on
// integer numerators over a running denominator chain and canonicalizes at
// the end. Throws PivotZero when a recursion pivot vanishes.
KernelBasis extend_recursion(const KernelBasis& basis, const BetaTable& beta, long N);

// Smallest positive C with C*v integer-valued (lcm of all component
// denominators); returns C*v.
CoeffVector integerize(const CoeffVector& v);

// Exact rank over the Gaussian rationals.
long rank_of(std::vector<CoeffVector> rows);

}  // namespace wavode
