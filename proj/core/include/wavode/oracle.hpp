#pragma once

#include <map>

#include "wavode/operator.hpp"

namespace wavode {

// Brute-force matrix element: expands Q(x, d/dx) psi_{k0, ddn} term by term
// at the concrete integer bilateral index, walking the level ladder with the
// three basis identities, then reads off one coefficient at level k0d.
// Independent of the beta-table path: no polynomial-in-ddn bookkeeping.
GaussianRational oracle_matrix_element(const ODEOperator& op, long m, long n);

// Level-tagged finite expansion used by the oracle: bilateral index -> coeff.
struct SymbolicExpansion {
    long level = 0;
    std::map<long, GaussianRational> coeffs;

    void apply_derivative();  // psi_k -> level k+1
    void apply_multiply();    // x * psi_k -> level k-1
    void apply_lower();       // psi_k -> level k-1
};

// Normalized true solution of (9x^2-6x+5)f'' + (90x-30)f' + 126f = 0:
// (3x-1)/((3x-1)^2+4)^4.
BigRational oracle_true_solution_ex1(const BigRational& x);

// Associated Laguerre polynomial L_nu^mu at a rational point, by the
// explicit finite sum.
BigRational laguerre_polynomial(long nu, long mu, const BigRational& x);

// Operator u^2 g'' + u g' + (-c^4 u^4 + c^2(4 nu + 2 mu + 2) u^2 - mu^2) g = 0
// obtained from the weighted Laguerre equation by x = (c u)^2, for integer c.
ODEOperator laguerre_squared_operator(long nu, long mu, long c, long k0);

// The worked second-order example (9x^2-6x+5)f'' + (90x-30)f' + 126f = 0.
ODEOperator example_operator_1(long k0 = 2, long k0d = 2);

}  // namespace wavode
