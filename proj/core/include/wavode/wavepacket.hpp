#pragma once

#include <map>
#include <vector>

#include "wavode/rational.hpp"

namespace wavode {

// Parameters of the weighted solution space and its companion space.
// k0 is the weight exponent of the space the solutions live in, k0d the
// exponent of the space the operator maps into.
struct BasisSpec {
    long k0 = 0;
    long k0d = 0;
};

// Bilateral index of the n-th unilateral basis function at level k:
// floor(-(k+1)/2) + (-1)^(n+k+1) * floor((n+1)/2). Bijection Z+ -> Z.
long bilateral_index(long k, long n);

// Inverse of the bijection above.
long inverse_bilateral(long k, long ddn);

// The mirror enumeration -bilateral_index(k,n) - k - 1, walking the lattice
// from the other side of the symmetry center. The solver assembles its
// unilateral matrices and coefficient tables over this enumeration; it is
// the one the reference coefficient tables are written in. Rows enumerate
// at their own level.
long solver_bilateral(long k, long n);
long inverse_solver_bilateral(long k, long ddn);

// Exact value of the basis wavepacket  (x+i)^-(k+1) * ((x-i)/(x+i))^ddn
// at a rational point.
GaussianRational psi_eval(long k, long ddn, const BigRational& x);

// L2 inner product of two wavepackets at the same level, divided by pi:
// (1/4^k) * (-1)^(n-np) * (2k)! / ((k+n-np)! (k+np-n)!)  if |n-np| <= k,
// zero otherwise. Indices are bilateral.
BigRational l2_inner_psi(long k, long n, long np);

// Linear combinations of monomials (x+i)^a (x-i)^b with Gaussian-rational
// coefficients. Wavepackets embed as single monomials; the exact derivative
// is available, so basis identities can be checked symbolically.
class CayleyForm {
public:
    CayleyForm() = default;
    static CayleyForm psi(long k, long ddn);  // a = -(k+1)-ddn, b = ddn

    void add(long a, long b, const GaussianRational& coeff);
    CayleyForm derivative() const;
    CayleyForm& operator+=(const CayleyForm& o);
    CayleyForm& operator-=(const CayleyForm& o);
    void scale(const GaussianRational& s);
    bool operator==(const CayleyForm& o) const { return terms_ == o.terms_; }
    bool empty() const { return terms_.empty(); }

    GaussianRational eval(const BigRational& x) const;

private:
    std::map<std::pair<long, long>, GaussianRational> terms_;
    void prune(const std::pair<long, long>& key);
};

// Verifies at every sample point the level-lowering identity
//   psi_{k,n} = -(i/2)(psi_{k-1,n} - psi_{k-1,n+1})
// and the coordinate-multiplication identity
//   x psi_{k,n} = (1/2)(psi_{k-1,n} + psi_{k-1,n+1}),
// and verifies symbolically (exact monomial comparison) the derivative
// identity  d/dx psi_{k,n} = n psi_{k+1,n-1} - (n+k+1) psi_{k+1,n}.
bool check_recursion_identities(long k, long ddn, const std::vector<BigRational>& samples);

}  // namespace wavode
