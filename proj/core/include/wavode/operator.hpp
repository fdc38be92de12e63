#pragma once

#include <vector>

#include "wavode/rational.hpp"
#include "wavode/wavepacket.hpp"

namespace wavode {

// Differential operator sum_m q_m(x) (d/dx)^m with polynomial coefficients,
// together with the space parameters it acts between. polys[m][j] is the
// coefficient of x^j in q_m.
struct ODEOperator {
    int M = 0;
    std::vector<std::vector<GaussianRational>> polys;
    BasisSpec basis;

    GaussianRational eval_poly(int m, const GaussianRational& z) const;
    // Largest deg q_m - m over nonzero polynomials; INT_MIN-ish when all zero.
    long max_degree_gap() const;
};

// Throws SingularAtI when the leading polynomial vanishes at +i or -i,
// SpaceMismatch when k0d exceeds k0 - max(deg q_m - m) or k0 < 0.
void validate_operator(const ODEOperator& op);

// Finite coefficient table from which every matrix element of the operator
// is generated: entry(r, s) with r in [-M, M+k0-k0d], s in [0, M].
class BetaTable {
public:
    BetaTable(int M, long k0, long k0d);

    GaussianRational& entry(long r, int s);
    const GaussianRational& entry(long r, int s) const;
    bool in_band(long r) const { return r >= -M_ && r <= r_max_; }

    int order() const { return M_; }
    long k0() const { return k0_; }
    long k0d() const { return k0d_; }
    long ell0() const { return 2L * M_ + k0_ - k0d_; }
    long j0() const { return k0d_ > 0 ? k0d_ : 0; }
    long p0() const { return j0() + ell0() - 1; }

    // Matrix element b_m^n in the unilateral indexing; zero outside the band.
    GaussianRational matrix_element(long m, long n) const;

    BetaTable& operator+=(const BetaTable& o);
    bool operator==(const BetaTable& o) const = default;

private:
    int M_;
    long k0_, k0d_, r_max_;
    std::vector<GaussianRational> entries_;  // (r_max - (-M) + 1) x (M+1), row-major
};

// Compiles the operator into its beta table by iterating the derivative,
// coordinate-multiplication and level-lowering expansions over each
// monomial q_{m,j} x^j (d/dx)^m.
BetaTable compute_beta(const ODEOperator& op);

}  // namespace wavode
