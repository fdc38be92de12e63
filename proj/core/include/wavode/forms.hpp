#pragma once

#include <vector>

#include "wavode/rational.hpp"

namespace wavode {

using CoeffVector = std::vector<GaussianRational>;

// Weighted quadratic form parameters. Weights are 1 up to K, grow
// geometrically with the folded index between K and J, and sit on the
// plateau R = base^(mu_J - mu_K) from J on. An integer base stands in for
// the exponential growth rate; any nondecreasing weight >= 1 is admissible.
struct WeightSpec {
    long N = 0;
    long K = 0;
    long J = 0;
    BigInt base{100000000};  // 10^8
    long k0 = 0;
    bool mu_folded_up = true;  // false: |2n-(k0+1)| variant of the fold center

    static long default_K(long N, long k0) { return 2 * ((3 * N) / 8) + k0; }
    static long default_J(long N, long k0) { return 2 * ((7 * N) / 16) + k0; }
    void validate(long p0) const;
};

// Folded distance of the n-th basis index from the symmetry center,
// doubled to stay integral.
long mu_doubled(const WeightSpec& spec, long n);

BigRational weight(const WeightSpec& spec, long n);

GaussianRational inner_QN(const WeightSpec& spec, const CoeffVector& f, const CoeffVector& g);
GaussianRational inner_l2K(const WeightSpec& spec, const CoeffVector& f, const CoeffVector& g);

// Precomputed weight table; the solver-facing view of a WeightSpec.
class Forms {
public:
    explicit Forms(WeightSpec spec);

    const WeightSpec& spec() const { return spec_; }
    const BigInt& plateau() const { return weights_.back(); }
    const BigInt& weight_at(long n) const { return weights_[static_cast<size_t>(n)]; }

    GaussianRational inner_QN(const CoeffVector& f, const CoeffVector& g) const;
    GaussianRational inner_l2K(const CoeffVector& f, const CoeffVector& g) const;

private:
    WeightSpec spec_;
    std::vector<BigInt> weights_;  // w_0 .. w_N
};

// Working state of the quasi-orthogonalizer: integer change-of-basis rows c
// over some fixed initial vectors, plus the two Gram matrices maintained
// under row operations. p under the weighted form, q under the plain
// truncated form. Both Hermitian with real nonnegative diagonals.
struct GramPair {
    long D = 0;
    std::vector<std::vector<GaussianInteger>> c;
    std::vector<std::vector<GaussianRational>> p;
    std::vector<std::vector<GaussianRational>> q;

    static GramPair identity(long D);
    const BigRational& p_diag(long j) const { return p[size_t(j)][size_t(j)].re; }
    const BigRational& q_diag(long j) const { return q[size_t(j)][size_t(j)].re; }
};

GramPair gram_init(const Forms& forms, const std::vector<CoeffVector>& vectors);
GramPair gram_init(const WeightSpec& spec, const std::vector<CoeffVector>& vectors);

}  // namespace wavode
