#include <doctest.h>

#include "wavode/kernel.hpp"
#include "wavode/oracle.hpp"

using namespace wavode;

namespace {

GaussianRational real(long v) { return GaussianRational(BigRational(v)); }

GaussianRational band_residual(const BetaTable& beta, const CoeffVector& v, long m) {
    GaussianRational acc;
    long ell0 = beta.ell0();
    for (long n = std::max<long>(0, m - ell0); n <= m + ell0; ++n)
        acc += beta.matrix_element(m, n) * v[size_t(n)];
    return acc;
}

}  // namespace

TEST_CASE("head solve on the worked example") {
    BetaTable beta = compute_beta(example_operator_1());
    CHECK(beta.ell0() == 4);
    CHECK(beta.j0() == 2);
    CHECK(beta.p0() == 5);
    KernelBasis head = initial_basis(beta);
    CHECK(head.D == 6 - (6 - head.D));  // D = p0 + 1 - rank by construction
    CHECK(head.D == 5);
    // every head vector satisfies the complete rows exactly
    for (const auto& v : head.vectors)
        for (long m = 0; m <= head.p0 - head.ell0; ++m)
            CHECK(band_residual(beta, v, m) == GaussianRational{});
    // linear independence at the head length
    CHECK(rank_of(head.vectors) == head.D);
}

TEST_CASE("no constraints means the identity seed") {
    // Laguerre-type operator has k0d < 0, hence j0 = 0
    ODEOperator op = laguerre_squared_operator(3, 4, 30, 0);
    CHECK(op.basis.k0d == -4);
    BetaTable beta = compute_beta(op);
    CHECK(beta.j0() == 0);
    KernelBasis head = initial_basis(beta);
    CHECK(head.D == head.p0 + 1);
    for (long d = 0; d < head.D; ++d)
        for (long n = 0; n <= head.p0; ++n)
            CHECK(head.vectors[size_t(d)][size_t(n)] ==
                  (n == d ? real(1) : GaussianRational{}));
}

TEST_CASE("identically zero constraint rows leave the full space") {
    BetaTable zero(1, 1, 1);  // all entries zero
    KernelBasis head = initial_basis(zero);
    CHECK(head.D == head.p0 + 1);
}

TEST_CASE("the section-5 head convention finds the same dimension") {
    BetaTable beta = compute_beta(example_operator_1());
    KernelBasis a = initial_basis(beta, 0);
    KernelBasis b = initial_basis(beta, 1);
    CHECK(b.p0 == a.p0 + 1);
    CHECK(a.D == b.D);
}

TEST_CASE("band recursion keeps the residual identically zero") {
    BetaTable beta = compute_beta(example_operator_1());
    KernelBasis head = initial_basis(beta);
    const long N = 47;
    KernelBasis full = extend_recursion(head, beta, N);
    CHECK(full.vectors.size() == 5);
    for (const auto& v : full.vectors) {
        CHECK(static_cast<long>(v.size()) == N + 1);
        for (long m = 0; m + full.ell0 <= N; ++m)
            CHECK(band_residual(beta, v, m) == GaussianRational{});
    }
    // head entries unchanged
    for (long d = 0; d < full.D; ++d)
        for (long n = 0; n <= full.p0; ++n)
            CHECK(full.vectors[size_t(d)][size_t(n)] == head.vectors[size_t(d)][size_t(n)]);
}

TEST_CASE("extension is the identity at N = p0 and deterministic") {
    BetaTable beta = compute_beta(example_operator_1());
    KernelBasis head = initial_basis(beta);
    KernelBasis same = extend_recursion(head, beta, head.p0);
    CHECK(same.vectors == head.vectors);
    KernelBasis once = extend_recursion(head, beta, 30);
    KernelBasis twice = extend_recursion(head, beta, 30);
    CHECK(once.vectors == twice.vectors);
}

TEST_CASE("a vanishing pivot is reported with its index") {
    // craft a table whose recursion pivot polynomial has an integer root
    // reachable by some row: M=1, k0=k0d=0, band offsets -1..1, ell0 = 2
    BetaTable beta(1, 0, 0);
    beta.entry(-1, 0) = real(-3);
    beta.entry(-1, 1) = real(1);  // vanishes when the column index is 3
    beta.entry(0, 0) = real(1);
    beta.entry(1, 0) = real(1);
    long bad_n = -1;
    for (long n = beta.p0() + 1; n <= 30 && bad_n < 0; ++n)
        if (beta.matrix_element(n - beta.ell0(), n).is_zero()) bad_n = n;
    REQUIRE(bad_n > 0);
    KernelBasis head = initial_basis(beta);
    REQUIRE(head.D > 0);
    try {
        extend_recursion(head, beta, 30);
        FAIL("expected PivotZero");
    } catch (const PivotZero& e) {
        CHECK(e.index() == bad_n);
    }
}

TEST_CASE("integerize scales by the least common denominator") {
    CoeffVector v = {GaussianRational(make_rational(1, 2), BigRational(0)),
                     GaussianRational(make_rational(1, 3), BigRational(0))};
    CoeffVector w = integerize(v);
    CHECK(w[0] == real(3));
    CHECK(w[1] == real(2));

    CoeffVector ints = {real(4), real(-7)};
    CHECK(integerize(ints) == ints);

    CoeffVector mixed = {GaussianRational(make_rational(1, 4), make_rational(1, 4)),
                         GaussianRational(make_rational(1, 6), BigRational(0))};
    CoeffVector scaled = integerize(mixed);
    CHECK(scaled[0] == GaussianRational(BigRational(3), BigRational(3)));
    CHECK(scaled[1] == real(2));
}
