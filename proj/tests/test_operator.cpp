#include <doctest.h>

#include <random>

#include "wavode/operator.hpp"
#include "wavode/oracle.hpp"

using namespace wavode;

namespace {

GaussianRational real(long v) { return GaussianRational(BigRational(v)); }

ODEOperator random_valid_operator(std::mt19937_64& rng, int max_order, long max_deg) {
    std::uniform_int_distribution<int> order(1, max_order);
    std::uniform_int_distribution<long> deg(0, max_deg), coeff(-3, 3), k0_pick(0, 3);
    for (;;) {
        ODEOperator op;
        op.M = order(rng);
        op.polys.assign(static_cast<size_t>(op.M) + 1, {});
        for (int m = 0; m <= op.M; ++m) {
            long d = deg(rng);
            for (long j = 0; j <= d; ++j)
                op.polys[size_t(m)].push_back({BigRational(coeff(rng)), BigRational(coeff(rng))});
        }
        op.basis.k0 = k0_pick(rng);
        long gap = op.max_degree_gap();
        if (gap == LONG_MIN) continue;
        op.basis.k0d = op.basis.k0 - gap;
        try {
            validate_operator(op);
            return op;
        } catch (const Error&) {
        }
    }
}

}  // namespace

TEST_CASE("operator validation") {
    ODEOperator ok = example_operator_1();
    CHECK_NOTHROW(validate_operator(ok));
    // q_2(i) = 9i^2 - 6i + 5 = -4 - 6i != 0
    GaussianRational at_i = ok.eval_poly(2, GaussianRational{BigRational(0), BigRational(1)});
    CHECK(at_i == GaussianRational{BigRational(-4), BigRational(-6)});

    ODEOperator singular = ok;
    singular.polys[2] = {real(1), real(0), real(1)};  // x^2 + 1
    CHECK_THROWS_AS(validate_operator(singular), SingularAtI);

    ODEOperator mismatch = example_operator_1(2, 3);
    CHECK_THROWS_AS(validate_operator(mismatch), SpaceMismatch);

    ODEOperator negative_k0 = example_operator_1(-1, -1);
    CHECK_THROWS_AS(validate_operator(negative_k0), SpaceMismatch);
}

TEST_CASE("beta table for the identity operator") {
    ODEOperator op;
    op.M = 0;
    op.polys = {{real(1)}};
    op.basis = {1, 1};
    BetaTable beta = compute_beta(op);
    CHECK(beta.entry(0, 0) == real(1));
    CHECK(beta.ell0() == 0);
    for (long m = 0; m <= 10; ++m)
        for (long n = 0; n <= 10; ++n)
            CHECK(beta.matrix_element(m, n) == (m == n ? real(1) : GaussianRational{}));
}

TEST_CASE("beta table for the pure derivative") {
    const long k0 = 2;
    ODEOperator op;
    op.M = 1;
    op.polys = {{}, {real(1)}};
    op.basis = {k0, k0 + 1};
    CHECK_NOTHROW(validate_operator(op));
    BetaTable beta = compute_beta(op);
    CHECK(beta.entry(-1, 1) == real(1));
    CHECK(beta.entry(0, 0) == real(-(k0 + 1)));
    CHECK(beta.entry(0, 1) == real(-1));
    CHECK(beta.entry(-1, 0) == GaussianRational{});
    // at band offset zero the element is -(k0+1) - ddn
    for (long n = 0; n <= 12; ++n)
        for (long m = 0; m <= 12; ++m) {
            long offset = solver_bilateral(op.basis.k0d, m) - solver_bilateral(k0, n);
            if (offset != 0) continue;
            long ddn = solver_bilateral(k0, n);
            CHECK(beta.matrix_element(m, n) == real(-(k0 + 1) - ddn));
        }
}

TEST_CASE("beta table for multiplication by x") {
    ODEOperator op;
    op.M = 0;
    op.polys = {{real(0), real(1)}};
    op.basis = {2, 1};
    BetaTable beta = compute_beta(op);
    CHECK(beta.entry(0, 0) == GaussianRational(make_rational(1, 2), BigRational(0)));
    CHECK(beta.entry(1, 0) == GaussianRational(make_rational(1, 2), BigRational(0)));
}

TEST_CASE("level-lowering count cannot go negative") {
    ODEOperator op;
    op.M = 0;
    op.polys = {{real(0), real(1)}};  // q_0 = x
    op.basis = {1, 1};                // needs k0d <= k0 - 1
    CHECK_THROWS_AS(compute_beta(op), NegativeIterationCount);
}

TEST_CASE("band structure and parity sparsity") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 6; ++rep) {
        ODEOperator op = random_valid_operator(rng, 3, 3);
        BetaTable beta = compute_beta(op);
        long ell0 = beta.ell0();
        long spread = 2 * op.M + 2 * op.basis.k0 - 2 * op.basis.k0d;
        for (long m = 0; m <= 24; ++m)
            for (long n = 0; n <= 24; ++n) {
                if (std::labs(m - n) > ell0)
                    CHECK(beta.matrix_element(m, n) == GaussianRational{});
                // the in-band odd-diagonal sparsity; when the two levels
                // differ the sparse parity class shifts with them
                if ((m + n + op.basis.k0 + op.basis.k0d) % 2 == 1 && m + n > spread + 2)
                    CHECK(beta.matrix_element(m, n) == GaussianRational{});
            }
    }
    // the level-matched case carries the plain odd-sum sparsity
    BetaTable beta = compute_beta(example_operator_1());
    for (long m = 0; m <= 30; ++m)
        for (long n = 0; n <= 30; ++n)
            if ((m + n) % 2 == 1 && m + n > 2 * 2)
                CHECK(beta.matrix_element(m, n) == GaussianRational{});
}

TEST_CASE("recursion pivots never vanish past the head rows") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 8; ++rep) {
        ODEOperator op = random_valid_operator(rng, 3, 3);
        BetaTable beta = compute_beta(op);
        for (long m = beta.j0(); m <= 40; ++m)
            CHECK_FALSE(beta.matrix_element(m, m + beta.ell0()).is_zero());
    }
}

TEST_CASE("beta compilation is linear in the operator") {
    std::mt19937_64 rng(19);
    ODEOperator a = random_valid_operator(rng, 2, 2);
    ODEOperator b = a;
    std::uniform_int_distribution<long> coeff(-3, 3);
    for (auto& poly : b.polys)
        for (auto& c : poly) c = {BigRational(coeff(rng)), BigRational(coeff(rng))};
    ODEOperator sum = a;
    for (size_t m = 0; m < sum.polys.size(); ++m) {
        sum.polys[m].resize(std::max(a.polys[m].size(), b.polys[m].size()));
        for (size_t j = 0; j < b.polys[m].size(); ++j) sum.polys[m][j] += b.polys[m][j];
    }
    BetaTable ba = compute_beta(a);
    BetaTable bb = compute_beta(b);
    BetaTable bs = compute_beta(sum);
    ba += bb;
    CHECK(ba == bs);
}

TEST_CASE("matrix elements agree with the expansion oracle") {
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 5; ++rep) {
        ODEOperator op = random_valid_operator(rng, 3, 3);
        BetaTable beta = compute_beta(op);
        for (long m = 0; m <= 25; ++m)
            for (long n = 0; n <= 25; ++n)
                CHECK(beta.matrix_element(m, n) == oracle_matrix_element(op, m, n));
    }
}

TEST_CASE("oracle sees the identity operator as the identity matrix") {
    ODEOperator op;
    op.M = 0;
    op.polys = {{real(1)}};
    op.basis = {2, 2};
    for (long m = 0; m <= 12; ++m)
        for (long n = 0; n <= 12; ++n)
            CHECK(oracle_matrix_element(op, m, n) == (m == n ? real(1) : GaussianRational{}));
}
