#include "wavode/oracle.hpp"

namespace wavode {

void SymbolicExpansion::apply_derivative() {
    // psi_{k,j} -> j psi_{k+1,j-1} - (j+k+1) psi_{k+1,j}
    std::map<long, GaussianRational> next;
    for (const auto& [j, c] : coeffs) {
        if (j != 0) next[j - 1] += BigRational(j) * c;
        next[j] -= BigRational(j + level + 1) * c;
    }
    for (auto it = next.begin(); it != next.end();)
        it = it->second.is_zero() ? next.erase(it) : std::next(it);
    coeffs.swap(next);
    ++level;
}

void SymbolicExpansion::apply_multiply() {
    // x psi_{k,j} -> (1/2)(psi_{k-1,j} + psi_{k-1,j+1})
    const BigRational half(1, 2);
    std::map<long, GaussianRational> next;
    for (const auto& [j, c] : coeffs) {
        next[j] += half * c;
        next[j + 1] += half * c;
    }
    for (auto it = next.begin(); it != next.end();)
        it = it->second.is_zero() ? next.erase(it) : std::next(it);
    coeffs.swap(next);
    --level;
}

void SymbolicExpansion::apply_lower() {
    // psi_{k,j} -> -(i/2) psi_{k-1,j} + (i/2) psi_{k-1,j+1}
    const GaussianRational half_i{BigRational(0), BigRational(1, 2)};
    std::map<long, GaussianRational> next;
    for (const auto& [j, c] : coeffs) {
        next[j] -= half_i * c;
        next[j + 1] += half_i * c;
    }
    for (auto it = next.begin(); it != next.end();)
        it = it->second.is_zero() ? next.erase(it) : std::next(it);
    coeffs.swap(next);
    --level;
}

GaussianRational oracle_matrix_element(const ODEOperator& op, long m, long n) {
    validate_operator(op);
    const long k0 = op.basis.k0;
    const long k0d = op.basis.k0d;
    const long ddn = solver_bilateral(k0, n);
    const long ddm = solver_bilateral(k0d, m);

    GaussianRational result;
    for (int mm = 0; mm <= op.M; ++mm) {
        const auto& coeffs = op.polys[static_cast<size_t>(mm)];
        for (long j = 0; j < static_cast<long>(coeffs.size()); ++j) {
            const GaussianRational& q = coeffs[static_cast<size_t>(j)];
            if (q.is_zero()) continue;
            SymbolicExpansion e;
            e.level = k0;
            e.coeffs[ddn] = GaussianRational(1L);
            for (int it = 0; it < mm; ++it) e.apply_derivative();
            for (long it = 0; it < j; ++it) e.apply_multiply();
            long lowers = k0 - k0d + mm - j;
            if (lowers < 0)
                throw NegativeIterationCount("oracle: negative level-lowering count");
            for (long it = 0; it < lowers; ++it) e.apply_lower();
            auto at = e.coeffs.find(ddm);
            if (at != e.coeffs.end()) result += q * at->second;
        }
    }
    return result;
}

BigRational oracle_true_solution_ex1(const BigRational& x) {
    BigRational u = 3 * x - 1;
    BigRational w = u * u + 4;
    BigRational w4 = w * w;
    w4 = w4 * w4;
    return u / w4;
}

BigRational laguerre_polynomial(long nu, long mu, const BigRational& x) {
    // L_nu^mu(x) = sum_i (-1)^i C(nu+mu, nu-i) x^i / i!
    BigRational acc;
    BigRational x_pow(1);
    BigInt fact(1);
    for (long i = 0; i <= nu; ++i) {
        if (i > 0) {
            x_pow *= x;
            fact *= i;
        }
        BigInt binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(nu + mu),
                     static_cast<unsigned long>(nu - i));
        BigRational term = make_rational(binom, fact) * x_pow;
        acc += (i % 2 == 0) ? term : -term;
    }
    return acc;
}

ODEOperator laguerre_squared_operator(long nu, long mu, long c, long k0) {
    ODEOperator op;
    op.M = 2;
    op.basis.k0 = k0;
    BigInt c2(c);
    c2 *= c;
    BigInt c4 = c2 * c2;
    auto real = [](const BigInt& v) { return GaussianRational(BigRational(v)); };
    op.polys = {
        {real(-BigInt(mu) * mu), GaussianRational{}, real(c2 * (4 * nu + 2 * mu + 2)),
         GaussianRational{}, real(-c4)},
        {GaussianRational{}, GaussianRational(1L)},
        {GaussianRational{}, GaussianRational{}, GaussianRational(1L)},
    };
    op.basis.k0d = k0 - op.max_degree_gap();
    return op;
}

ODEOperator example_operator_1(long k0, long k0d) {
    ODEOperator op;
    op.M = 2;
    op.basis.k0 = k0;
    op.basis.k0d = k0d;
    auto real = [](long v) { return GaussianRational(BigRational(v)); };
    op.polys = {
        {real(126)},
        {real(-30), real(90)},
        {real(5), real(-6), real(9)},
    };
    return op;
}

}  // namespace wavode
