#include "wavode/evaluate.hpp"

#include "wavode/decimal.hpp"
#include "wavode/parallel.hpp"
#include "wavode/wavepacket.hpp"

namespace wavode {

GaussianRational eval_at(const EvaluatedSolution& sol, const BigRational& x) {
    // psi_{k,ddn}(x) = base * t^ddn with base = (x+i)^-(k+1), t = (x-i)/(x+i);
    // |t| = 1 so negative powers are conjugates. Powers are accumulated
    // incrementally while walking the alternating index sequence.
    const GaussianRational x_plus_i{x, BigRational(1)};
    const GaussianRational x_minus_i{x, BigRational(-1)};
    const GaussianRational t = x_minus_i / x_plus_i;
    const GaussianRational t_inv = t.conj();

    GaussianRational base = GaussianRational(1L);
    for (long i = 0; i < sol.k0 + 1; ++i) base = base / x_plus_i;

    GaussianRational acc;
    GaussianRational pow_cache_pos = GaussianRational(1L);  // t^max_seen_pos
    GaussianRational pow_cache_neg = GaussianRational(1L);  // t^-max_seen_neg
    long seen_pos = 0, seen_neg = 0;
    for (long n = 0; n < static_cast<long>(sol.coeffs.size()); ++n) {
        const GaussianRational& f = sol.coeffs[size_t(n)];
        long ddn = solver_bilateral(sol.k0, n);
        GaussianRational t_pow;
        if (ddn >= 0) {
            while (seen_pos < ddn) {
                pow_cache_pos = pow_cache_pos * t;
                ++seen_pos;
            }
            if (ddn == seen_pos) t_pow = pow_cache_pos;
        }
        if (ddn < 0) {
            while (seen_neg < -ddn) {
                pow_cache_neg = pow_cache_neg * t_inv;
                ++seen_neg;
            }
            if (-ddn == seen_neg) t_pow = pow_cache_neg;
        }
        if (f.is_zero()) continue;
        if ((ddn >= 0 && ddn != seen_pos) || (ddn < 0 && -ddn != seen_neg))
            t_pow = psi_eval(0, ddn, x) * x_plus_i;  // fallback, not expected
        acc += f * t_pow;
    }
    return base * acc;
}

GaussianRational ratio_points(const EvaluatedSolution& sol, const BigRational& x0,
                              const BigRational& x1) {
    GaussianRational denom = eval_at(sol, x1);
    if (denom.is_zero()) throw DivisionByZeroValue("solution vanishes at the base point");
    return eval_at(sol, x0) / denom;
}

GaussianRational ratio_coeffs(const EvaluatedSolution& sol, long n, long m) {
    if (n < 0 || m < 0 || n >= static_cast<long>(sol.coeffs.size()) ||
        m >= static_cast<long>(sol.coeffs.size()))
        throw SchemaError("coefficient index out of range");
    const GaussianRational& denom = sol.coeffs[size_t(m)];
    if (denom.is_zero()) throw DivisionByZeroCoeff("reference coefficient is zero");
    return sol.coeffs[size_t(n)] / denom;
}

EvaluatedSolution normalize_paper(const EvaluatedSolution& sol) {
    long n0 = inverse_solver_bilateral(sol.k0, 0);
    long n1 = inverse_solver_bilateral(sol.k0, -sol.k0 - 1);
    auto coeff = [&](long n) {
        return n < static_cast<long>(sol.coeffs.size()) ? sol.coeffs[size_t(n)]
                                                        : GaussianRational{};
    };
    GaussianRational s = coeff(n0) + coeff(n1);
    if (s.is_zero())
        throw DegenerateNormalization("normalizing coefficient pair sums to zero");
    GaussianRational scale = GaussianRational(2L) / s;
    EvaluatedSolution out;
    out.k0 = sol.k0;
    out.normalization = Normalization::paper;
    out.coeffs.reserve(sol.coeffs.size());
    for (const auto& f : sol.coeffs) out.coeffs.push_back(scale * f);
    return out;
}

std::optional<long> significant_digits_real(const BigRational& a, const BigRational& ref) {
    if (a == ref) return std::nullopt;  // the infinite sentinel
    if (ref == 0) return 0;
    long e = floor_log10_abs(ref);
    BigRational err = abs(a - ref);
    // largest q >= 0 with err <= (1/2) 10^(e - q + 1)
    long q = 0;
    auto ok = [&](long qq) {
        // 2 err <= 10^(e - qq + 1)
        long exp = e - qq + 1;
        BigInt num = 2 * err.get_num();
        BigInt den = err.get_den();
        BigInt p;
        if (exp >= 0) {
            mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp));
            return num <= den * p;
        }
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-exp));
        return num * p <= den;
    };
    if (!ok(0)) return 0;
    while (ok(q + 1)) ++q;
    return q;
}

SignificantDigits significant_digits(const GaussianRational& a, const GaussianRational& ref) {
    return {significant_digits_real(a.re, ref.re), significant_digits_real(a.im, ref.im)};
}

void emit_plot_data(const EvaluatedSolution& sol, const std::vector<BigRational>& grid,
                    int digits, std::ostream& os) {
    os << "x,re,im\n";
    std::vector<std::string> rows(grid.size());
    parallel_for(grid.size(), [&](size_t i) {
        GaussianRational v = eval_at(sol, grid[i]);
        std::string re, im;
        if (sol.normalization == Normalization::raw) {
            re = fixed_decimal_over_sqrt_pi(v.re, digits);
            im = fixed_decimal_over_sqrt_pi(v.im, digits);
        } else {
            re = fixed_decimal(v.re, digits);
            im = fixed_decimal(v.im, digits);
        }
        rows[i] = fixed_decimal(grid[i], digits) + "," + re + "," + im + "\n";
    });
    for (const auto& row : rows) os << row;
}

}  // namespace wavode
