#include "wavode/kernel.hpp"

#include <cassert>

#include "wavode/parallel.hpp"

namespace wavode {

namespace {

size_t bit_size(const GaussianRational& z) {
    return mpz_sizeinbase(z.re.get_num_mpz_t(), 2) + mpz_sizeinbase(z.re.get_den_mpz_t(), 2) +
           mpz_sizeinbase(z.im.get_num_mpz_t(), 2) + mpz_sizeinbase(z.im.get_den_mpz_t(), 2);
}

// In-place reduced row echelon form; returns pivot (row, col) pairs.
// Within a column the nonzero candidate of smallest bit size pivots.
std::vector<std::pair<long, long>> rref(std::vector<CoeffVector>& rows, long cols) {
    std::vector<std::pair<long, long>> pivots;
    long next_row = 0;
    long nrows = static_cast<long>(rows.size());
    for (long col = 0; col < cols && next_row < nrows; ++col) {
        long best = -1;
        size_t best_bits = 0;
        for (long r = next_row; r < nrows; ++r) {
            const auto& v = rows[size_t(r)][size_t(col)];
            if (v.is_zero()) continue;
            size_t bits = bit_size(v);
            if (best < 0 || bits < best_bits) {
                best = r;
                best_bits = bits;
            }
        }
        if (best < 0) continue;
        std::swap(rows[size_t(best)], rows[size_t(next_row)]);
        GaussianRational inv = GaussianRational(1L) / rows[size_t(next_row)][size_t(col)];
        for (long cc = col; cc < cols; ++cc)
            rows[size_t(next_row)][size_t(cc)] =
                inv * rows[size_t(next_row)][size_t(cc)];
        for (long r = 0; r < nrows; ++r) {
            if (r == next_row) continue;
            GaussianRational factor = rows[size_t(r)][size_t(col)];
            if (factor.is_zero()) continue;
            for (long cc = col; cc < cols; ++cc)
                rows[size_t(r)][size_t(cc)] -=
                    factor * rows[size_t(next_row)][size_t(cc)];
        }
        pivots.emplace_back(next_row, col);
        ++next_row;
    }
    return pivots;
}

}  // namespace

long rank_of(std::vector<CoeffVector> rows) {
    if (rows.empty()) return 0;
    long cols = static_cast<long>(rows[0].size());
    return static_cast<long>(rref(rows, cols).size());
}

KernelBasis initial_basis(const BetaTable& beta, int p0_shift) {
    KernelBasis out;
    out.ell0 = beta.ell0();
    out.j0 = beta.j0();
    out.p0 = beta.p0() + p0_shift;
    const long cols = out.p0 + 1;
    const long last_row = out.p0 - out.ell0;  // rows 0..last_row are complete

    std::vector<CoeffVector> rows;
    for (long m = 0; m <= last_row; ++m) {
        CoeffVector row(static_cast<size_t>(cols));
        for (long n = 0; n < cols; ++n) row[size_t(n)] = beta.matrix_element(m, n);
        rows.push_back(std::move(row));
    }

    auto pivots = rref(rows, cols);
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (auto& [r, c] : pivots) is_pivot[size_t(c)] = true;

    for (long free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[size_t(free_col)]) continue;
        CoeffVector v(static_cast<size_t>(cols));
        v[size_t(free_col)] = GaussianRational(1L);
        for (auto& [r, c] : pivots) v[size_t(c)] = -rows[size_t(r)][size_t(free_col)];
        out.vectors.push_back(std::move(v));
    }
    out.D = static_cast<long>(out.vectors.size());
    return out;
}

namespace {

GaussianInteger to_gaussian_integer(const GaussianRational& z) {
    assert(z.re.get_den() == 1 && z.im.get_den() == 1);
    return {z.re.get_num(), z.im.get_num()};
}

BigInt content_gcd(const GaussianInteger& g, const BigInt& cap) {
    BigInt d;
    mpz_gcd(d.get_mpz_t(), g.re.get_mpz_t(), g.im.get_mpz_t());
    mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), cap.get_mpz_t());
    return d;
}

}  // namespace

KernelBasis extend_recursion(const KernelBasis& basis, const BetaTable& beta, long N) {
    if (N < basis.p0) throw SchemaError("N must be at least the head length p0");
    if (N == basis.p0 || basis.D == 0) {
        KernelBasis copy = basis;
        return copy;
    }

    // common denominator of every beta entry, so matrix elements scale to
    // Gaussian integers
    BigInt common(1);
    for (long r = -beta.order(); r <= beta.order() + beta.k0() - beta.k0d(); ++r)
        for (int s = 0; s <= beta.order(); ++s) {
            const auto& e = beta.entry(r, s);
            mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), e.re.get_den_mpz_t());
            mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), e.im.get_den_mpz_t());
        }
    const BigRational common_q{common};

    auto scaled_element = [&](long m, long n) {
        return to_gaussian_integer(common_q * beta.matrix_element(m, n));
    };

    KernelBasis out;
    out.D = basis.D;
    out.p0 = basis.p0;
    out.ell0 = basis.ell0;
    out.j0 = basis.j0;
    out.vectors.assign(static_cast<size_t>(basis.D), CoeffVector{});

    parallel_for(static_cast<size_t>(basis.D), [&](size_t d) {
        const CoeffVector& head = basis.vectors[d];
        std::vector<GaussianInteger> nums(static_cast<size_t>(N) + 1);
        std::vector<BigInt> dens(static_cast<size_t>(N) + 1, BigInt(1));

        BigInt L(1);
        for (const auto& z : head) {
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), z.re.get_den_mpz_t());
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), z.im.get_den_mpz_t());
        }
        const BigRational L_q{L};
        for (long r = 0; r <= basis.p0; ++r) {
            nums[size_t(r)] = to_gaussian_integer(L_q * head[size_t(r)]);
            dens[size_t(r)] = L;
        }

        for (long n = basis.p0 + 1; n <= N; ++n) {
            const long m = n - basis.ell0;
            GaussianInteger pivot = scaled_element(m, n);
            if (pivot.is_zero()) throw PivotZero(n);

            const BigInt& den_prev = dens[size_t(n - 1)];
            GaussianInteger sum;
            for (long r = std::max<long>(0, n - 2 * basis.ell0); r < n; ++r) {
                GaussianInteger b = scaled_element(m, r);
                if (b.is_zero() || nums[size_t(r)].is_zero()) continue;
                BigInt ratio;
                mpz_divexact(ratio.get_mpz_t(), den_prev.get_mpz_t(),
                             dens[size_t(r)].get_mpz_t());
                sum = sum + (ratio * b) * nums[size_t(r)];
            }
            GaussianInteger g = -(sum * pivot.conj());
            BigInt factor = pivot.norm_sq();
            BigInt d0 = content_gcd(g, factor);
            if (d0 > 1) {
                mpz_divexact(g.re.get_mpz_t(), g.re.get_mpz_t(), d0.get_mpz_t());
                mpz_divexact(g.im.get_mpz_t(), g.im.get_mpz_t(), d0.get_mpz_t());
                mpz_divexact(factor.get_mpz_t(), factor.get_mpz_t(), d0.get_mpz_t());
            }
            dens[size_t(n)] = den_prev * factor;
            nums[size_t(n)] = std::move(g);
        }

        CoeffVector full(static_cast<size_t>(N) + 1);
        for (long r = 0; r <= N; ++r)
            full[size_t(r)] = {make_rational(nums[size_t(r)].re, dens[size_t(r)]),
                               make_rational(nums[size_t(r)].im, dens[size_t(r)])};
        out.vectors[d] = std::move(full);
    });
    return out;
}

CoeffVector integerize(const CoeffVector& v) {
    BigInt L(1);
    for (const auto& z : v) {
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), z.re.get_den_mpz_t());
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), z.im.get_den_mpz_t());
    }
    CoeffVector out;
    out.reserve(v.size());
    const BigRational L_q{L};
    for (const auto& z : v) out.push_back(L_q * z);
    return out;
}

}  // namespace wavode
