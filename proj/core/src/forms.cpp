#include "wavode/forms.hpp"

#include <cassert>

#include "wavode/parallel.hpp"
#include "wavode/wavepacket.hpp"

namespace wavode {

void WeightSpec::validate(long p0) const {
    if (!(N >= J && J >= K)) throw SchemaError("weights need N >= J >= K");
    if (K < p0) throw SchemaError("K must be at least j0 + ell0 - 1 = " + std::to_string(p0));
    if (base < 2) throw SchemaError("weight base must be >= 2");
}

long mu_doubled(const WeightSpec& spec, long n) {
    long ddn = solver_bilateral(spec.k0, n);
    long center = spec.k0 + 1;
    long folded = spec.mu_folded_up ? 2 * ddn + center : 2 * ddn - center;
    return std::labs(folded) - center;
}

namespace {

BigInt weight_integer(const WeightSpec& spec, long n) {
    if (n <= spec.K) return BigInt(1);
    long mu_K = mu_doubled(spec, spec.K);
    long exp_J = (mu_doubled(spec, spec.J) - mu_K) / 2;
    if (exp_J < 0) exp_J = 0;
    long e = n >= spec.J ? exp_J : (mu_doubled(spec, n) - mu_K) / 2;
    if (e < 0) e = 0;
    if (e > exp_J) e = exp_J;
    BigInt w;
    mpz_pow_ui(w.get_mpz_t(), spec.base.get_mpz_t(), static_cast<unsigned long>(e));
    return w;
}

bool integer_valued(const CoeffVector& v) {
    for (const auto& z : v)
        if (z.re.get_den() != 1 || z.im.get_den() != 1) return false;
    return true;
}

// sum over n <= limit of f_n * conj(g_n) * w_n, with w == nullptr meaning
// all-ones. Fast integer path when both vectors are integer-valued.
GaussianRational weighted_dot(const CoeffVector& f, const CoeffVector& g,
                              const std::vector<BigInt>* w, long limit) {
    long top = std::min<long>({limit, static_cast<long>(f.size()) - 1,
                               static_cast<long>(g.size()) - 1});
    if (integer_valued(f) && integer_valued(g)) {
        BigInt acc_re(0), acc_im(0), t;
        for (long n = 0; n <= top; ++n) {
            const auto& a = f[static_cast<size_t>(n)];
            const auto& b = g[static_cast<size_t>(n)];
            if (a.is_zero() || b.is_zero()) continue;
            const BigInt &ar = a.re.get_num(), &ai = a.im.get_num();
            const BigInt &br = b.re.get_num(), &bi = b.im.get_num();
            BigInt re = ar * br + ai * bi;
            BigInt im = ai * br - ar * bi;
            if (w != nullptr) {
                const BigInt& wn = (*w)[static_cast<size_t>(n)];
                re *= wn;
                im *= wn;
            }
            acc_re += re;
            acc_im += im;
        }
        return {BigRational(acc_re), BigRational(acc_im)};
    }
    GaussianRational acc;
    for (long n = 0; n <= top; ++n) {
        GaussianRational term =
            f[static_cast<size_t>(n)] * g[static_cast<size_t>(n)].conj();
        if (w != nullptr) term = BigRational((*w)[static_cast<size_t>(n)]) * term;
        acc += term;
    }
    return acc;
}

}  // namespace

BigRational weight(const WeightSpec& spec, long n) {
    assert(n >= 0 && n <= spec.N);
    return BigRational(weight_integer(spec, n));
}

Forms::Forms(WeightSpec spec) : spec_(std::move(spec)) {
    weights_.reserve(static_cast<size_t>(spec_.N) + 1);
    for (long n = 0; n <= spec_.N; ++n) weights_.push_back(weight_integer(spec_, n));
}

GaussianRational Forms::inner_QN(const CoeffVector& f, const CoeffVector& g) const {
    return weighted_dot(f, g, &weights_, spec_.N);
}

GaussianRational Forms::inner_l2K(const CoeffVector& f, const CoeffVector& g) const {
    return weighted_dot(f, g, nullptr, spec_.K);
}

GaussianRational inner_QN(const WeightSpec& spec, const CoeffVector& f, const CoeffVector& g) {
    return Forms(spec).inner_QN(f, g);
}

GaussianRational inner_l2K(const WeightSpec& spec, const CoeffVector& f,
                           const CoeffVector& g) {
    return weighted_dot(f, g, nullptr, spec.K);
}

GramPair GramPair::identity(long D) {
    GramPair g;
    g.D = D;
    g.c.assign(static_cast<size_t>(D), std::vector<GaussianInteger>(static_cast<size_t>(D)));
    for (long j = 0; j < D; ++j) g.c[size_t(j)][size_t(j)].re = 1;
    g.p.assign(static_cast<size_t>(D), std::vector<GaussianRational>(static_cast<size_t>(D)));
    g.q.assign(static_cast<size_t>(D), std::vector<GaussianRational>(static_cast<size_t>(D)));
    return g;
}

GramPair gram_init(const Forms& forms, const std::vector<CoeffVector>& vectors) {
    long D = static_cast<long>(vectors.size());
    GramPair gram = GramPair::identity(D);
    // upper triangle plus diagonal, mirrored by conjugation
    std::vector<std::pair<long, long>> pairs;
    for (long j = 0; j < D; ++j)
        for (long m = j; m < D; ++m) pairs.emplace_back(j, m);
    parallel_for(pairs.size(), [&](size_t idx) {
        auto [j, m] = pairs[idx];
        gram.p[size_t(j)][size_t(m)] =
            forms.inner_QN(vectors[size_t(j)], vectors[size_t(m)]);
        gram.q[size_t(j)][size_t(m)] =
            forms.inner_l2K(vectors[size_t(j)], vectors[size_t(m)]);
    });
    for (long j = 0; j < D; ++j)
        for (long m = 0; m < j; ++m) {
            gram.p[size_t(j)][size_t(m)] = gram.p[size_t(m)][size_t(j)].conj();
            gram.q[size_t(j)][size_t(m)] = gram.q[size_t(m)][size_t(j)].conj();
        }
    return gram;
}

GramPair gram_init(const WeightSpec& spec, const std::vector<CoeffVector>& vectors) {
    return gram_init(Forms(spec), vectors);
}

}  // namespace wavode
