#include "wavode/operator.hpp"

#include <climits>
#include <string>

namespace wavode {

GaussianRational ODEOperator::eval_poly(int m, const GaussianRational& z) const {
    GaussianRational acc;
    const auto& coeffs = polys[static_cast<size_t>(m)];
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

long ODEOperator::max_degree_gap() const {
    long gap = LONG_MIN;
    for (int m = 0; m <= M; ++m) {
        const auto& coeffs = polys[static_cast<size_t>(m)];
        for (long j = static_cast<long>(coeffs.size()) - 1; j >= 0; --j) {
            if (!coeffs[static_cast<size_t>(j)].is_zero()) {
                gap = std::max(gap, j - m);
                break;
            }
        }
    }
    return gap;
}

void validate_operator(const ODEOperator& op) {
    if (op.M < 0 || op.polys.size() != static_cast<size_t>(op.M) + 1)
        throw SchemaError("operator needs polynomials q_0..q_M");
    if (op.basis.k0 < 0) throw SpaceMismatch("k0 must be nonnegative");

    bool leading_zero = true;
    for (const auto& c : op.polys[static_cast<size_t>(op.M)])
        if (!c.is_zero()) leading_zero = false;
    if (leading_zero) throw SingularAtI("leading polynomial is identically zero");

    const GaussianRational plus_i{BigRational(0), BigRational(1)};
    const GaussianRational minus_i{BigRational(0), BigRational(-1)};
    if (op.eval_poly(op.M, plus_i).is_zero() || op.eval_poly(op.M, minus_i).is_zero())
        throw SingularAtI("leading polynomial vanishes at +i or -i");

    long gap = op.max_degree_gap();
    if (op.basis.k0d > op.basis.k0 - gap)
        throw SpaceMismatch("k0d exceeds k0 - max(deg q_m - m) = " +
                            std::to_string(op.basis.k0 - gap));
}

BetaTable::BetaTable(int M, long k0, long k0d)
    : M_(M), k0_(k0), k0d_(k0d), r_max_(M + k0 - k0d) {
    entries_.assign(static_cast<size_t>(r_max_ + M_ + 1) * static_cast<size_t>(M_ + 1),
                    GaussianRational{});
}

GaussianRational& BetaTable::entry(long r, int s) {
    return entries_[static_cast<size_t>(r + M_) * static_cast<size_t>(M_ + 1) +
                    static_cast<size_t>(s)];
}

const GaussianRational& BetaTable::entry(long r, int s) const {
    return entries_[static_cast<size_t>(r + M_) * static_cast<size_t>(M_ + 1) +
                    static_cast<size_t>(s)];
}

GaussianRational BetaTable::matrix_element(long m, long n) const {
    long offset = solver_bilateral(k0d_, m) - solver_bilateral(k0_, n);
    if (!in_band(offset)) return GaussianRational{};
    BigRational ddn(solver_bilateral(k0_, n));
    GaussianRational acc;
    for (int s = M_; s >= 0; --s) acc = ddn * acc + entry(offset, s);
    return acc;
}

BetaTable& BetaTable::operator+=(const BetaTable& o) {
    if (M_ != o.M_ || k0_ != o.k0_ || k0d_ != o.k0d_)
        throw Error("Internal", "beta table shape mismatch");
    for (size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
}

namespace {

// Working array for one monomial: coefficients alpha(r, s) of ddn^s at
// band offset r, over the full stored range with implicit zeros outside.
class AlphaGrid {
public:
    AlphaGrid(int M, long r_max) : M_(M), r_min_(-M), r_max_(r_max) {
        grid_.assign(static_cast<size_t>(r_max_ - r_min_ + 1) * static_cast<size_t>(M_ + 1),
                     GaussianRational{});
    }

    GaussianRational at(long r, int s) const {
        if (r < r_min_ || r > r_max_ || s < 0 || s > M_) return GaussianRational{};
        return grid_[index(r, s)];
    }
    void set(long r, int s, GaussianRational v) { grid_[index(r, s)] = std::move(v); }

    void seed() {
        std::fill(grid_.begin(), grid_.end(), GaussianRational{});
        set(0, 0, GaussianRational(1L));
    }

    // One derivative pass at level kappa:
    //   alpha'(r,s) = -(r+kappa+1) a(r,s) + (r+1) a(r+1,s) - a(r,s-1) + a(r+1,s-1)
    void pass_derivative(long kappa) {
        AlphaGrid next(M_, r_max_);
        for (long r = r_min_; r <= r_max_; ++r)
            for (int s = 0; s <= M_; ++s) {
                GaussianRational v = BigRational(-(r + kappa + 1)) * at(r, s) +
                                     BigRational(r + 1) * at(r + 1, s) - at(r, s - 1) +
                                     at(r + 1, s - 1);
                next.set(r, s, std::move(v));
            }
        grid_.swap(next.grid_);
    }

    // One coordinate-multiplication pass: alpha'(r,s) = (a(r-1,s) + a(r,s))/2.
    void pass_multiply() {
        const BigRational half(1, 2);
        AlphaGrid next(M_, r_max_);
        for (long r = r_min_; r <= r_max_; ++r)
            for (int s = 0; s <= M_; ++s) next.set(r, s, half * (at(r - 1, s) + at(r, s)));
        grid_.swap(next.grid_);
    }

    // One level-lowering pass: alpha'(r,s) = (i/2)(a(r-1,s) - a(r,s)).
    void pass_lower() {
        const GaussianRational half_i{BigRational(0), BigRational(1, 2)};
        AlphaGrid next(M_, r_max_);
        for (long r = r_min_; r <= r_max_; ++r)
            for (int s = 0; s <= M_; ++s) next.set(r, s, half_i * (at(r - 1, s) - at(r, s)));
        grid_.swap(next.grid_);
    }

private:
    size_t index(long r, int s) const {
        return static_cast<size_t>(r - r_min_) * static_cast<size_t>(M_ + 1) +
               static_cast<size_t>(s);
    }
    int M_;
    long r_min_, r_max_;
    std::vector<GaussianRational> grid_;
};

}  // namespace

BetaTable compute_beta(const ODEOperator& op) {
    const long k0 = op.basis.k0;
    const long k0d = op.basis.k0d;
    BetaTable beta(op.M, k0, k0d);
    AlphaGrid alpha(op.M, op.M + k0 - k0d);

    for (int m = 0; m <= op.M; ++m) {
        const auto& coeffs = op.polys[static_cast<size_t>(m)];
        for (long j = 0; j < static_cast<long>(coeffs.size()); ++j) {
            const GaussianRational& q_mj = coeffs[static_cast<size_t>(j)];
            if (q_mj.is_zero()) continue;
            long lower_passes = k0 - k0d - j + m;
            if (lower_passes < 0)
                throw NegativeIterationCount("monomial x^" + std::to_string(j) + " d^" +
                                             std::to_string(m) +
                                             " needs a negative level-lowering count");
            alpha.seed();
            long kappa = k0;
            for (int it = 0; it < m; ++it) alpha.pass_derivative(kappa++);
            for (long it = 0; it < j; ++it) alpha.pass_multiply();
            for (long it = 0; it < lower_passes; ++it) alpha.pass_lower();
            for (long r = -op.M; r <= op.M + k0 - k0d; ++r)
                for (int s = 0; s <= op.M; ++s) beta.entry(r, s) += q_mj * alpha.at(r, s);
        }
    }
    return beta;
}

}  // namespace wavode
