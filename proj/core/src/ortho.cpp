#include "wavode/ortho.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "wavode/parallel.hpp"

namespace wavode {

namespace {

class PhaseEngine {
public:
    PhaseEngine(GramPair& gram, FormKind form, long active_from, const OrthoParams& params,
                PhaseStats& stats)
        : gram_(gram),
          form_(form),
          active_(active_from),
          params_(params),
          stats_(stats),
          doublings_(static_cast<size_t>(gram.D), 0) {
        for (long j = 0; j < gram_.D; ++j) {
            size_t bits = mpz_sizeinbase(diag(j).get_num_mpz_t(), 2);
            caps_.push_back(64 * (static_cast<long>(bits) + 64));
        }
    }

    void run_preliminary() {
        size_t prev_bits = total_diag_bits();
        for (;;) {
            if (++stats_.passes > params_.max_iterations)
                throw IterationCapExceeded("preliminary sweep exceeded the pass cap");
            bool changed = sort_active();
            for (long j = j_start(); j < gram_.D; ++j)
                for (long l = l_start(); l < j; ++l)
                    if (reduce(j, l)) changed = true;
            if (!changed) return;
            // Rounded quotients taken one row at a time can stall against a
            // strongly correlated block, oscillating with no size progress;
            // a joint solve-then-round step against the whole block breaks
            // the stall while preserving the sweep's fixpoint.
            size_t bits = total_diag_bits();
            if (bits >= prev_bits)
                for (long j = j_start(); j < gram_.D; ++j) joint_reduce(j);
            prev_bits = bits;
        }
    }

    void run_strong(long bound) {
        BigRational bound_sq{BigInt(bound) * BigInt(bound)};
        for (;;) {
            if (++stats_.passes > params_.max_iterations)
                throw IterationCapExceeded("doubling sweep exceeded the pass cap");
            bool changed = false;
            for (long j = j_start(); j < gram_.D; ++j)
                for (long l = l_start(); l < j; ++l) {
                    if (!pair_violates(bound_sq, j, l)) continue;
                    double_row(j);
                    reduce(j, l);
                    changed = true;
                }
            if (!changed) return;
        }
    }

    long max_doublings() const {
        return *std::max_element(doublings_.begin(), doublings_.end());
    }

private:
    const GaussianRational& at(long j, long l) const {
        const auto& m = form_ == FormKind::QN ? gram_.p : gram_.q;
        return m[size_t(j)][size_t(l)];
    }
    const BigRational& diag(long j) const { return at(j, j).re; }

    // Plain-form sweeps run against every earlier row including retired
    // ones, and must also reduce the first active row (else the retired
    // block keeps a large component in it and the pairwise bounds on the
    // final set fail); weighted-form sweeps stay inside the active block.
    long l_start() const { return form_ == FormKind::l2K ? 0 : active_; }
    long j_start() const { return form_ == FormKind::l2K ? active_ : active_ + 1; }

    bool sort_active() {
        std::vector<long> order(static_cast<size_t>(gram_.D - active_));
        std::iota(order.begin(), order.end(), active_);
        std::stable_sort(order.begin(), order.end(),
                         [&](long a, long b) { return diag(a) < diag(b); });
        bool identity = true;
        for (size_t i = 0; i < order.size(); ++i)
            if (order[i] != active_ + static_cast<long>(i)) identity = false;
        if (identity) return false;
        apply_permutation(order);
        return true;
    }

    void apply_permutation(const std::vector<long>& order) {
        auto permute_rows = [&](auto& m) {
            auto copy = m;
            for (size_t i = 0; i < order.size(); ++i)
                m[size_t(active_) + i] = copy[size_t(order[i])];
        };
        permute_rows(gram_.c);
        permute_rows(gram_.p);
        permute_rows(gram_.q);
        auto permute_cols = [&](auto& m) {
            for (auto& row : m) {
                auto copy = row;
                for (size_t i = 0; i < order.size(); ++i)
                    row[size_t(active_) + i] = copy[size_t(order[i])];
            }
        };
        permute_cols(gram_.p);
        permute_cols(gram_.q);
        permute_doublings(order);
    }

    void permute_doublings(const std::vector<long>& order) {
        auto dcopy = doublings_;
        auto ccopy = caps_;
        for (size_t i = 0; i < order.size(); ++i) {
            doublings_[size_t(active_) + i] = dcopy[size_t(order[i])];
            caps_[size_t(active_) + i] = ccopy[size_t(order[i])];
        }
    }

    bool pair_violates(const BigRational& bound_sq, long j, long l) {
        if (params_.strict_table_scale > 0) {
            const BigRational scale{params_.strict_table_scale};
            GaussianRational z = at(j, l);
            GaussianInteger rounded = gauss_round({z.re / scale, z.im / scale});
            BigRational lhs = bound_sq * BigRational(rounded.norm_sq());
            BigInt fj = floor_div(diag(j) / scale) + 1;
            BigInt fl = floor_div(diag(l) / scale) + 1;
            return lhs >= BigRational(fj * fl);
        }
        return bound_sq * at(j, l).norm_sq() >= diag(j) * diag(l);
    }

    size_t total_diag_bits() const {
        size_t bits = 0;
        for (long j = active_; j < gram_.D; ++j)
            bits += mpz_sizeinbase(diag(j).get_num_mpz_t(), 2);
        return bits;
    }

    bool reduce(long j, long l) {
        const BigRational& dl = diag(l);
        if (dl == 0) throw Error("Internal", "vanishing Gram diagonal during reduction");
        const GaussianRational& num = at(j, l);
        GaussianInteger r = gauss_round({num.re / dl, num.im / dl});
        if (r.is_zero()) return false;
        BigRational before = diag(j);
        row_op(j, l, r);
        if (diag(j) > before)
            throw Error("Internal", "reduction increased the reducing-form diagonal");
        ++stats_.reductions;
        return true;
    }

    // Projects row j onto the span of the rows below it by an exact linear
    // solve, rounds the coefficients jointly and applies them as one
    // combined subtraction. Kept only when the diagonal strictly shrinks.
    bool joint_reduce(long j) {
        std::vector<long> block;
        for (long l = l_start(); l < j; ++l) block.push_back(l);
        if (block.empty()) return false;
        const size_t n = block.size();
        // normal equations: sum_b <v_b, v_a> x_b = <v_j, v_a>
        std::vector<std::vector<GaussianRational>> sys(n,
                                                       std::vector<GaussianRational>(n + 1));
        const auto& F = form_ == FormKind::QN ? gram_.p : gram_.q;
        for (size_t a = 0; a < n; ++a) {
            for (size_t b = 0; b < n; ++b)
                sys[a][b] = F[size_t(block[b])][size_t(block[a])];
            sys[a][n] = F[size_t(j)][size_t(block[a])];
        }
        // exact elimination; bail out on a singular block
        for (size_t col = 0; col < n; ++col) {
            size_t pivot = col;
            while (pivot < n && sys[pivot][col].is_zero()) ++pivot;
            if (pivot == n) return false;
            std::swap(sys[col], sys[pivot]);
            GaussianRational inv = GaussianRational(1L) / sys[col][col];
            for (size_t cc = col; cc <= n; ++cc) sys[col][cc] = inv * sys[col][cc];
            for (size_t r = 0; r < n; ++r) {
                if (r == col || sys[r][col].is_zero()) continue;
                GaussianRational f = sys[r][col];
                for (size_t cc = col; cc <= n; ++cc) sys[r][cc] -= f * sys[col][cc];
            }
        }
        std::vector<GaussianInteger> r_coeffs(n);
        bool any = false;
        for (size_t b = 0; b < n; ++b) {
            r_coeffs[b] = gauss_round(sys[b][n]);
            if (!r_coeffs[b].is_zero()) any = true;
        }
        if (!any) return false;

        auto p_row = gram_.p[size_t(j)];
        auto q_row = gram_.q[size_t(j)];
        auto c_row = gram_.c[size_t(j)];
        std::vector<GaussianRational> p_col(static_cast<size_t>(gram_.D)),
            q_col(static_cast<size_t>(gram_.D));
        for (long m = 0; m < gram_.D; ++m) {
            p_col[size_t(m)] = gram_.p[size_t(m)][size_t(j)];
            q_col[size_t(m)] = gram_.q[size_t(m)][size_t(j)];
        }
        BigRational before = diag(j);
        for (size_t b = 0; b < n; ++b)
            if (!r_coeffs[b].is_zero()) row_op(j, block[b], r_coeffs[b]);
        if (diag(j) < before) {
            ++stats_.reductions;
            return true;
        }
        gram_.p[size_t(j)] = std::move(p_row);
        gram_.q[size_t(j)] = std::move(q_row);
        gram_.c[size_t(j)] = std::move(c_row);
        for (long m = 0; m < gram_.D; ++m) {
            gram_.p[size_t(m)][size_t(j)] = p_col[size_t(m)];
            gram_.q[size_t(m)][size_t(j)] = q_col[size_t(m)];
        }
        return false;
    }

    void row_op(long j, long l, const GaussianInteger& r) {
        GaussianRational rq{BigRational(r.re), BigRational(r.im)};
        GaussianRational rq_conj = rq.conj();
        auto& c = gram_.c;
        for (long m = 0; m < gram_.D; ++m)
            c[size_t(j)][size_t(m)] = c[size_t(j)][size_t(m)] - r * c[size_t(l)][size_t(m)];
        for (auto* mat : {&gram_.p, &gram_.q}) {
            auto& x = *mat;
            for (long m = 0; m < gram_.D; ++m)
                x[size_t(j)][size_t(m)] -= rq * x[size_t(l)][size_t(m)];
            for (long m = 0; m < gram_.D; ++m)
                x[size_t(m)][size_t(j)] -= rq_conj * x[size_t(m)][size_t(l)];
        }
    }

    void double_row(long j) {
        if (++doublings_[size_t(j)] > caps_[size_t(j)])
            throw IterationCapExceeded("row doubling exceeded its budget");
        ++stats_.doublings;
        const BigInt two(2);
        for (long m = 0; m < gram_.D; ++m) {
            auto& cj = gram_.c[size_t(j)][size_t(m)];
            cj = two * cj;
        }
        for (auto* mat : {&gram_.p, &gram_.q}) {
            auto& x = *mat;
            const BigRational two_q{two};
            for (long m = 0; m < gram_.D; ++m) x[size_t(j)][size_t(m)] =
                two_q * x[size_t(j)][size_t(m)];
            for (long m = 0; m < gram_.D; ++m) x[size_t(m)][size_t(j)] =
                two_q * x[size_t(m)][size_t(j)];
        }
    }

    GramPair& gram_;
    FormKind form_;
    long active_;
    const OrthoParams& params_;
    PhaseStats& stats_;
    std::vector<long> doublings_;
    std::vector<long> caps_;
};

PhaseStats& stats_slot(PhaseStats* external, PhaseStats& local) {
    return external != nullptr ? *external : local;
}

}  // namespace

GramPair reduce_preliminary(GramPair gram, FormKind form, long active_from,
                            const OrthoParams& params, PhaseStats* stats) {
    PhaseStats local;
    PhaseEngine engine(gram, form, active_from, params, stats_slot(stats, local));
    engine.run_preliminary();
    return gram;
}

GramPair reduce_strong(GramPair gram, FormKind form, long bound, long active_from,
                       const OrthoParams& params, PhaseStats* stats) {
    PhaseStats local;
    PhaseEngine engine(gram, form, active_from, params, stats_slot(stats, local));
    engine.run_strong(bound);
    return gram;
}

long select_min_ratio(const GramPair& gram, long active_from) {
    long best = -1;
    for (long d = active_from; d < gram.D; ++d) {
        if (gram.q_diag(d) == 0) continue;
        if (best < 0 ||
            cmp_sq_ratio(gram.p_diag(d), gram.q_diag(d), gram.p_diag(best),
                         gram.q_diag(best)) < 0)
            best = d;
    }
    if (best < 0) throw AllDegenerate("every active row has zero truncated norm");
    return best;
}

CoeffVector truncate_K(const CoeffVector& v, long K) {
    CoeffVector out(static_cast<size_t>(K) + 1);
    for (size_t n = 0; n < out.size() && n < v.size(); ++n) out[n] = v[n];
    return out;
}

namespace {

CoeffVector combine_rows(const std::vector<GaussianInteger>& coeffs,
                         const std::vector<CoeffVector>& vectors) {
    size_t len = 0;
    for (const auto& v : vectors) len = std::max(len, v.size());
    CoeffVector out(len);
    for (size_t m = 0; m < vectors.size(); ++m) {
        const auto& z = coeffs[m];
        if (z.is_zero()) continue;
        GaussianRational zq{BigRational(z.re), BigRational(z.im)};
        const auto& v = vectors[m];
        for (size_t n = 0; n < v.size(); ++n)
            if (!v[n].is_zero()) out[n] += zq * v[n];
    }
    return out;
}

std::vector<std::vector<GaussianInteger>> multiply_int(
    const std::vector<std::vector<GaussianInteger>>& a,
    const std::vector<std::vector<GaussianInteger>>& b) {
    size_t n = a.size();
    std::vector<std::vector<GaussianInteger>> out(n, std::vector<GaussianInteger>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) out[i][j] = out[i][j] + a[i][k] * b[k][j];
        }
    return out;
}

// Lexicographically first subset of {0..D-1} of the given size whose
// complement indexes a nonsingular minor of the retired rows of `a`.
std::vector<long> choose_replenish_set(const std::vector<std::vector<GaussianInteger>>& a,
                                       long frozen, long subset_size) {
    const long D = static_cast<long>(a.size());
    std::vector<long> pick(static_cast<size_t>(subset_size));
    std::iota(pick.begin(), pick.end(), 0);
    auto independent = [&] {
        std::vector<bool> in_set(static_cast<size_t>(D), false);
        for (long idx : pick) in_set[size_t(idx)] = true;
        std::vector<CoeffVector> minor;
        for (long r = 0; r < frozen; ++r) {
            CoeffVector row;
            for (long col = 0; col < D; ++col)
                if (!in_set[size_t(col)]) row.push_back(GaussianRational(a[size_t(r)][size_t(col)]));
            minor.push_back(std::move(row));
        }
        return rank_of(std::move(minor)) == frozen;
    };
    for (;;) {
        if (independent()) return pick;
        // next combination in lexicographic order
        long i = subset_size - 1;
        while (i >= 0 && pick[size_t(i)] == D - subset_size + i) --i;
        if (i < 0) throw DependentReplenish("no admissible replenishment index set");
        ++pick[size_t(i)];
        for (long t = i + 1; t < subset_size; ++t) pick[size_t(t)] = pick[size_t(t - 1)] + 1;
    }
}

}  // namespace

std::vector<std::string> parameter_warnings(const OrthoParams& params) {
    std::vector<std::string> out;
    const long d = params.target_dim;
    if (params.h < d)
        out.push_back("h = " + std::to_string(params.h) + " is below the target dimension " +
                      std::to_string(d) + "; the suboptimality certificate needs h >= " +
                      std::to_string(d));
    // g must exceed (1/2)(sqrt((d-1)^2 + 4d(d-1)) + (d-1))
    BigInt lhs = 2 * BigInt(params.g) - BigInt(d - 1);
    bool ok = lhs > 0 && lhs * lhs > BigInt(d - 1) * (d - 1) + 4 * BigInt(d) * (d - 1);
    if (!ok)
        out.push_back("g = " + std::to_string(params.g) +
                      " is below the multidimensional convergence threshold for target "
                      "dimension " +
                      std::to_string(d));
    return out;
}

SolutionSet run_pipeline(const KernelBasis& basis, const WeightSpec& spec,
                         const OrthoParams& params) {
    const long D = basis.D;
    SolutionSet out;
    out.D = D;
    if (D == 0) return out;
    if (params.target_dim < 1) throw SchemaError("target_dim must be >= 1");
    if (params.target_dim > D)
        throw SolverError("TargetDimTooLarge",
                          "target_dim exceeds the kernel dimension " + std::to_string(D));

    Forms forms(spec);
    std::vector<CoeffVector> f_int;
    f_int.reserve(static_cast<size_t>(D));
    for (const auto& v : basis.vectors) f_int.push_back(integerize(v));
    for (const auto& v : f_int)
        if (forms.inner_l2K(v, v).re == 0)
            throw Error("Internal", "kernel vector with zero truncated norm");

    const long target = params.target_dim;
    const long total_stages = target + (params.compute_bound_data ? 1 : 0);

    std::vector<CoeffVector> cur = f_int;
    std::vector<std::vector<GaussianInteger>> a = GramPair::identity(D).c;
    GramPair gram = gram_init(forms, cur);

    for (long stage = 0; stage < total_stages; ++stage) {
        const long frozen = stage;
        if (frozen >= D) break;

        for (long j = 0; j < D; ++j)
            for (long m = 0; m < D; ++m)
                gram.c[size_t(j)][size_t(m)] =
                    GaussianInteger{BigInt(j == m ? 1 : 0), BigInt(0)};

        StageLog log;
        OrthoParams sub = params;
        if (frozen > 0) {
            PhaseEngine pre(gram, FormKind::l2K, frozen, sub, log.pre_l2);
            pre.run_preliminary();
            out.max_row_doublings = std::max(out.max_row_doublings, pre.max_doublings());
            PhaseEngine strong(gram, FormKind::l2K, frozen, sub, log.strong_l2);
            strong.run_strong(params.g);
            out.max_row_doublings = std::max(out.max_row_doublings, strong.max_doublings());
        }
        {
            PhaseEngine pre(gram, FormKind::QN, frozen, sub, log.pre_qn);
            pre.run_preliminary();
            PhaseEngine strong(gram, FormKind::QN, frozen, sub, log.strong_qn);
            strong.run_strong(params.h);
            out.max_row_doublings = std::max(out.max_row_doublings, strong.max_doublings());
        }
        out.log.push_back(log);

        // materialize the active rows and fold the stage combination into
        // the cumulative coefficients over the original integer basis
        std::vector<CoeffVector> next = cur;
        parallel_for(static_cast<size_t>(D - frozen), [&](size_t t) {
            long j = frozen + static_cast<long>(t);
            next[size_t(j)] = combine_rows(gram.c[size_t(j)], cur);
        });
        cur = std::move(next);
        a = multiply_int(gram.c, a);

        if (stage < target) {
            long pick = select_min_ratio(gram, frozen);
            if (pick != frozen) {
                std::swap(cur[size_t(pick)], cur[size_t(frozen)]);
                std::swap(a[size_t(pick)], a[size_t(frozen)]);
                std::swap(gram.p[size_t(pick)], gram.p[size_t(frozen)]);
                std::swap(gram.q[size_t(pick)], gram.q[size_t(frozen)]);
                for (long r = 0; r < D; ++r) {
                    std::swap(gram.p[size_t(r)][size_t(pick)], gram.p[size_t(r)][size_t(frozen)]);
                    std::swap(gram.q[size_t(r)][size_t(pick)], gram.q[size_t(r)][size_t(frozen)]);
                }
            }
            out.sigma.push_back({gram.p_diag(frozen), gram.q_diag(frozen)});

            if (stage + 1 < total_stages && frozen + 1 < D) {
                auto pick_set = choose_replenish_set(a, frozen + 1, D - frozen - 1);
                for (size_t t = 0; t < pick_set.size(); ++t) {
                    long row = frozen + 1 + static_cast<long>(t);
                    cur[size_t(row)] = f_int[size_t(pick_set[t])];
                    for (long mcol = 0; mcol < D; ++mcol)
                        a[size_t(row)][size_t(mcol)] = GaussianInteger{
                            BigInt(mcol == pick_set[t] ? 1 : 0), BigInt(0)};
                }
                // refresh Gram entries touching the replaced rows
                std::vector<std::pair<long, long>> pairs;
                for (long row = frozen + 1; row < D; ++row)
                    for (long mcol = 0; mcol < D; ++mcol) pairs.emplace_back(row, mcol);
                parallel_for(pairs.size(), [&](size_t idx) {
                    auto [row, mcol] = pairs[idx];
                    gram.p[size_t(row)][size_t(mcol)] =
                        forms.inner_QN(cur[size_t(row)], cur[size_t(mcol)]);
                    gram.q[size_t(row)][size_t(mcol)] =
                        forms.inner_l2K(cur[size_t(row)], cur[size_t(mcol)]);
                });
                for (long row = frozen + 1; row < D; ++row)
                    for (long mcol = 0; mcol < D; ++mcol) {
                        gram.p[size_t(mcol)][size_t(row)] = gram.p[size_t(row)][size_t(mcol)].conj();
                        gram.q[size_t(mcol)][size_t(row)] = gram.q[size_t(row)][size_t(mcol)].conj();
                    }
            }
        } else {
            // extra bound-data round: keep the reduced active rows
            for (long j = frozen; j < D; ++j) {
                out.residual.push_back(cur[size_t(j)]);
                out.residual_sigma.push_back({gram.p_diag(j), gram.q_diag(j)});
            }
        }
    }

    out.Dl2 = target;
    for (long dIdx = 0; dIdx < target; ++dIdx) {
        out.G.push_back(cur[size_t(dIdx)]);
        out.G_trunc.push_back(truncate_K(cur[size_t(dIdx)], spec.K));
    }
    out.combination = a;
    return out;
}

}  // namespace wavode
