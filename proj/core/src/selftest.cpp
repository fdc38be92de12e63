#include "wavode/selftest.hpp"

#include <random>
#include <sstream>

#include <json.hpp>

#include "wavode/oracle.hpp"
#include "wavode/problem.hpp"

namespace wavode {

namespace {

using Rng = std::mt19937_64;

BigRational random_rational(Rng& rng, long bound) {
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, bound);
    return make_rational(BigInt(num(rng)), BigInt(den(rng)));
}

GaussianRational random_gaussian(Rng& rng, long bound) {
    return {random_rational(rng, bound), random_rational(rng, bound)};
}

// Random operator with small integer-complex coefficients, resampled until
// it validates; k0d is set to its largest admissible value.
ODEOperator random_operator(Rng& rng, int max_order, long max_deg) {
    std::uniform_int_distribution<int> order(1, max_order);
    std::uniform_int_distribution<long> deg(0, max_deg);
    std::uniform_int_distribution<long> coeff(-3, 3);
    std::uniform_int_distribution<long> k0_pick(0, 2);
    for (;;) {
        ODEOperator op;
        op.M = order(rng);
        op.polys.assign(static_cast<size_t>(op.M) + 1, {});
        for (int m = 0; m <= op.M; ++m) {
            long d = deg(rng);
            for (long j = 0; j <= d; ++j)
                op.polys[size_t(m)].push_back(
                    {BigRational(coeff(rng)), BigRational(coeff(rng))});
        }
        op.basis.k0 = k0_pick(rng);
        long gap = op.max_degree_gap();
        if (gap == LONG_MIN) continue;
        op.basis.k0d = op.basis.k0 - gap;
        try {
            validate_operator(op);
        } catch (const Error&) {
            continue;
        }
        return op;
    }
}

SuiteResult suite_gauss_round(Rng& rng) {
    SuiteResult r{"gauss-round-bounds", true, ""};
    auto check = [&](const GaussianRational& z) {
        GaussianInteger g = gauss_round(z);
        GaussianRational diff = z - GaussianRational(g);
        if (abs(diff.re) > BigRational(1, 2) || abs(diff.im) > BigRational(1, 2)) {
            r.passed = false;
            r.detail = "rounding residual above 1/2 at " + gaussian_to_string(z);
        }
    };
    check(GaussianRational{});
    check({make_rational(3, 5), make_rational(-3, 5)});
    check({BigRational(1, 2), BigRational(1, 2)});
    if (gauss_round({make_rational(3, 5), make_rational(-3, 5)}) !=
        GaussianInteger{BigInt(1), BigInt(-1)}) {
        r.passed = false;
        r.detail = "3/5 - (3/5)i should round to 1 - i";
    }
    if (!gauss_round({BigRational(1, 2), BigRational(1, 2)}).is_zero()) {
        r.passed = false;
        r.detail = "half-integer components must round toward zero";
    }
    for (int i = 0; i < 500 && r.passed; ++i) check(random_gaussian(rng, 40));
    return r;
}

SuiteResult suite_recursion_identities() {
    SuiteResult r{"recursion-identities", true, ""};
    std::vector<BigRational> samples = {BigRational(0), BigRational(1), BigRational(-2),
                                        make_rational(3, 7), BigRational(1, 2)};
    for (long k = 0; k <= 6 && r.passed; ++k)
        for (long ddn = -10; ddn <= 10 && r.passed; ++ddn)
            if (!check_recursion_identities(k, ddn, samples)) {
                r.passed = false;
                r.detail = "identity failed at k=" + std::to_string(k) +
                           ", ddn=" + std::to_string(ddn);
            }
    return r;
}

SuiteResult suite_envelope(Rng& rng) {
    SuiteResult r{"envelope-identity", true, ""};
    std::uniform_int_distribution<long> kk(0, 5), nn(-8, 8);
    for (int i = 0; i < 50 && r.passed; ++i) {
        long k = kk(rng), ddn = nn(rng);
        BigRational x = random_rational(rng, 9);
        BigRational lhs = psi_eval(k, ddn, x).norm_sq();
        BigRational w = x * x + 1;
        BigRational rhs(1);
        for (long t = 0; t < k + 1; ++t) rhs /= w;
        if (lhs != rhs) {
            r.passed = false;
            r.detail = "envelope mismatch at k=" + std::to_string(k);
        }
    }
    return r;
}

SuiteResult suite_oracle_equivalence(Rng& rng, bool inject_defect) {
    SuiteResult r{"oracle-equivalence", true, ""};
    for (int rep = 0; rep < 3 && r.passed; ++rep) {
        ODEOperator op = random_operator(rng, 2, 2);
        BetaTable beta = compute_beta(op);
        if (inject_defect) beta.entry(0, 0) += GaussianRational(1L);
        for (long m = 0; m <= 20 && r.passed; ++m)
            for (long n = 0; n <= 20 && r.passed; ++n)
                if (beta.matrix_element(m, n) != oracle_matrix_element(op, m, n)) {
                    r.passed = false;
                    r.detail = "matrix element (" + std::to_string(m) + "," +
                               std::to_string(n) + ") disagrees with the oracle";
                }
    }
    return r;
}

SuiteResult suite_quasi_orth(Rng& rng) {
    SuiteResult r{"quasi-orth-postconditions", true, ""};
    std::uniform_int_distribution<long> dim(2, 4), len(6, 20), val(-9, 9);
    for (int rep = 0; rep < 20 && r.passed; ++rep) {
        long D = dim(rng), L = len(rng);
        std::vector<CoeffVector> vecs;
        for (long d = 0; d < D; ++d) {
            CoeffVector v(static_cast<size_t>(L));
            for (long n = 0; n < L; ++n)
                v[size_t(n)] = {BigRational(val(rng)), BigRational(val(rng))};
            v[size_t(d)] += GaussianRational(BigRational(20));  // keep them independent
            vecs.push_back(std::move(v));
        }
        WeightSpec spec;
        spec.N = L - 1;
        spec.K = std::max<long>(1, WeightSpec::default_K(spec.N, 0));
        spec.J = std::max(spec.K, WeightSpec::default_J(spec.N, 0));
        spec.base = 100;
        const long h = 16;
        GramPair gram = gram_init(spec, vecs);
        try {
            gram = reduce_preliminary(std::move(gram), FormKind::QN, 0);
            gram = reduce_strong(std::move(gram), FormKind::QN, h, 0);
        } catch (const IterationCapExceeded&) {
            r.passed = false;
            r.detail = "reduction did not halt within the pass cap";
            break;
        }
        const BigRational h_sq{h * h};
        for (long j = 0; j < D && r.passed; ++j)
            for (long l = 0; l < j; ++l)
                if (h_sq * gram.p[size_t(j)][size_t(l)].norm_sq() >=
                    gram.p_diag(j) * gram.p_diag(l)) {
                    r.passed = false;
                    r.detail = "pairwise direction-cosine bound violated";
                }
    }
    return r;
}

SuiteResult suite_weights(Rng& rng) {
    SuiteResult r{"weight-monotonicity", true, ""};
    WeightSpec spec;
    spec.N = 40;
    spec.k0 = 2;
    spec.K = WeightSpec::default_K(spec.N, spec.k0);
    spec.J = WeightSpec::default_J(spec.N, spec.k0);
    spec.base = 1000;
    BigRational plateau = weight(spec, spec.N);
    for (long n = 0; n <= spec.N && r.passed; ++n) {
        BigRational w = weight(spec, n);
        if (w < 1) {
            r.passed = false;
            r.detail = "weight below one";
        }
        if (n <= spec.K && w != 1) {
            r.passed = false;
            r.detail = "weight must be one below K";
        }
        if (n >= spec.J && w != plateau) {
            r.passed = false;
            r.detail = "weight must sit on the plateau above J";
        }
    }
    for (int rep = 0; rep < 20 && r.passed; ++rep) {
        CoeffVector f(static_cast<size_t>(spec.N) + 1);
        for (auto& z : f) z = random_gaussian(rng, 6);
        BigRational omega = inner_QN(spec, f, f).re;
        BigRational plain = 0;
        for (const auto& z : f) plain += z.norm_sq();
        if (omega < plain) {
            r.passed = false;
            r.detail = "weighted form fell below the plain squared norm";
        }
    }
    return r;
}

SuiteResult suite_band_residual() {
    SuiteResult r{"kernel-band-residual", true, ""};
    ODEOperator op = example_operator_1();
    BetaTable beta = compute_beta(op);
    KernelBasis head = initial_basis(beta);
    KernelBasis full = extend_recursion(head, beta, 29);
    for (const auto& v : full.vectors)
        for (long m = 0; m + full.ell0 <= 29 && r.passed; ++m) {
            GaussianRational acc;
            for (long n = std::max<long>(0, m - full.ell0); n <= m + full.ell0; ++n)
                acc += beta.matrix_element(m, n) * v[size_t(n)];
            if (!acc.is_zero()) {
                r.passed = false;
                r.detail = "band residual nonzero at row " + std::to_string(m);
            }
        }
    return r;
}

SuiteResult suite_determinism() {
    SuiteResult r{"determinism", true, ""};
    Problem p;
    p.op = example_operator_1();
    p.solver.N = 29;
    auto run = [&] {
        SolveResult res = solve_problem(p);
        return summary_json(res, {}) + coeffs_json(res);
    };
    if (run() != run()) {
        r.passed = false;
        r.detail = "repeated solves produced different bytes";
    }
    return r;
}

}  // namespace

std::string SelfTestReport::to_json() const {
    nlohmann::ordered_json out;
    out["suites"] = nlohmann::ordered_json::array();
    for (const auto& s : suites) {
        nlohmann::ordered_json e;
        e["name"] = s.name;
        e["passed"] = s.passed;
        e["detail"] = s.detail;
        out["suites"].push_back(e);
    }
    out["passed"] = passed;
    return out.dump(2) + "\n";
}

SelfTestReport run_selftest(const SelfTestOptions& options) {
    SelfTestReport report;
    Rng rng(20240817);
    report.suites.push_back(suite_gauss_round(rng));
    report.suites.push_back(suite_recursion_identities());
    report.suites.push_back(suite_envelope(rng));
    report.suites.push_back(suite_oracle_equivalence(rng, options.inject_beta_defect));
    report.suites.push_back(suite_quasi_orth(rng));
    report.suites.push_back(suite_weights(rng));
    report.suites.push_back(suite_band_residual());
    report.suites.push_back(suite_determinism());
    report.passed = true;
    for (const auto& s : report.suites)
        if (!s.passed) report.passed = false;
    return report;
}

}  // namespace wavode
