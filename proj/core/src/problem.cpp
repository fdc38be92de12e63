#include "wavode/problem.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wavode/decimal.hpp"

namespace wavode {

namespace {

using Json = nlohmann::ordered_json;

void require_keys(const Json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw SchemaError(where + " must be a JSON object");
    for (const auto& [key, value] : obj.items())
        if (allowed.find(key) == allowed.end())
            throw SchemaError("unknown key '" + key + "' in " + where);
}

long get_long(const Json& obj, const std::string& where, const std::string& key,
              std::optional<long> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw SchemaError(where + " is missing required key '" + key + "'");
    }
    const Json& v = obj.at(key);
    if (!v.is_number_integer()) throw SchemaError(where + "." + key + " must be an integer");
    return v.get<long>();
}

bool get_bool(const Json& obj, const std::string& where, const std::string& key,
              bool fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& v = obj.at(key);
    if (!v.is_boolean()) throw SchemaError(where + "." + key + " must be a boolean");
    return v.get<bool>();
}

BigInt get_bigint(const Json& obj, const std::string& where, const std::string& key,
                  const BigInt& fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& v = obj.at(key);
    if (v.is_number_integer()) return BigInt(v.get<long>());
    if (v.is_string()) {
        try {
            return BigInt(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw SchemaError(where + "." + key + " is not an integer literal");
        }
    }
    throw SchemaError(where + "." + key + " must be an integer or integer string");
}

BigRational get_rational_field(const Json& v, const std::string& where) {
    if (!v.is_string()) throw SchemaError(where + " must be a rational string \"a/b\"");
    return rational_from_string(v.get<std::string>());
}

GaussianRational parse_scalar(const Json& v, const std::string& where) {
    if (v.is_string()) return GaussianRational(rational_from_string(v.get<std::string>()));
    if (v.is_object()) {
        require_keys(v, where, {"re", "im"});
        GaussianRational z;
        if (v.contains("re")) z.re = get_rational_field(v.at("re"), where + ".re");
        if (v.contains("im")) z.im = get_rational_field(v.at("im"), where + ".im");
        return z;
    }
    throw SchemaError(where + " must be a rational string or {\"re\",\"im\"} object");
}

Json scalar_json(const GaussianRational& z) {
    Json out = Json::object();
    out["re"] = rational_to_string(z.re);
    out["im"] = rational_to_string(z.im);
    return out;
}

ODEOperator parse_operator(const Json& obj) {
    require_keys(obj, "operator", {"M", "k0", "k0d", "q"});
    ODEOperator op;
    op.M = static_cast<int>(get_long(obj, "operator", "M"));
    op.basis.k0 = get_long(obj, "operator", "k0");
    op.basis.k0d = get_long(obj, "operator", "k0d");
    if (!obj.contains("q") || !obj.at("q").is_array())
        throw SchemaError("operator.q must be an array of coefficient arrays");
    const Json& q = obj.at("q");
    if (op.M < 0 || q.size() != static_cast<size_t>(op.M) + 1)
        throw SchemaError("operator.q must hold exactly M+1 polynomials");
    for (size_t m = 0; m < q.size(); ++m) {
        if (!q[m].is_array()) throw SchemaError("operator.q entries must be arrays");
        std::vector<GaussianRational> poly;
        for (size_t j = 0; j < q[m].size(); ++j)
            poly.push_back(parse_scalar(q[m][j], "operator.q[" + std::to_string(m) + "][" +
                                                     std::to_string(j) + "]"));
        op.polys.push_back(std::move(poly));
    }
    return op;
}

SolverConfig parse_solver(const Json& obj) {
    require_keys(obj, "solver",
                 {"N", "K", "J", "weight_base", "h", "g", "target_dim",
                  "compute_bound_data", "flags"});
    SolverConfig cfg;
    cfg.N = get_long(obj, "solver", "N");
    if (cfg.N < 0) throw SchemaError("solver.N must be nonnegative");
    if (obj.contains("K")) cfg.K = get_long(obj, "solver", "K");
    if (obj.contains("J")) cfg.J = get_long(obj, "solver", "J");
    cfg.weight_base = get_bigint(obj, "solver", "weight_base", cfg.weight_base);
    cfg.h = get_long(obj, "solver", "h", cfg.h);
    cfg.g = get_long(obj, "solver", "g", cfg.g);
    if (cfg.h < 2 || cfg.g < 2) throw SchemaError("solver.h and solver.g must be >= 2");
    cfg.target_dim = get_long(obj, "solver", "target_dim", cfg.target_dim);
    cfg.compute_bound_data = get_bool(obj, "solver", "compute_bound_data", false);
    if (obj.contains("flags")) {
        const Json& flags = obj.at("flags");
        require_keys(flags, "solver.flags",
                     {"weight_mu_printed_sign", "p0_section5", "interleave_reduce_every",
                      "strict_table_scale", "max_iterations", "sigma_jump_factor",
                      "bound_verbatim_sums"});
        cfg.weight_mu_printed_sign =
            get_bool(flags, "solver.flags", "weight_mu_printed_sign", false);
        cfg.p0_section5 = get_bool(flags, "solver.flags", "p0_section5", false);
        cfg.interleave_reduce_every =
            get_long(flags, "solver.flags", "interleave_reduce_every", {0});
        cfg.strict_table_scale =
            get_bigint(flags, "solver.flags", "strict_table_scale", BigInt(0));
        cfg.max_iterations = get_long(flags, "solver.flags", "max_iterations", {1000000});
        cfg.sigma_jump_factor =
            get_bigint(flags, "solver.flags", "sigma_jump_factor", BigInt(1000000));
        cfg.bound_verbatim_sums = get_bool(flags, "solver.flags", "bound_verbatim_sums", false);
    }
    return cfg;
}

std::pair<long, long> parse_index_pair(const Json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
        !v[1].is_number_integer())
        throw SchemaError(where + " must be a pair of integer indices");
    return {v[0].get<long>(), v[1].get<long>()};
}

OutputRequests parse_outputs(const Json& obj) {
    require_keys(obj, "outputs", {"coeffs", "ratios", "points", "plot", "bound"});
    OutputRequests out;
    if (obj.contains("coeffs")) {
        require_keys(obj.at("coeffs"), "outputs.coeffs", {"path"});
        out.coeffs_path = obj.at("coeffs").at("path").get<std::string>();
    }
    if (obj.contains("ratios")) {
        const Json& r = obj.at("ratios");
        require_keys(r, "outputs.ratios", {"path", "pairs", "digits"});
        RatioRequest req;
        req.path = r.at("path").get<std::string>();
        for (const auto& pr : r.at("pairs"))
            req.pairs.push_back(parse_index_pair(pr, "outputs.ratios.pairs"));
        req.digits = static_cast<int>(get_long(r, "outputs.ratios", "digits", {12}));
        out.ratios = std::move(req);
    }
    if (obj.contains("points")) {
        const Json& r = obj.at("points");
        require_keys(r, "outputs.points", {"path", "pairs", "digits"});
        PointsRequest req;
        req.path = r.at("path").get<std::string>();
        for (const auto& pr : r.at("pairs")) {
            if (!pr.is_array() || pr.size() != 2)
                throw SchemaError("outputs.points.pairs entries must be [x0, x1]");
            req.pairs.emplace_back(get_rational_field(pr[0], "outputs.points"),
                                   get_rational_field(pr[1], "outputs.points"));
        }
        req.digits = static_cast<int>(get_long(r, "outputs.points", "digits", {12}));
        out.points = std::move(req);
    }
    if (obj.contains("plot")) {
        const Json& r = obj.at("plot");
        require_keys(r, "outputs.plot", {"path", "grid", "digits", "normalization"});
        PlotRequest req;
        req.path = r.at("path").get<std::string>();
        const Json& grid = r.at("grid");
        require_keys(grid, "outputs.plot.grid", {"from", "to", "step"});
        req.from = get_rational_field(grid.at("from"), "outputs.plot.grid.from");
        req.to = get_rational_field(grid.at("to"), "outputs.plot.grid.to");
        req.step = get_rational_field(grid.at("step"), "outputs.plot.grid.step");
        if (req.step <= 0) throw SchemaError("outputs.plot.grid.step must be positive");
        req.digits = static_cast<int>(get_long(r, "outputs.plot", "digits", {6}));
        if (r.contains("normalization")) {
            std::string norm = r.at("normalization").get<std::string>();
            if (norm == "raw")
                req.normalization = PlotScale::raw;
            else if (norm == "leading")
                req.normalization = PlotScale::leading;
            else if (norm == "paper")
                req.normalization = PlotScale::paper;
            else
                throw SchemaError("outputs.plot.normalization must be paper, leading or raw");
        }
        out.plot = std::move(req);
    }
    if (obj.contains("bound")) {
        const Json& r = obj.at("bound");
        require_keys(r, "outputs.bound", {"path", "delta_k", "n_ref", "digits"});
        BoundRequest req;
        req.path = r.at("path").get<std::string>();
        if (r.contains("delta_k")) req.delta_k = r.at("delta_k").get<std::string>();
        if (r.contains("n_ref")) req.n_ref = get_long(r, "outputs.bound", "n_ref");
        req.digits = static_cast<int>(get_long(r, "outputs.bound", "digits", {50}));
        out.bound = std::move(req);
    }
    return out;
}

}  // namespace

Problem parse_problem(const std::string& json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    require_keys(root, "problem", {"operator", "solver", "outputs"});
    if (!root.contains("operator") || !root.contains("solver"))
        throw SchemaError("problem requires operator and solver sections");
    Problem p;
    p.op = parse_operator(root.at("operator"));
    p.solver = parse_solver(root.at("solver"));
    if (root.contains("outputs")) p.outputs = parse_outputs(root.at("outputs"));
    if (p.outputs.bound) p.solver.compute_bound_data = true;
    return p;
}

Problem load_problem(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw SchemaError("cannot read problem file " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

WeightSpec make_weight_spec(const Problem& problem, long p0) {
    WeightSpec spec;
    spec.N = problem.solver.N;
    spec.k0 = problem.op.basis.k0;
    spec.K = problem.solver.K.value_or(WeightSpec::default_K(spec.N, spec.k0));
    spec.J = problem.solver.J.value_or(WeightSpec::default_J(spec.N, spec.k0));
    spec.base = problem.solver.weight_base;
    spec.mu_folded_up = !problem.solver.weight_mu_printed_sign;
    spec.validate(p0);
    return spec;
}

OrthoParams make_ortho_params(const SolverConfig& config) {
    OrthoParams params;
    params.h = config.h;
    params.g = config.g;
    params.target_dim = config.target_dim;
    params.compute_bound_data = config.compute_bound_data;
    params.max_iterations = config.max_iterations;
    params.strict_table_scale = config.strict_table_scale;
    return params;
}

namespace {

// Midway basis reduction during the band extension (optional): shrinks the
// integers without changing the solution space. Works against the final
// weighted form, which is well-defined on the shorter vectors.
KernelBasis interleave_reduce(const KernelBasis& basis, const WeightSpec& spec,
                              const OrthoParams& params) {
    std::vector<CoeffVector> ints;
    ints.reserve(basis.vectors.size());
    for (const auto& v : basis.vectors) ints.push_back(integerize(v));
    if (std::getenv("WAVODE_TRACE") != nullptr) {
        size_t max_bits = 0;
        for (const auto& v : ints)
            for (const auto& z : v)
                max_bits = std::max({max_bits, mpz_sizeinbase(z.re.get_num_mpz_t(), 2),
                                     mpz_sizeinbase(z.im.get_num_mpz_t(), 2)});
        std::cerr << "[trace]   midway entries up to " << max_bits << " bits\n";
    }
    Forms forms(spec);
    GramPair gram = gram_init(forms, ints);
    PhaseStats pre_stats, strong_stats;
    gram = reduce_preliminary(std::move(gram), FormKind::QN, 0, params, &pre_stats);
    gram = reduce_strong(std::move(gram), FormKind::QN, params.h, 0, params, &strong_stats);
    if (std::getenv("WAVODE_TRACE") != nullptr)
        std::cerr << "[trace]   midway reduce: pre " << pre_stats.passes << "p/"
                  << pre_stats.reductions << "r, strong " << strong_stats.passes << "p/"
                  << strong_stats.reductions << "r/" << strong_stats.doublings << "d\n";

    KernelBasis out = basis;
    for (long j = 0; j < basis.D; ++j) {
        CoeffVector combo(ints[0].size());
        for (long m = 0; m < basis.D; ++m) {
            const GaussianInteger& z = gram.c[size_t(j)][size_t(m)];
            if (z.is_zero()) continue;
            GaussianRational zq{BigRational(z.re), BigRational(z.im)};
            for (size_t n = 0; n < combo.size(); ++n) combo[n] += zq * ints[size_t(m)][n];
        }
        out.vectors[size_t(j)] = std::move(combo);
    }
    return out;
}

}  // namespace

namespace {

struct TraceTimer {
    bool on = std::getenv("WAVODE_TRACE") != nullptr;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    void mark(const std::string& label) {
        if (!on) return;
        auto now = std::chrono::steady_clock::now();
        std::cerr << "[trace] " << label << " +"
                  << std::chrono::duration_cast<std::chrono::milliseconds>(now - start).count()
                  << "ms\n";
        start = now;
    }
};

}  // namespace

SolveResult solve_problem(const Problem& problem) {
    TraceTimer trace;
    validate_operator(problem.op);
    BetaTable beta = compute_beta(problem.op);

    SolveResult result;
    result.ell0 = beta.ell0();
    result.j0 = beta.j0();
    result.p0 = beta.p0() + (problem.solver.p0_section5 ? 1 : 0);

    result.weights = make_weight_spec(problem, result.p0);
    result.ortho = make_ortho_params(problem.solver);

    KernelBasis head = initial_basis(beta, problem.solver.p0_section5 ? 1 : 0);
    result.D = head.D;
    if (problem.solver.N < result.p0)
        throw SchemaError("solver.N must be at least p0 = " + std::to_string(result.p0));

    KernelBasis full;
    const long every = problem.solver.interleave_reduce_every;
    if (every > 0) {
        KernelBasis cur = head;
        long reached = result.p0;
        while (reached < problem.solver.N) {
            long next = std::min(problem.solver.N, reached + every);
            cur = extend_recursion(cur, beta, next);
            trace.mark("extend to " + std::to_string(next));
            reached = next;
            if (reached < problem.solver.N) {
                cur = interleave_reduce(cur, result.weights, result.ortho);
                trace.mark("reduce at " + std::to_string(reached));
            }
        }
        full = std::move(cur);
    } else {
        full = extend_recursion(head, beta, problem.solver.N);
    }
    trace.mark("band extension");

    result.warnings = parameter_warnings(result.ortho);
    result.sol = run_pipeline(full, result.weights, result.ortho);
    trace.mark("pipeline");

    // dimension diagnostic: flag the first big jump in the ordered ratios
    std::vector<SigmaRatio> ordered = result.sol.sigma;
    std::vector<SigmaRatio> rest = result.sol.residual_sigma;
    std::sort(rest.begin(), rest.end(), [](const SigmaRatio& a, const SigmaRatio& b) {
        return cmp_sq_ratio(a.num, a.den, b.num, b.den) < 0;
    });
    ordered.insert(ordered.end(), rest.begin(), rest.end());
    result.suggested_dim = static_cast<long>(ordered.size());
    const BigRational jump{problem.solver.sigma_jump_factor};
    for (size_t i = 0; i + 1 < ordered.size(); ++i) {
        if (cmp_sq_ratio(ordered[i + 1].num, ordered[i + 1].den, jump * ordered[i].num,
                         ordered[i].den) > 0) {
            result.suggested_dim = static_cast<long>(i) + 1;
            break;
        }
    }
    return result;
}

BigRational oracle_delta_K(const Problem& problem, long K, long N_ref) {
    Problem ref = problem;
    ref.solver.N = N_ref;
    ref.solver.K.reset();
    ref.solver.J.reset();
    ref.solver.compute_bound_data = false;
    ref.solver.target_dim = std::min<long>(problem.solver.target_dim, 1);
    ref.outputs = OutputRequests{};
    SolveResult res = solve_problem(ref);
    if (res.sol.G.empty()) throw SolverError("EmptyKernel", "reference solve found no solutions");

    const CoeffVector& f = res.sol.G.front();
    BigRational head, tail;
    for (long n = 0; n < static_cast<long>(f.size()); ++n) {
        BigRational mag = f[size_t(n)].norm_sq();
        if (n <= K)
            head += mag;
        else
            tail += mag;
    }
    if (head == 0) throw SolverError("EmptyKernel", "reference solution vanishes below K");
    return tail / head;
}

namespace {

Json sigma_json(const SigmaRatio& s) {
    Json out = Json::object();
    out["num"] = rational_to_string(s.num);
    out["den"] = rational_to_string(s.den);
    out["decimal"] = s.den == 0 ? "inf" : decimal_render(s.num / s.den, BigRational(1), 6);
    return out;
}

Json stats_json(const PhaseStats& s) {
    Json out = Json::object();
    out["passes"] = s.passes;
    out["reductions"] = s.reductions;
    out["doublings"] = s.doublings;
    return out;
}

}  // namespace

std::string summary_json(const SolveResult& result, const std::vector<std::string>& written) {
    Json out = Json::object();
    out["D"] = result.D;
    out["target_dim"] = result.sol.Dl2;
    out["ell0"] = result.ell0;
    out["j0"] = result.j0;
    out["p0"] = result.p0;
    out["N"] = result.weights.N;
    out["K"] = result.weights.K;
    out["J"] = result.weights.J;
    out["sigma"] = Json::array();
    for (const auto& s : result.sol.sigma) out["sigma"].push_back(sigma_json(s));
    out["residual_sigma"] = Json::array();
    for (const auto& s : result.sol.residual_sigma)
        out["residual_sigma"].push_back(sigma_json(s));
    out["suggested_dim"] = result.suggested_dim;
    out["iterations"] = Json::array();
    for (const auto& stage : result.sol.log) {
        Json s = Json::object();
        s["pre_l2"] = stats_json(stage.pre_l2);
        s["strong_l2"] = stats_json(stage.strong_l2);
        s["pre_qn"] = stats_json(stage.pre_qn);
        s["strong_qn"] = stats_json(stage.strong_qn);
        out["iterations"].push_back(s);
    }
    out["max_row_doublings"] = result.sol.max_row_doublings;
    out["warnings"] = result.warnings;
    out["outputs_written"] = written;
    return out.dump(2) + "\n";
}

std::string coeffs_json(const SolveResult& result) {
    Json out = Json::object();
    out["k0"] = result.weights.k0;
    out["N"] = result.weights.N;
    out["K"] = result.weights.K;
    out["normalization"] = "raw";
    out["solutions"] = Json::array();
    for (const auto& g : result.sol.G) {
        Json coeffs = Json::array();
        for (const auto& z : g) coeffs.push_back(scalar_json(z));
        out["solutions"].push_back(std::move(coeffs));
    }
    out["truncated"] = Json::array();
    for (const auto& g : result.sol.G_trunc) {
        Json coeffs = Json::array();
        for (const auto& z : g) coeffs.push_back(scalar_json(z));
        out["truncated"].push_back(std::move(coeffs));
    }
    return out.dump(2) + "\n";
}

std::string ratios_json(const SolveResult& result, const RatioRequest& req) {
    if (result.sol.G.empty()) throw SolverError("EmptyKernel", "no solution to take ratios of");
    EvaluatedSolution sol{result.sol.G.front(), result.weights.k0, Normalization::raw};
    Json out = Json::object();
    out["pairs"] = Json::array();
    for (const auto& [n, m] : req.pairs) {
        GaussianRational r = ratio_coeffs(sol, n, m);
        Json entry = Json::object();
        entry["n"] = n;
        entry["m"] = m;
        entry["value"] = scalar_json(r);
        entry["re_decimal"] = decimal_render(r.re, BigRational(1), req.digits);
        entry["im_decimal"] = decimal_render(r.im, BigRational(1), req.digits);
        out["pairs"].push_back(std::move(entry));
    }
    return out.dump(2) + "\n";
}

std::string points_json(const SolveResult& result, const PointsRequest& req) {
    if (result.sol.G.empty()) throw SolverError("EmptyKernel", "no solution to evaluate");
    EvaluatedSolution sol{result.sol.G.front(), result.weights.k0, Normalization::raw};
    Json out = Json::object();
    out["pairs"] = Json::array();
    for (const auto& [x0, x1] : req.pairs) {
        GaussianRational r = ratio_points(sol, x0, x1);
        Json entry = Json::object();
        entry["x0"] = rational_to_string(x0);
        entry["x1"] = rational_to_string(x1);
        entry["value"] = scalar_json(r);
        entry["re_decimal"] = decimal_render(r.re, BigRational(1), req.digits);
        entry["im_decimal"] = decimal_render(r.im, BigRational(1), req.digits);
        out["pairs"].push_back(std::move(entry));
    }
    return out.dump(2) + "\n";
}

std::string bound_json(const Problem& problem, const SolveResult& result,
                       const BoundRequest& req, bool* feasible_out) {
    BigRational delta_k;
    std::string delta_source;
    if (req.delta_k == "oracle") {
        long n_ref = req.n_ref.value_or(2 * problem.solver.N);
        BigRational sq = oracle_delta_K(problem, result.weights.K, n_ref);
        delta_k = sqrt_upper(sq, 60);
        delta_source = "oracle(N_ref=" + std::to_string(n_ref) + ")";
    } else {
        delta_k = rational_from_string(req.delta_k);
        if (delta_k < 0) throw SchemaError("delta_k must be nonnegative");
        delta_source = "user";
    }

    BoundOptions opts;
    opts.digits = req.digits;
    opts.verbatim_sums = problem.solver.bound_verbatim_sums;
    BoundReport report = bound_coeffs(result.sol, result.ortho, result.weights, opts);
    if (feasible_out != nullptr) *feasible_out = report.feasible;

    Json out = Json::object();
    out["xi_sq"] = rational_to_string(report.xi_sq);
    out["C_sq_upper"] = rational_to_string(report.C_sq_upper);
    out["Gamma_sq_lower"] = report.Gamma_sq_lower.has_value()
                                ? Json(rational_to_string(*report.Gamma_sq_lower))
                                : Json(nullptr);
    out["A"] = report.A;
    out["B"] = report.B;
    out["feasible"] = report.feasible;
    out["digits"] = report.digits;
    out["delta_k"] = rational_to_string(delta_k);
    out["delta_k_source"] = delta_source;
    if (report.feasible) {
        BigRational total = report.A_exact + report.B_exact * delta_k;
        out["bound_at_delta_k"] = decimal_render_up(total, req.digits);
    }
    return out.dump(2) + "\n";
}

std::string plot_csv(const SolveResult& result, const PlotRequest& req) {
    if (result.sol.G.empty()) throw SolverError("EmptyKernel", "no solution to plot");
    EvaluatedSolution sol{result.sol.G.front(), result.weights.k0, Normalization::raw};
    if (req.normalization == PlotScale::paper) {
        sol = normalize_paper(sol);
    } else if (req.normalization == PlotScale::leading) {
        GaussianRational lead;
        for (const auto& z : sol.coeffs)
            if (!z.is_zero()) {
                lead = z;
                break;
            }
        if (lead.is_zero()) throw SolverError("EmptyKernel", "zero solution vector");
        GaussianRational inv = GaussianRational(1L) / lead;
        for (auto& z : sol.coeffs) z = inv * z;
    }
    std::vector<BigRational> grid;
    for (BigRational x = req.from; x <= req.to; x += req.step) grid.push_back(x);
    std::ostringstream os;
    emit_plot_data(sol, grid, req.digits, os);
    return os.str();
}

}  // namespace wavode
