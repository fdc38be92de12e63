#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wavode/bound.hpp"
#include "wavode/evaluate.hpp"
#include "wavode/operator.hpp"
#include "wavode/ortho.hpp"

namespace wavode {

struct SolverConfig {
    long N = -1;
    std::optional<long> K;
    std::optional<long> J;
    BigInt weight_base{100000000};
    long h = 64;
    long g = 64;
    long target_dim = 1;
    bool compute_bound_data = false;
    // flags
    bool weight_mu_printed_sign = false;
    bool p0_section5 = false;
    long interleave_reduce_every = 0;
    BigInt strict_table_scale{0};
    long max_iterations = 1000000;
    BigInt sigma_jump_factor{1000000};
    bool bound_verbatim_sums = false;
};

struct RatioRequest {
    std::vector<std::pair<long, long>> pairs;
    int digits = 12;
    std::string path;
};

struct PointsRequest {
    std::vector<std::pair<BigRational, BigRational>> pairs;
    int digits = 12;
    std::string path;
};

// paper: rescale so the normalizing functional equals one (fails on
// solutions orthogonal to it); leading: first nonzero coefficient scaled
// to one; raw: the integer solution vector as computed.
enum class PlotScale { paper, leading, raw };

struct PlotRequest {
    BigRational from, to, step;
    int digits = 6;
    PlotScale normalization = PlotScale::paper;
    std::string path;
};

struct BoundRequest {
    std::string delta_k = "oracle";  // "oracle" or a rational literal
    std::optional<long> n_ref;       // default 2N
    int digits = 50;
    std::string path;
};

struct OutputRequests {
    std::optional<std::string> coeffs_path;
    std::optional<RatioRequest> ratios;
    std::optional<PointsRequest> points;
    std::optional<PlotRequest> plot;
    std::optional<BoundRequest> bound;
};

struct Problem {
    ODEOperator op;
    SolverConfig solver;
    OutputRequests outputs;
};

Problem parse_problem(const std::string& json_text);
Problem load_problem(const std::filesystem::path& file);

struct SolveResult {
    long D = 0;
    long ell0 = 0, j0 = 0, p0 = 0;
    WeightSpec weights;
    OrthoParams ortho;
    SolutionSet sol;
    std::vector<std::string> warnings;
    long suggested_dim = 0;
};

WeightSpec make_weight_spec(const Problem& problem, long p0);
OrthoParams make_ortho_params(const SolverConfig& config);

// Runs the full pipeline: compile, head solve, band extension (optionally
// with interleaved reduction), quasi-orthogonalization, truncation.
SolveResult solve_problem(const Problem& problem);

// Truncation-tail estimate: solves at the reference dimension and returns
// the squared tail/head ratio of the first solution at the requested K.
// An estimate, not a certified bound.
BigRational oracle_delta_K(const Problem& problem, long K, long N_ref);

// Serialized artifacts (deterministic byte content).
std::string summary_json(const SolveResult& result, const std::vector<std::string>& written);
std::string coeffs_json(const SolveResult& result);
std::string ratios_json(const SolveResult& result, const RatioRequest& req);
std::string points_json(const SolveResult& result, const PointsRequest& req);
std::string bound_json(const Problem& problem, const SolveResult& result,
                       const BoundRequest& req, bool* feasible_out = nullptr);
std::string plot_csv(const SolveResult& result, const PlotRequest& req);

}  // namespace wavode
