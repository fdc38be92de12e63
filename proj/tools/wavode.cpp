#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wavode/problem.hpp"
#include "wavode/selftest.hpp"

namespace fs = std::filesystem;
using namespace wavode;

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitValidation = 3;
constexpr int kExitSolver = 4;
constexpr int kExitInfeasibleBound = 5;

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SchemaError("cannot write " + path.string());
    out << content;
}

int run_solve(const std::string& file, const std::string& out_dir) {
    Problem problem = load_problem(file);
    SolveResult result = solve_problem(problem);

    fs::path prefix = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    std::vector<std::string> written;
    auto emit = [&](const std::string& rel, const std::string& content) {
        fs::path path = prefix / rel;
        write_file(path, content);
        written.push_back(path.string());
    };

    const OutputRequests& req = problem.outputs;
    if (req.coeffs_path) emit(*req.coeffs_path, coeffs_json(result));
    if (req.ratios) emit(req.ratios->path, ratios_json(result, *req.ratios));
    if (req.points) emit(req.points->path, points_json(result, *req.points));
    if (req.plot) emit(req.plot->path, plot_csv(result, *req.plot));
    bool bound_feasible = true;
    if (req.bound) {
        bool feasible = true;
        emit(req.bound->path, bound_json(problem, result, *req.bound, &feasible));
        bound_feasible = feasible;
    }
    std::cout << summary_json(result, written);
    return bound_feasible ? 0 : kExitInfeasibleBound;
}

int run_bound(const std::string& file, std::string delta_k, int digits,
              const std::string& out_path) {
    Problem problem = load_problem(file);
    problem.solver.compute_bound_data = true;

    BoundRequest req;
    if (problem.outputs.bound) req = *problem.outputs.bound;
    if (!delta_k.empty()) req.delta_k = delta_k;
    if (digits > 0) req.digits = digits;

    SolveResult result = solve_problem(problem);
    bool feasible = true;
    std::string report = bound_json(problem, result, req, &feasible);
    if (!out_path.empty())
        write_file(out_path, report);
    else if (!req.path.empty())
        write_file(req.path, report);
    std::cout << report;
    return feasible ? 0 : kExitInfeasibleBound;
}

int run_plot(const std::string& file, const std::string& grid, int digits,
             const std::string& norm, const std::string& out_path) {
    Problem problem = load_problem(file);
    PlotRequest req;
    if (problem.outputs.plot) req = *problem.outputs.plot;
    if (!grid.empty()) {
        auto first = grid.find(':');
        auto second = grid.find(':', first == std::string::npos ? 0 : first + 1);
        if (first == std::string::npos || second == std::string::npos)
            throw SchemaError("--grid expects from:to:step");
        req.from = rational_from_string(grid.substr(0, first));
        req.to = rational_from_string(grid.substr(first + 1, second - first - 1));
        req.step = rational_from_string(grid.substr(second + 1));
        if (req.step <= 0) throw SchemaError("--grid step must be positive");
    }
    if (digits > 0) req.digits = digits;
    if (norm == "raw")
        req.normalization = PlotScale::raw;
    else if (norm == "leading")
        req.normalization = PlotScale::leading;
    else if (norm == "paper")
        req.normalization = PlotScale::paper;
    else if (!norm.empty())
        throw SchemaError("--normalization must be paper, leading or raw");

    SolveResult result = solve_problem(problem);
    std::string csv = plot_csv(result, req);
    if (!out_path.empty())
        write_file(out_path, csv);
    else
        std::cout << csv;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact integer-arithmetic solver for Fuchsian-type linear ODEs "
                 "over a rational wavepacket basis"};
    app.require_subcommand(1);

    std::string solve_file, solve_out_dir;
    auto* solve = app.add_subcommand("solve", "solve a problem file and write its artifacts");
    solve->add_option("file", solve_file, "problem JSON file")->required();
    solve->add_option("--out-dir", solve_out_dir, "directory prefix for artifact paths");

    std::string bound_file, bound_delta, bound_out;
    int bound_digits = 0;
    auto* bound = app.add_subcommand("bound", "compute the a-posteriori error bound");
    bound->add_option("file", bound_file, "problem JSON file")->required();
    bound->add_option("--delta-k", bound_delta, "truncation tail: a rational or 'oracle'");
    bound->add_option("--digits", bound_digits, "decimal digits in the report");
    bound->add_option("--out", bound_out, "write the report here as well");

    bool inject_beta_defect = false;
    auto* selftest = app.add_subcommand("selftest", "run the embedded invariant corpus");
    selftest
        ->add_flag("--inject-beta-defect", inject_beta_defect,
                   "corrupt the coefficient table to prove the corpus can fail")
        ->group("");  // hidden test hook

    std::string plot_file, plot_grid, plot_norm, plot_out;
    int plot_digits = 0;
    auto* plot = app.add_subcommand("plot", "emit solution values over a grid as CSV");
    plot->add_option("file", plot_file, "problem JSON file")->required();
    plot->add_option("--grid", plot_grid, "grid as from:to:step (rationals)");
    plot->add_option("--digits", plot_digits, "decimal places");
    plot->add_option("--normalization", plot_norm, "paper, leading or raw");
    plot->add_option("--out", plot_out, "write CSV here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(solve_file, solve_out_dir);
        if (bound->parsed()) return run_bound(bound_file, bound_delta, bound_digits, bound_out);
        if (plot->parsed())
            return run_plot(plot_file, plot_grid, plot_digits, plot_norm, plot_out);
        if (selftest->parsed()) {
            SelfTestOptions options;
            options.inject_beta_defect = inject_beta_defect;
            SelfTestReport report = run_selftest(options);
            std::cout << report.to_json();
            if (!report.passed) {
                for (const auto& s : report.suites)
                    if (!s.passed) std::cerr << "selftest failed: " << s.name << "\n";
                return 1;
            }
            return 0;
        }
    } catch (const SchemaError& e) {
        std::cerr << e.what() << "\n";
        return kExitSchema;
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const InfeasibleParams& e) {
        std::cerr << e.what() << "\n";
        return kExitInfeasibleBound;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
