#pragma once

#include <string>
#include <vector>

#include "wavode/forms.hpp"
#include "wavode/kernel.hpp"

namespace wavode {

enum class FormKind { QN, l2K };

struct OrthoParams {
    long h = 64;  // direction-cosine bound under the weighted form
    long g = 64;  // direction-cosine bound under the plain truncated form
    long max_iterations = 1000000;
    long target_dim = 1;
    bool compute_bound_data = false;
    // 0 = exact pair test; otherwise the coarser floor-scaled test with this
    // divisor is used inside the strong phases.
    BigInt strict_table_scale{0};
};

struct PhaseStats {
    long passes = 0;
    long reductions = 0;
    long doublings = 0;
};

struct StageLog {
    PhaseStats pre_l2, strong_l2, pre_qn, strong_qn;
};

struct SigmaRatio {
    BigRational num;  // squared weighted norm
    BigRational den;  // squared truncated norm
};

struct SolutionSet {
    long D = 0;
    long Dl2 = 0;
    std::vector<CoeffVector> G;        // frozen solutions, length N+1
    std::vector<CoeffVector> G_trunc;  // their truncations to K+1
    std::vector<SigmaRatio> sigma;
    std::vector<CoeffVector> residual;  // final reduced non-frozen rows
    std::vector<SigmaRatio> residual_sigma;
    std::vector<std::vector<GaussianInteger>> combination;  // rows over F_int
    std::vector<StageLog> log;
    long max_row_doublings = 0;
};

// One preliminary sweep family: sort active rows by the chosen diagonal,
// then reduce each row against the rows below it, iterated to a fixed
// point. The plain-form sweep also reduces active rows against retired
// rows; the weighted-form sweep stays within the active block.
GramPair reduce_preliminary(GramPair gram, FormKind form, long active_from,
                            const OrthoParams& params = {}, PhaseStats* stats = nullptr);

// The doubling sweep: while some pair violates
// bound^2 |<v_j,v_l>|^2 < |v_j|^2 |v_l|^2, scale v_j by 2 and reduce.
GramPair reduce_strong(GramPair gram, FormKind form, long bound, long active_from,
                       const OrthoParams& params = {}, PhaseStats* stats = nullptr);

// Index of the active row minimizing p_dd/q_dd (exact cross-multiplied
// comparison, ties to the lowest index). Rows with q_dd = 0 never win;
// all-zero diagonals raise AllDegenerate.
long select_min_ratio(const GramPair& gram, long active_from);

CoeffVector truncate_K(const CoeffVector& v, long K);

// Full extraction loop: alternating plain/weighted quasi-orthogonalization,
// minimum-ratio freezing and replenishment from the original integer basis,
// followed by truncation. With compute_bound_data one extra reduction round
// runs after the last freeze so the residual rows are available.
SolutionSet run_pipeline(const KernelBasis& basis, const WeightSpec& spec,
                         const OrthoParams& params);

// Advisory checks of the orthogonality parameters against the convergence
// requirements; returns human-readable warnings, empty when fine.
std::vector<std::string> parameter_warnings(const OrthoParams& params);

}  // namespace wavode
