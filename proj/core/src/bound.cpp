#include "wavode/bound.hpp"

#include "wavode/decimal.hpp"

namespace wavode {

namespace {

constexpr long kSqrtDigits = 60;

// D / (1 - (D-1)/g), the radicand shared by several bounds.
BigRational inner_radicand(long g, long D) {
    if (g <= D - 1) throw InfeasibleParams("g must exceed D - 1 = " + std::to_string(D - 1));
    BigRational denom = BigRational(1) - make_rational(BigInt(D - 1), BigInt(g));
    return BigRational(D) / denom;
}

}  // namespace

BigRational xi_of_g(long g, long D, long Dl2) {
    if (g < 2) throw InfeasibleParams("g must be at least 2");
    BigRational s_up = sqrt_upper(inner_radicand(g, D), kSqrtDigits);
    BigRational factor = BigRational(1) - make_rational(BigInt(Dl2 - 1), BigInt(g)) * s_up;
    if (factor <= 0)
        throw InfeasibleParams("xi(g) denominator is not positive; increase g");
    BigRational outer_denom = BigRational(1) - make_rational(BigInt(D - 1), BigInt(g));
    return make_rational(BigInt(D) * Dl2, BigInt(g) * g) / (outer_denom * factor);
}

BigRational c_factor(long g, long h, long Dl2) {
    if (h <= Dl2 - 1)
        throw InfeasibleParams("h must exceed Dl2 - 1 = " + std::to_string(Dl2 - 1));
    BigRational num_rad = inner_radicand(h, Dl2);
    BigRational num = BigRational(Dl2) * sqrt_upper(num_rad, kSqrtDigits);
    BigRational g_rad_up = sqrt_upper(inner_radicand(g, Dl2), kSqrtDigits);
    BigRational denom = BigRational(1) - make_rational(BigInt(Dl2 - 1), BigInt(g)) * g_rad_up;
    if (denom <= 0)
        throw InfeasibleParams("c(g,h) denominator is not positive; increase g");
    return num / denom;
}

BoundReport bound_coeffs(const SolutionSet& sol, const OrthoParams& params,
                         const WeightSpec& spec, const BoundOptions& opts) {
    BoundReport report;
    report.digits = opts.digits;
    const long D = sol.D;
    const long Dl2 = sol.Dl2;
    if (sol.sigma.size() != static_cast<size_t>(Dl2))
        throw InfeasibleParams("solution set lacks per-solution ratio data");
    if (sol.residual_sigma.empty() && D > Dl2)
        throw InfeasibleParams("bound data missing: rerun with compute_bound_data");

    report.xi_sq = xi_of_g(params.g, D, Dl2);

    // C^2 <= sum of frozen squared ratios / (1 - ((Dl2-1)/g) sqrt(D/(1-(D-1)/g)))
    BigRational zeta_up = make_rational(BigInt(Dl2 - 1), BigInt(params.g)) *
                          sqrt_upper(inner_radicand(params.g, D), opts.sqrt_digits);
    BigRational c_denom = BigRational(1) - zeta_up;
    if (c_denom <= 0) throw InfeasibleParams("C bound denominator is not positive");
    BigRational c_sum;
    for (const auto& s : sol.sigma) {
        BigRational ratio = s.num / s.den;
        c_sum += opts.verbatim_sums ? sqrt_upper(ratio, opts.sqrt_digits) : ratio;
    }
    report.C_sq_upper = c_sum / c_denom;

    // Gamma^2 >= (1 - (D-Dl2-1)/h) / sum of residual inverse squared ratios
    if (D > Dl2) {
        BigRational g_num =
            BigRational(1) - make_rational(BigInt(D - Dl2 - 1), BigInt(params.h));
        if (g_num <= 0) throw InfeasibleParams("h too small for the Gamma bound");
        BigRational g_sum;
        for (const auto& s : sol.residual_sigma) {
            BigRational inv = s.den / s.num;
            g_sum += opts.verbatim_sums ? sqrt_upper(inv, opts.sqrt_digits) : inv;
        }
        if (g_sum == 0) throw InfeasibleParams("residual ratios degenerate");
        report.Gamma_sq_lower = g_num / g_sum;
    }

    if (!report.Gamma_sq_lower.has_value()) {
        // no residual directions: the mixture term vanishes
        report.feasible = true;
        report.A_exact = BigRational(0);
        report.B_exact = BigRational(1);
        report.A = decimal_render_up(report.A_exact, opts.digits);
        report.B = decimal_render_up(report.B_exact, opts.digits);
        return report;
    }

    report.feasible = *report.Gamma_sq_lower > report.xi_sq * report.C_sq_upper;
    if (!report.feasible) return report;

    BigRational c_up = sqrt_upper(report.C_sq_upper, opts.sqrt_digits);
    BigRational gamma_low = sqrt_lower(*report.Gamma_sq_lower, opts.sqrt_digits);
    BigRational xi_up = sqrt_upper(report.xi_sq, opts.sqrt_digits);
    BigRational denom = gamma_low - xi_up * c_up;
    if (denom <= 0) {
        report.feasible = false;
        return report;
    }
    report.A_exact = (c_up + 1) / denom;
    report.B_exact = BigRational(1) + BigRational(Forms(spec).plateau()) / denom;
    report.A = decimal_render_up(report.A_exact, opts.digits);
    report.B = decimal_render_up(report.B_exact, opts.digits);
    return report;
}

}  // namespace wavode
