#ifndef LWQ_LAMBERT_W_HPP
#define LWQ_LAMBERT_W_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "lwq/core.hpp"

// Branch-level Lambert W solvers built on the quadratic correction loop.
// Method 1 iterates z = e^y through z*ln(z) = x (or ln(z) = X*z on negative
// arguments); Method 2 iterates y itself through y + ln(y) = ln(x) (or
// ln(y) - y = ln(X)), which makes it usable straight from ln(x).

namespace lwq {

enum class Branch { Principal, Secondary };

// M1/M2 are the quadratic-correction transforms; Newton/Halley label the
// baseline solvers so their results carry an honest method tag.
enum class Method { M1, M2, Newton, Halley };

inline const char* to_string(Branch b) {
    return b == Branch::Principal ? "w0" : "wm1";
}
inline const char* to_string(Method m) {
    switch (m) {
        case Method::M1: return "m1";
        case Method::M2: return "m2";
        case Method::Newton: return "newton";
        case Method::Halley: return "halley";
    }
    return "unknown";
}

struct BranchResult {
    double value = 0.0;
    Branch branch = Branch::Principal;
    Method method = Method::M1;
    IterationTrace trace;
    double residual = 0.0;  // |y*e^y - x|, or |y + ln y - ln x| on the log-domain path
    double error_estimate_pct = 0.0;

    bool converged() const { return trace.converged(); }
    TraceStatus status() const { return trace.status; }
    int iterations() const { return trace.iterations; }
};

/// Seeds tried in order until an attempt converges.
struct SeedSchedule {
    std::vector<double> candidates;
};

inline constexpr double kInvE = 0.36787944117144233;  // nearest double to 1/e

namespace detail {

constexpr double kDegenerateDenom = 32.0 * std::numeric_limits<double>::epsilon();
constexpr double nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace detail

/// Coefficients of the correction quadratic for z*ln(z) = x.
/// The denominator vanishes at z = e^-2; a non-finite pair is returned
/// there so the loop reports it as a reseed trigger.
inline std::pair<double, double> coeffs_m1_pos(double z, double x) {
    const double lnz = std::log(z);
    const double den = lnz + 2.0;
    if (std::abs(den) < detail::kDegenerateDenom)
        return {detail::nan(), detail::nan()};
    const double zlnz = z * lnz;
    return {-(3.0 * zlnz + 2.0 * z - x) / den, 2.0 * z * (x - zlnz) / den};
}

/// Coefficients for y + ln(y) = ln(x). ln(x/y) is always formed as
/// ln_x - ln(y), so only ln(x) is ever needed.
inline std::pair<double, double> coeffs_m2_pos(double y, double ln_x) {
    const double r = ln_x - std::log(y);
    return {-(3.0 * y + 2.0 - r), -2.0 * y * (y - r)};
}

/// Coefficients for ln(z) = X*z with X = -x_neg in (0, 1/e].
inline std::pair<double, double> coeffs_m1_neg(double z, double X) {
    if (!(X > 0.0)) return {detail::nan(), detail::nan()};
    const double lnz = std::log(z);
    return {-(3.0 * z * X - lnz - 2.0) / X, 2.0 * z * (lnz - z * X) / X};
}

/// Coefficients for ln(y) - y = ln(X).
inline std::pair<double, double> coeffs_m2_neg(double y, double ln_X) {
    const double r = ln_X - std::log(y);
    return {-(3.0 * y - 2.0 + r), -2.0 * y * (y + r)};
}

namespace detail {

/// coeffs_m1_pos evaluated at z = 1 + s without forming the sum, so the
/// x - z*ln(z) factor stays exact when z is near 1.
inline std::pair<double, double> coeffs_m1_pos_sum(double s, double x) {
    const double lnz = std::log1p(s);
    const double den = lnz + 2.0;
    if (std::abs(den) < kDegenerateDenom) return {nan(), nan()};
    const double zlnz = lnz + s * lnz;
    return {-(3.0 * zlnz + 2.0 + 2.0 * s - x) / den, 2.0 * (1.0 + s) * (x - zlnz) / den};
}

/// coeffs_m1_neg evaluated at z = 1 + s, keeping ln(z) - z*X exact when z
/// is near 1 (the principal root for small X).
inline std::pair<double, double> coeffs_m1_neg_sum(double s, double X) {
    if (!(X > 0.0)) return {nan(), nan()};
    const double lnz = std::log1p(s);
    const double resid = lnz - X - s * X;  // ln(z) - z*X
    return {-(3.0 * X + 3.0 * s * X - lnz - 2.0) / X, 2.0 * (1.0 + s) * resid / X};
}

inline SeedSchedule seeds_m1_pos(double x) {
    const double p = std::max(1.0, x);
    return {{1.0, p, std::sqrt(p)}};
}
inline SeedSchedule seeds_m2_pos(double x) {
    return {{x >= 1.0 ? 1.0 : x, 0.5, 2.0}};
}
// Plus-root (secondary) schedules, z-domain and y-domain.
inline SeedSchedule seeds_neg_plus_m1() { return {{2.0, std::exp(1.0), 10.0, 1e3}}; }
inline SeedSchedule seeds_neg_plus_m2() { return {{1.0, 2.0, 10.0, 1e3}}; }
// Minus-root (principal) schedules. Near the branch point every quadratic
// built away from the double root has a negative discriminant, so the
// double-root location (z = e, y = 1) closes each list.
inline SeedSchedule seeds_neg_minus_m1(double X) {
    return {{2.0, 0.3, 5.0, 1.0 + X, std::exp(1.0)}};
}
inline SeedSchedule seeds_neg_minus_m2(double X) {
    return {{X, 0.3, 5.0, 1.0 + X, 1.0}};
}

/// Run the correction loop over a seed schedule (seed_override first).
/// Only the degenerate statuses (NegativeDiscriminant, NonPositiveIterate)
/// move on to the next seed; a run that spends its full iteration budget
/// from a healthy seed is the result, so fixed-count runs keep their seed.
template <typename CoeffFn, typename ResidualFn>
IterationTrace run_schedule(CoeffFn&& coeff_fn, ResidualFn&& residual_fn, RootSign sign,
                            const SeedSchedule& schedule, const SolveConfig& cfg) {
    std::vector<double> seeds;
    if (cfg.seed_override) seeds.push_back(*cfg.seed_override);
    for (double s : schedule.candidates)
        if (std::find(seeds.begin(), seeds.end(), s) == seeds.end()) seeds.push_back(s);

    IterationTrace best;
    bool have_best = false;
    for (double seed : seeds) {
        IterationTrace trace = iterate(coeff_fn, residual_fn, sign, seed, cfg);
        if (trace.status == TraceStatus::Converged ||
            trace.status == TraceStatus::MaxIterReached)
            return trace;
        if (!have_best || trace.iterations > best.iterations) {
            best = std::move(trace);
            have_best = true;
        }
    }
    return best;
}

inline BranchResult make_exact(double value, Branch branch, Method method, double seed,
                               double residual) {
    BranchResult r;
    r.value = value;
    r.branch = branch;
    r.method = method;
    r.trace.seed = seed;
    r.trace.status = TraceStatus::Converged;
    r.trace.final_iterate = seed;
    r.residual = residual;
    return r;
}

}  // namespace detail

/// Principal branch for x >= 0. Method 1 iterates z from seed 1 and returns
/// ln(z_final); Method 2 iterates y from seed 1 (seed x when 0 < x < 1).
inline BranchResult w0(double x, Method method, const SolveConfig& cfg = {}) {
    if (!(std::isfinite(x) && x >= 0.0))
        throw std::domain_error("w0: x must be finite and >= 0");
    if (method != Method::M1 && method != Method::M2)
        throw std::invalid_argument("w0: method must be M1 or M2");
    if (x == 0.0) return detail::make_exact(0.0, Branch::Principal, method, 1.0, 0.0);

    BranchResult result;
    result.branch = Branch::Principal;
    result.method = method;
    if (method == Method::M1) {
        result.trace = detail::run_schedule(
            [x](double z) { return coeffs_m1_pos(z, x); },
            [x](double z) { return z * std::log(z) - x; }, RootSign::Plus,
            detail::seeds_m1_pos(x), cfg);
        if (result.trace.seed == 1.0) {
            // From seed 1 the correction sum carries z_final - 1 without the
            // rounding of the 1 + sum addition. One more correction, built at
            // the exact sum, removes the half-ulp the loop's rounded iterate
            // left behind; it matters only when z_final is near 1.
            double sum = result.trace.correction_sum;
            if (result.trace.converged()) {
                const auto [l, m] = detail::coeffs_m1_pos_sum(sum, x);
                const auto qc = quad_solve(l, m);
                if (qc.real_roots && std::isfinite(qc.root_plus) &&
                    std::abs(qc.root_plus) <= 1e-10 * std::abs(1.0 + sum))
                    sum += qc.root_plus;
            }
            result.value = std::log1p(sum);
        } else {
            result.value = std::log(result.trace.final_iterate);
        }
    } else {
        const double ln_x = std::log(x);
        result.trace = detail::run_schedule(
            [ln_x](double y) { return coeffs_m2_pos(y, ln_x); },
            [ln_x](double y) { return y + std::log(y) - ln_x; }, RootSign::Plus,
            detail::seeds_m2_pos(x), cfg);
        result.value = result.trace.final_iterate;
    }
    result.residual = std::abs(result.value * std::exp(result.value) - x);
    result.error_estimate_pct = error_estimate(result.trace);
    return result;
}

/// Principal branch straight from ln(x); x itself may overflow a double.
/// Runs the Method-2 iteration on y + ln(y) = ln_x.
inline BranchResult w0_from_ln(double ln_x, const SolveConfig& cfg = {}) {
    if (!std::isfinite(ln_x))
        throw std::domain_error("w0_from_ln: ln_x must be finite");

    const double x_small = ln_x < 0.0 ? std::exp(ln_x) : 1.0;
    if (ln_x < 0.0 && x_small < std::numeric_limits<double>::min()) {
        // W0(x) equals x to beyond double resolution down here.
        return detail::make_exact(x_small, Branch::Principal, Method::M2, x_small, 0.0);
    }
    SeedSchedule schedule{{ln_x >= 0.0 ? 1.0 : x_small, 0.5, 2.0}};
    BranchResult result;
    result.branch = Branch::Principal;
    result.method = Method::M2;
    result.trace = detail::run_schedule(
        [ln_x](double y) { return coeffs_m2_pos(y, ln_x); },
        [ln_x](double y) { return y + std::log(y) - ln_x; }, RootSign::Plus, schedule, cfg);
    result.value = result.trace.final_iterate;
    result.residual = std::abs(result.value + std::log(result.value) - ln_x);
    result.error_estimate_pct = error_estimate(result.trace);
    return result;
}

/// Both real branches on [-1/e, 0). Internally X = -x_neg and the solvers
/// work on y*e^-y = X with y > 0; the plus-root iteration reaches the
/// y >= 1 solution (secondary branch, W <= -1) and the minus-root iteration
/// the y <= 1 solution (principal branch). Inputs within 4 rounding units
/// below -1/e are clamped to the branch point, where both branches are -1.
inline BranchResult w_negative(double x_neg, Branch branch, Method method,
                               const SolveConfig& cfg = {}) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (!std::isfinite(x_neg) || x_neg >= 0.0)
        throw std::domain_error("w_negative: x must be finite and < 0");
    if (method != Method::M1 && method != Method::M2)
        throw std::invalid_argument("w_negative: method must be M1 or M2");
    double X = -x_neg;
    if (X > kInvE) {
        if (X <= kInvE * (1.0 + 4.0 * eps))
            X = kInvE;  // users computing -exp(-1) land here
        else
            throw std::domain_error("No solution in real domain.");
    }
    if (X == kInvE) {
        // Branch point: double root W = -1 on both branches.
        return detail::make_exact(-1.0, branch, method, method == Method::M1 ? 2.0 : 1.0,
                                  std::abs(-std::exp(-1.0) - x_neg));
    }

    const RootSign sign = branch == Branch::Secondary ? RootSign::Plus : RootSign::Minus;
    BranchResult result;
    result.branch = branch;
    result.method = method;
    if (method == Method::M1) {
        const SeedSchedule schedule = sign == RootSign::Plus
                                          ? detail::seeds_neg_plus_m1()
                                          : detail::seeds_neg_minus_m1(X);
        result.trace = detail::run_schedule(
            [X](double z) { return coeffs_m1_neg(z, X); },
            [X](double z) { return std::log(z) - X * z; }, sign, schedule, cfg);
        const double z_final = result.trace.final_iterate;
        if (sign == RootSign::Minus && result.trace.converged() && z_final < 1.5) {
            // The principal root sits at z = 1 + O(X). z - 1 is exact for
            // z in [1, 2], and one more correction built on that offset
            // resolves roots the rounded iterate cannot separate from 1.
            double w = z_final - 1.0;
            const auto [l, m] = detail::coeffs_m1_neg_sum(w, X);
            const auto qc = quad_solve(l, m);
            const double a = qc.root_minus;
            if (qc.real_roots && std::isfinite(a) && std::abs(a) <= 1e-10 * (1.0 + w))
                w += a;
            result.value = -std::log1p(w);
        } else {
            result.value = -std::log(z_final);
        }
    } else {
        const double ln_X = std::log(X);
        const SeedSchedule schedule = sign == RootSign::Plus
                                          ? detail::seeds_neg_plus_m2()
                                          : detail::seeds_neg_minus_m2(X);
        result.trace = detail::run_schedule(
            [ln_X](double y) { return coeffs_m2_neg(y, ln_X); },
            [ln_X](double y) { return std::log(y) - y - ln_X; }, sign, schedule, cfg);
        result.value = -result.trace.final_iterate;
    }
    result.residual = std::abs(result.value * std::exp(result.value) - x_neg);
    result.error_estimate_pct = error_estimate(result.trace);
    return result;
}

/// Top-level dispatch over the full real domain [-1/e, inf).
/// Method 1 is the default; beyond x = 1e100 the z-domain coefficients head
/// toward overflow (m grows like x^2), so Method 2 takes over there.
inline BranchResult lambert_w(double x, Branch branch, const SolveConfig& cfg = {}) {
    if (!std::isfinite(x)) throw std::domain_error("lambert_w: x must be finite");
    if (x >= 0.0) {
        if (branch == Branch::Secondary)
            throw std::domain_error("lambert_w: secondary branch is only defined on [-1/e, 0)");
        return w0(x, x > 1e100 ? Method::M2 : Method::M1, cfg);
    }
    return w_negative(x, branch, Method::M1, cfg);
}

/// Run the solver once per seed (via seed_override) and report every
/// result; individual attempts may carry a non-converged status.
inline std::vector<BranchResult> seed_sweep(double x, const std::vector<double>& seeds,
                                            Method method, Branch branch,
                                            const SolveConfig& cfg = {}) {
    for (double s : seeds)
        if (!(std::isfinite(s) && s > 0.0))
            throw std::invalid_argument("seed_sweep: seeds must be finite and > 0");
    std::vector<BranchResult> results;
    results.reserve(seeds.size());
    for (double s : seeds) {
        SolveConfig run_cfg = cfg;
        run_cfg.seed_override = s;
        if (x >= 0.0) {
            if (branch == Branch::Secondary)
                throw std::domain_error("seed_sweep: secondary branch requires x < 0");
            results.push_back(w0(x, method, run_cfg));
        } else {
            results.push_back(w_negative(x, branch, method, run_cfg));
        }
    }
    return results;
}

}  // namespace lwq

#endif  // LWQ_LAMBERT_W_HPP
