#ifndef LWQ_BASELINES_HPP
#define LWQ_BASELINES_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lwq/core.hpp"
#include "lwq/lambert_w.hpp"

// Classical solvers for w*e^w = x used to cross-check the quadratic method:
// Newton, Halley, and a bisection oracle that shares nothing with the
// correction-loop machinery. Baseline traces iterate w itself, so unlike
// the quadratic traces their iterates may be negative; step records carry
// a zeroed coefficient block since no quadratic is formed.

namespace lwq {

namespace detail {

inline double f_w(double w, double x) { return w * std::exp(w) - x; }

inline void check_baseline_domain(double x, double seed, Branch branch) {
    if (branch == Branch::Principal) {
        if (!(x >= -kInvE * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())))
            throw std::domain_error("No solution in real domain.");
        if (!(seed > -1.0))
            throw std::domain_error("principal-branch seed must be > -1");
    } else {
        if (!(x >= -kInvE * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()) && x < 0.0))
            throw std::domain_error("secondary branch is only defined on [-1/e, 0)");
        if (!(seed < -1.0) && x != -kInvE)
            throw std::domain_error("secondary-branch seed must be < -1");
    }
}

template <typename StepFn>
BranchResult baseline_solve(double x, double seed, Branch branch, Method method,
                            const SolveConfig& cfg, StepFn&& step_fn) {
    cfg.validate();
    BranchResult result;
    result.branch = branch;
    result.method = method;
    result.trace.seed = seed;
    result.trace.final_iterate = seed;
    result.trace.status = TraceStatus::MaxIterReached;

    double w = seed;
    for (int n = 1; n <= cfg.max_iter; ++n) {
        const double dw = step_fn(w);
        if (!std::isfinite(dw)) break;  // degenerate step (zero/overflowed denominator)
        const double w_next = w + dw;

        if (cfg.record_trace) {
            IterationStep step;
            step.n = n;
            step.iterate = w;
            step.correction = dw;
            step.next_iterate = w_next;
            step.residual = f_w(w_next, x);
            result.trace.steps.push_back(step);
        }
        result.trace.iterations = n;
        result.trace.final_iterate = w_next;
        result.trace.final_correction = dw;
        result.trace.correction_sum += dw;

        if (std::abs(dw) <= cfg.tol_abs + cfg.tol_rel * std::abs(w_next) || w_next == w) {
            result.trace.status = TraceStatus::Converged;
            break;
        }
        w = w_next;
    }
    result.value = result.trace.final_iterate;
    result.residual = std::abs(f_w(result.value, x));
    result.error_estimate_pct = error_estimate(result.trace);
    return result;
}

}  // namespace detail

/// Newton iteration on f(w) = w*e^w - x. Divergence or oscillation shows up
/// as a MaxIterReached status, which the comparison harness reports as-is.
inline BranchResult newton_w(double x, double seed, Branch branch, const SolveConfig& cfg = {}) {
    detail::check_baseline_domain(x, seed, branch);
    return detail::baseline_solve(x, seed, branch, Method::Newton, cfg, [x](double w) {
        const double ew = std::exp(w);
        const double fp = ew * (1.0 + w);
        return -(w * ew - x) / fp;
    });
}

/// Halley iteration on the same f, with f'' = e^w*(2 + w). A vanishing
/// 2f'^2 - f*f'' denominator ends the attempt as a degenerate step.
inline BranchResult halley_w(double x, double seed, Branch branch, const SolveConfig& cfg = {}) {
    detail::check_baseline_domain(x, seed, branch);
    return detail::baseline_solve(x, seed, branch, Method::Halley, cfg, [x](double w) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double fp = ew * (1.0 + w);
        const double fpp = ew * (2.0 + w);
        const double denom = 2.0 * fp * fp - f * fpp;
        if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
        return -2.0 * f * fp / denom;
    });
}

/// Bracketing bisection on g(w) = w*e^w - x, immune to every assumption the
/// quadratic method makes. The bracket is bisected to width <= tol and the
/// midpoint returned.
inline double bisection_oracle(double x, Branch branch, double tol) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (!(tol > 0.0)) throw std::invalid_argument("bisection_oracle: tol must be > 0");
    if (x < -kInvE) {
        if (x >= -kInvE * (1.0 + 4.0 * eps))
            x = -kInvE;
        else
            throw std::domain_error("No solution in real domain.");
    }
    if (branch == Branch::Secondary && x >= 0.0)
        throw std::domain_error("secondary branch is only defined on [-1/e, 0)");

    double lo, hi;
    if (branch == Branch::Principal) {
        if (x >= 0.0) {
            if (x == 0.0) return 0.0;
            lo = 0.0;
            hi = std::max(1.0, std::log(std::max(x, 1.0)) + 1.0);
        } else {
            lo = -1.0;
            hi = 0.0;
        }
    } else {
        const double A = std::log(1.0 / std::abs(x));
        lo = -(A + std::log(A + 2.0) + 2.0);
        hi = -1.0;
    }

    auto g = [x](double w) { return w * std::exp(w) - x; };
    double glo = g(lo), ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    // widen downward until the bracket straddles the root
    for (int k = 0; k < 64 && glo * ghi > 0.0; ++k) {
        lo *= 2.0;
        glo = g(lo);
    }
    if (!(glo * ghi < 0.0))
        throw std::runtime_error("bisection_oracle: failed to bracket the root");

    for (int k = 0; k < 4000 && (hi - lo) > tol; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct ComparisonRow {
    double x = 0.0;
    Branch branch = Branch::Principal;
    int quad_iters = 0;
    int newton_iters = 0;
    int halley_iters = 0;
    double quad_value = 0.0;
    double newton_value = 0.0;
    double halley_value = 0.0;
    TraceStatus quad_status = TraceStatus::MaxIterReached;
    TraceStatus newton_status = TraceStatus::MaxIterReached;
    TraceStatus halley_status = TraceStatus::MaxIterReached;
    double agreement = 0.0;  // max pairwise |difference| among converged values
};

/// Default baseline seeds: the log of x on the principal branch, one step
/// below the branch point on the secondary.
inline double baseline_seed(double x, Branch branch) {
    if (branch == Branch::Principal) return std::max(0.0, std::log(std::max(x, 1.0)));
    return -2.0 - std::sqrt(2.0 * std::max(0.0, 1.0 + std::exp(1.0) * x));
}

/// Quadratic M1 vs Newton vs Halley from their documented default seeds.
/// Every row is produced even when a solver fails; statuses say which did.
inline std::vector<ComparisonRow> compare(const std::vector<double>& xs, Branch branch,
                                          const SolveConfig& cfg = {}) {
    std::vector<ComparisonRow> rows;
    rows.reserve(xs.size());
    for (double x : xs) {
        ComparisonRow row;
        row.x = x;
        row.branch = branch;

        const BranchResult quad = x >= 0.0 ? w0(x, Method::M1, cfg)
                                           : w_negative(x, branch, Method::M1, cfg);
        const double seed = baseline_seed(x, branch);
        const BranchResult newton = newton_w(x, seed, branch, cfg);
        const BranchResult halley = halley_w(x, seed, branch, cfg);

        row.quad_iters = quad.iterations();
        row.newton_iters = newton.iterations();
        row.halley_iters = halley.iterations();
        row.quad_value = quad.value;
        row.newton_value = newton.value;
        row.halley_value = halley.value;
        row.quad_status = quad.status();
        row.newton_status = newton.status();
        row.halley_status = halley.status();

        std::vector<double> vals;
        if (quad.converged()) vals.push_back(quad.value);
        if (newton.converged()) vals.push_back(newton.value);
        if (halley.converged()) vals.push_back(halley.value);
        for (std::size_t i = 0; i < vals.size(); ++i)
            for (std::size_t j = i + 1; j < vals.size(); ++j)
                row.agreement = std::max(row.agreement, std::abs(vals[i] - vals[j]));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace lwq

#endif  // LWQ_BASELINES_HPP
