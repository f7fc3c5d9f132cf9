#ifndef LWQ_CORE_HPP
#define LWQ_CORE_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

// Core machinery shared by every solver in this library: the rational
// approximation of a logarithm increment, the per-step quadratic in the
// correction term, and the generic correction loop with its convergence
// diagnostics.

namespace lwq {

struct SolveConfig {
    double tol_rel = 1e-14;               // relative step tolerance
    double tol_abs = 0.0;                 // absolute step tolerance
    int max_iter = 16;                    // iteration cap per seed
    std::optional<double> seed_override;  // tried before the default seed schedule
    bool record_trace = false;            // keep per-step records

    void validate() const {
        if (!(tol_rel > 0.0) || !(tol_abs >= 0.0))
            throw std::invalid_argument("SolveConfig: tol_rel must be > 0 and tol_abs >= 0");
        if (max_iter < 1)
            throw std::invalid_argument("SolveConfig: max_iter must be >= 1");
        if (seed_override && !(std::isfinite(*seed_override) && *seed_override > 0.0))
            throw std::invalid_argument("SolveConfig: seed_override must be finite and > 0");
    }
};

enum class RootSign { Plus, Minus };

enum class TraceStatus {
    Converged,
    MaxIterReached,
    NegativeDiscriminant,
    NonPositiveIterate,
};

inline const char* to_string(TraceStatus s) {
    switch (s) {
        case TraceStatus::Converged: return "converged";
        case TraceStatus::MaxIterReached: return "max_iter_reached";
        case TraceStatus::NegativeDiscriminant: return "negative_discriminant";
        case TraceStatus::NonPositiveIterate: return "non_positive_iterate";
    }
    return "unknown";
}

/// Both roots of a^2 - l*a - m = 0 plus the raw discriminant l^2 + 4m.
/// `real_roots` is false when the discriminant is negative beyond the
/// rounding clamp; the roots are unset (NaN) in that case.
struct QuadraticCoefficients {
    double l = 0.0;
    double m = 0.0;
    double discriminant = 0.0;
    double root_plus = std::numeric_limits<double>::quiet_NaN();
    double root_minus = std::numeric_limits<double>::quiet_NaN();
    bool real_roots = false;

    double root(RootSign sign) const {
        return sign == RootSign::Plus ? root_plus : root_minus;
    }
};

/// Solve a^2 - l*a - m = 0. The smaller-magnitude root is formed from the
/// root product m = -r_plus*r_minus rather than the difference form, so a
/// correction that is tiny next to l keeps full precision. A discriminant
/// that dips below zero by no more than 4*eps*l^2 is treated as zero; that
/// happens from rounding near a double root.
inline QuadraticCoefficients quad_solve(double l, double m) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    QuadraticCoefficients qc;
    qc.l = l;
    qc.m = m;
    qc.discriminant = l * l + 4.0 * m;

    double disc = qc.discriminant;
    if (!std::isfinite(disc)) return qc;  // degenerate coefficients: roots unset
    if (disc < 0.0) {
        if (-disc <= 4.0 * eps * l * l)
            disc = 0.0;
        else
            return qc;  // caller reseeds
    }

    const double s = std::sqrt(disc);
    if (l >= 0.0) {
        qc.root_plus = 0.5 * (l + s);
        qc.root_minus = qc.root_plus != 0.0 ? -m / qc.root_plus + 0.0 : 0.0;
    } else {
        qc.root_minus = 0.5 * (l - s);
        qc.root_plus = -m / qc.root_minus + 0.0;
    }
    qc.real_roots = true;
    return qc;
}

/// ln(z + a) approximated as ln(z) + 2a/(a + 2z); the rational term is the
/// (1,1) Pade form of ln(1 + a/z), accurate to O((a/z)^3).
inline double ln_increment_approx(double z, double a) {
    if (!(z > 0.0))
        throw std::domain_error("ln_increment_approx: z must be > 0");
    return std::log(z) + 2.0 * a / (a + 2.0 * z);
}

struct IterationStep {
    int n = 0;              // 1-based
    double iterate = 0.0;   // z_n (or y_n)
    QuadraticCoefficients coeffs;
    double correction = 0.0;    // a_n, the selected root
    double next_iterate = 0.0;  // iterate + correction
    double residual = 0.0;      // defining equation, left minus right, at next_iterate
};

struct IterationTrace {
    std::vector<IterationStep> steps;  // populated only when cfg.record_trace
    double seed = 0.0;
    TraceStatus status = TraceStatus::MaxIterReached;
    int iterations = 0;            // accepted corrections
    double final_iterate = 0.0;    // latest z_{n+1}; equals seed when iterations == 0
    double final_correction = 0.0; // a_n of the last accepted step
    double correction_sum = 0.0;   // a_1 + a_2 + ... + a_n, accumulated separately

    bool converged() const { return status == TraceStatus::Converged; }
};

/// The generic correction loop: at each iterate compute (l, m), take the
/// root of the requested sign as the correction, and stop once
/// |a_n| <= tol_abs + tol_rel*|z_{n+1}|. Non-finite coefficients (a
/// degenerate denominator) stop the attempt with NegativeDiscriminant, and
/// an iterate that leaves (0, inf) stops it with NonPositiveIterate; both
/// tell the caller to move to its next seed.
///
/// The running sum of corrections is kept alongside the iterate itself:
/// when the seed is 1 it recovers z_final - 1 without the rounding of the
/// 1 + sum addition, which matters for iterates that converge near 1.
template <typename CoeffFn, typename ResidualFn>
IterationTrace iterate(CoeffFn&& coeff_fn, ResidualFn&& residual_fn, RootSign root_sign,
                       double seed, const SolveConfig& cfg) {
    cfg.validate();
    if (!(std::isfinite(seed) && seed > 0.0))
        throw std::domain_error("iterate: seed must be finite and > 0");

    IterationTrace trace;
    trace.seed = seed;
    trace.final_iterate = seed;

    double z = seed;
    double sum = 0.0;
    for (int n = 1; n <= cfg.max_iter; ++n) {
        const auto [l, m] = coeff_fn(z);
        const QuadraticCoefficients qc = quad_solve(l, m);
        if (!qc.real_roots) {
            trace.status = TraceStatus::NegativeDiscriminant;
            return trace;
        }
        const double a = qc.root(root_sign);
        const double z_next = z + a;
        if (!(z_next > 0.0) || !std::isfinite(z_next)) {
            trace.status = TraceStatus::NonPositiveIterate;
            return trace;
        }
        sum += a;

        if (cfg.record_trace) {
            IterationStep step;
            step.n = n;
            step.iterate = z;
            step.coeffs = qc;
            step.correction = a;
            step.next_iterate = z_next;
            step.residual = residual_fn(z_next);
            trace.steps.push_back(step);
        }
        trace.iterations = n;
        trace.final_iterate = z_next;
        trace.final_correction = a;
        trace.correction_sum = sum;

        if (std::abs(a) <= cfg.tol_abs + cfg.tol_rel * std::abs(z_next)) {
            trace.status = TraceStatus::Converged;
            return trace;
        }
        z = z_next;
    }
    trace.status = TraceStatus::MaxIterReached;
    return trace;
}

template <typename CoeffFn>
IterationTrace iterate(CoeffFn&& coeff_fn, RootSign root_sign, double seed,
                       const SolveConfig& cfg) {
    return iterate(std::forward<CoeffFn>(coeff_fn), [](double) { return 0.0; }, root_sign,
                   seed, cfg);
}

/// Solve ln z = y_target by the closed-form ratio recurrence
/// z_{n+1}/z_n = -1 + 4/(2 - y + ln z_n). The recurrence only contracts
/// while -2 < -y + ln z < 2, so the seed must satisfy that window.
inline IterationTrace log_inverse_solve(double y_target, double seed, const SolveConfig& cfg) {
    cfg.validate();
    if (!(std::isfinite(seed) && seed > 0.0))
        throw std::domain_error("log_inverse_solve: seed must be finite and > 0");
    if (!(std::abs(std::log(seed) - y_target) < 2.0))
        throw std::domain_error("log_inverse_solve: seed outside the window |ln(seed) - y| < 2");

    IterationTrace trace;
    trace.seed = seed;
    trace.final_iterate = seed;

    double z = seed;
    double sum = 0.0;
    for (int n = 1; n <= cfg.max_iter; ++n) {
        const double lnz = std::log(z);
        const double denom = 2.0 - y_target + lnz;
        const double a = 2.0 * z * (y_target - lnz) / denom;
        const double z_next = z + a;
        if (!(z_next > 0.0) || !std::isfinite(z_next)) {
            trace.status = TraceStatus::NonPositiveIterate;
            return trace;
        }
        sum += a;

        if (cfg.record_trace) {
            IterationStep step;
            step.n = n;
            step.iterate = z;
            step.coeffs = quad_solve(a, 0.0);  // the step is linear; record it as the degenerate quadratic
            step.correction = a;
            step.next_iterate = z_next;
            step.residual = std::log(z_next) - y_target;
            trace.steps.push_back(step);
        }
        trace.iterations = n;
        trace.final_iterate = z_next;
        trace.final_correction = a;
        trace.correction_sum = sum;

        if (std::abs(a) <= cfg.tol_abs + cfg.tol_rel * std::abs(z_next)) {
            trace.status = TraceStatus::Converged;
            return trace;
        }
        z = z_next;
    }
    trace.status = TraceStatus::MaxIterReached;
    return trace;
}

/// 100 * |a_n| / |z_{n+1}| for the last accepted step; 0 for an empty trace.
inline double error_estimate(const IterationTrace& trace) {
    if (trace.iterations == 0 || trace.final_iterate == 0.0) return 0.0;
    return 100.0 * std::abs(trace.final_correction) / std::abs(trace.final_iterate);
}

}  // namespace lwq

#endif  // LWQ_CORE_HPP
