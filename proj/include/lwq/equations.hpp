#ifndef LWQ_EQUATIONS_HPP
#define LWQ_EQUATIONS_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lwq/lambert_w.hpp"

// Solvers for the catalog of transcendental equations that reduce to a
// Lambert W evaluation through a substitution. Each solver validates its
// reduction eagerly and names the violated step in the error message, and
// returns every real root (ascending) together with a record of the W
// argument and branch each one came from.

namespace lwq {

enum class EquationTag {
    YPowY,          // y^y = m
    YPowInvY,       // y^(1/y) = m
    PLnXPlusQOverX, // p*ln(x) + q/x = r
    PLnXPlusQX,     // p*ln(x) + q*x = r
    PXPlusQExpRX,   // p*x + q*e^(r*x) = s
    PowerTower,     // y = x^x^x^...
};

struct EquationForm {
    EquationTag tag = EquationTag::YPowY;
    double m = 0.0;
    double p = 0.0, q = 0.0, r = 0.0, s = 0.0;
    double x = 0.0;
};

/// One W evaluation used in a reduction. `argument` may round to 0 or inf
/// when the true argument leaves double range; `ln_argument` is always kept.
struct WReduction {
    double argument = 0.0;
    double ln_argument = 0.0;
    Branch branch = Branch::Principal;
    double w_value = 0.0;
};

struct EquationSolution {
    std::vector<double> roots;  // ascending
    std::vector<WReduction> reductions;
    double residual = 0.0;  // max |LHS - RHS| over the roots, in the original equation
};

namespace detail {

inline bool at_branch_point(double w_arg) {
    return w_arg <= -kInvE * (1.0 - 4.0 * std::numeric_limits<double>::epsilon());
}

/// W on both real branches of a negative argument; one entry at the branch
/// point, two otherwise (secondary first).
inline std::vector<WReduction> w_both_branches(double arg) {
    std::vector<WReduction> out;
    if (at_branch_point(arg)) {
        out.push_back({arg, std::log(-arg), Branch::Principal, -1.0});
        return out;
    }
    const BranchResult sec = w_negative(arg, Branch::Secondary, Method::M1);
    const BranchResult pri = w_negative(arg, Branch::Principal, Method::M1);
    out.push_back({arg, std::log(-arg), Branch::Secondary, sec.value});
    out.push_back({arg, std::log(-arg), Branch::Principal, pri.value});
    return out;
}

template <typename Fn>
void finish(EquationSolution& sol, Fn&& lhs_minus_rhs) {
    // roots ascend; reductions stay matched to their root
    if (sol.reductions.size() == sol.roots.size()) {
        std::vector<std::size_t> order(sol.roots.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return sol.roots[a] < sol.roots[b]; });
        std::vector<double> roots;
        std::vector<WReduction> reds;
        for (std::size_t i : order) {
            roots.push_back(sol.roots[i]);
            reds.push_back(sol.reductions[i]);
        }
        sol.roots = std::move(roots);
        sol.reductions = std::move(reds);
    } else {
        std::sort(sol.roots.begin(), sol.roots.end());
    }
    sol.residual = 0.0;
    for (double root : sol.roots)
        sol.residual = std::max(sol.residual, std::abs(lhs_minus_rhs(root)));
}

}  // namespace detail

/// y^y = m  ->  z*e^z = ln(m) with z = ln(y). Two real roots when
/// -1/e <= ln(m) < 0, one otherwise.
inline EquationSolution solve_y_pow_y(double m) {
    if (!(std::isfinite(m) && m > 0.0))
        throw std::domain_error("y^y = m: m must be finite and > 0");
    const double c = std::log(m);
    if (c < -kInvE * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))
        throw std::domain_error("y^y = m: ln(m) below -1/e, no real solution");

    EquationSolution sol;
    if (c >= 0.0) {
        const BranchResult w = lambert_w(c, Branch::Principal);
        sol.reductions.push_back({c, std::log(std::abs(c)), Branch::Principal, w.value});
        sol.roots.push_back(std::exp(w.value));
    } else {
        for (const WReduction& red : detail::w_both_branches(c)) {
            sol.reductions.push_back(red);
            sol.roots.push_back(std::exp(red.w_value));
        }
    }
    detail::finish(sol, [m](double y) { return std::pow(y, y) - m; });
    return sol;
}

/// y^(1/y) = m  ->  W(-ln m) = -ln y on both branches, for 1 < m <= e^(1/e).
inline EquationSolution solve_y_pow_inv_y(double m) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (!(std::isfinite(m) && m > 1.0))
        throw std::domain_error("y^(1/y) = m: m must be in (1, e^(1/e)]");
    const double mu = std::log(m);
    if (mu > kInvE * (1.0 + 4.0 * eps))
        throw std::domain_error("y^(1/y) = m: ln(m) above 1/e, no real solution");

    EquationSolution sol;
    for (const WReduction& red : detail::w_both_branches(-std::min(mu, kInvE))) {
        sol.reductions.push_back(red);
        sol.roots.push_back(std::exp(-red.w_value));
    }
    detail::finish(sol, [m](double y) { return std::pow(y, 1.0 / y) - m; });
    return sol;
}

/// p*ln(x) + q/x = r  ->  W(-X) = -1/y with x = y*(q/p), X = (q/p)*e^(-r/p).
inline EquationSolution solve_plnx_q_over_x(double p, double q, double r) {
    if (!(std::isfinite(p) && std::isfinite(q) && std::isfinite(r)) || p == 0.0)
        throw std::domain_error("p*ln(x) + q/x = r: parameters must be finite with p != 0");
    const double ratio = q / p;
    if (!(ratio > 0.0))
        throw std::domain_error("p*ln(x) + q/x = r: substitution x = y*(q/p) requires q/p > 0");
    const double X = ratio * std::exp(-r / p);
    if (X > kInvE * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))
        throw std::domain_error(
            "p*ln(x) + q/x = r: reduced argument (q/p)*e^(-r/p) above 1/e, no real solution");

    EquationSolution sol;
    for (const WReduction& red : detail::w_both_branches(-std::min(X, kInvE))) {
        sol.reductions.push_back(red);
        sol.roots.push_back(-1.0 / red.w_value * ratio);
    }
    detail::finish(sol, [p, q, r](double x) { return p * std::log(x) + q / x - r; });
    return sol;
}

/// p*ln(x) + q*x = r  ->  y*e^y = X with x = y*(p/q), X = (q/p)*e^(r/p).
/// Two roots when X lands in (-1/e, 0), one when X > 0 or at the branch
/// point. X may overflow a double; the principal evaluation then runs in
/// the log domain.
inline EquationSolution solve_plnx_qx(double p, double q, double r) {
    if (!(std::isfinite(p) && std::isfinite(q) && std::isfinite(r)) || p == 0.0 || q == 0.0)
        throw std::domain_error("p*ln(x) + q*x = r: parameters must be finite with p, q != 0");
    const double ratio = q / p;  // sign of the reduced argument
    const double ln_abs_X = std::log(std::abs(ratio)) + r / p;

    EquationSolution sol;
    if (ratio > 0.0) {
        const BranchResult w = w0_from_ln(ln_abs_X);
        sol.reductions.push_back({std::exp(ln_abs_X), ln_abs_X, Branch::Principal, w.value});
        sol.roots.push_back(w.value / ratio);
    } else {
        const double X = -std::exp(ln_abs_X);
        if (X < -kInvE * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))
            throw std::domain_error(
                "p*ln(x) + q*x = r: reduced argument (q/p)*e^(r/p) below -1/e, no real solution");
        for (const WReduction& red : detail::w_both_branches(std::max(X, -kInvE))) {
            sol.reductions.push_back(red);
            sol.roots.push_back(red.w_value / ratio);
        }
    }
    detail::finish(sol, [p, q, r](double x) { return p * std::log(x) + q * x - r; });
    return sol;
}

/// p*x + q*e^(r*x) = s  ->  (p/r)*ln(z) + q*z = s with z = e^(r*x), then
/// x = ln(z)/r for every root of the reduced equation.
inline EquationSolution solve_px_q_exp_rx(double p, double q, double r, double s) {
    if (!(std::isfinite(p) && std::isfinite(q) && std::isfinite(r) && std::isfinite(s)) ||
        p == 0.0 || q == 0.0 || r == 0.0)
        throw std::domain_error(
            "p*x + q*e^(r*x) = s: parameters must be finite with p, q, r != 0");
    EquationSolution reduced = solve_plnx_qx(p / r, q, s);

    EquationSolution sol;
    sol.reductions = reduced.reductions;
    for (double z : reduced.roots) sol.roots.push_back(std::log(z) / r);
    detail::finish(sol, [p, q, r, s](double x) { return p * x + q * std::exp(r * x) - s; });
    return sol;
}

/// Limit of the tower x^x^x^... for x in [1, e^(1/e)]: the smaller root of
/// y^(1/y) = x, i.e. e^(-W0(-ln x)).
inline double power_tower(double x) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (!(std::isfinite(x) && x >= 1.0))
        throw std::domain_error("power tower: x must be in [1, e^(1/e)]");
    const double mu = std::log(x);
    if (mu > kInvE * (1.0 + 4.0 * eps))
        throw std::domain_error("power tower: x above e^(1/e), the tower diverges");
    if (mu == 0.0) return 1.0;
    if (detail::at_branch_point(-mu)) return std::exp(1.0);
    return std::exp(-lambert_w(-std::min(mu, kInvE), Branch::Principal).value);
}

/// Dispatch on a tagged form; validates that the used parameters are set.
inline EquationSolution solve(const EquationForm& form) {
    switch (form.tag) {
        case EquationTag::YPowY: return solve_y_pow_y(form.m);
        case EquationTag::YPowInvY: return solve_y_pow_inv_y(form.m);
        case EquationTag::PLnXPlusQOverX: return solve_plnx_q_over_x(form.p, form.q, form.r);
        case EquationTag::PLnXPlusQX: return solve_plnx_qx(form.p, form.q, form.r);
        case EquationTag::PXPlusQExpRX:
            return solve_px_q_exp_rx(form.p, form.q, form.r, form.s);
        case EquationTag::PowerTower: {
            EquationSolution sol;
            const double y = power_tower(form.x);
            const double mu = std::log(form.x);
            sol.roots.push_back(y);
            sol.reductions.push_back({-mu,
                                      mu > 0.0 ? std::log(mu)
                                               : -std::numeric_limits<double>::infinity(),
                                      Branch::Principal, -std::log(y)});
            sol.residual = std::abs(std::pow(form.x, y) - y);
            return sol;
        }
    }
    throw std::invalid_argument("solve: unknown equation form");
}

}  // namespace lwq

#endif  // LWQ_EQUATIONS_HPP
