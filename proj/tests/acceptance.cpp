// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit status is the number of
// failed criteria.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "lwq/lwq.hpp"
#include "support.hpp"

using namespace lwq;
using json = nlohmann::json;

namespace {

constexpr double kLn10 = 2.302585092994045684;

struct Criterion {
    int failures = 0;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            notes.push_back(what);
        }
    }
};

int g_failed = 0;

void report(int number, const std::string& title, const Criterion& c) {
    if (c.failures == 0) {
        std::printf("[PASS] criterion %2d: %s\n", number, title.c_str());
    } else {
        ++g_failed;
        std::printf("[FAIL] criterion %2d: %s\n", number, title.c_str());
        for (const auto& note : c.notes) std::printf("       - %s\n", note.c_str());
    }
}

double rel(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// --------------------------------------------------------------------------

void criterion1() {
    Criterion c;
    const double xs[] = {1e-5, 0.1, 0.5, 1.0, 100.0, 1e5, 1e20};
    const double printed[] = {9.9999e-6, 0.09127653, 0.35173371,    0.56714329,
                              3.38563014, 9.2845714,  42.306755092};
    for (int i = 0; i < 7; ++i) {
        const auto r = w0(xs[i], Method::M1);
        c.expect(r.converged(), "x=" + std::to_string(xs[i]) + " did not converge");
        c.expect(rel(r.value, printed[i]) <= 5e-7,
                 "x=" + std::to_string(xs[i]) + " value " + std::to_string(r.value) +
                     " vs printed " + std::to_string(printed[i]));
        c.expect(r.iterations() <= 6,
                 "x=" + std::to_string(xs[i]) + " took " + std::to_string(r.iterations()) +
                     " iterations");
    }
    report(1, "method-1 table reproduction on the principal grid, seed 1", c);
}

void criterion2() {
    Criterion c;
    const double xs[] = {1e-5, 1e-2, 1e-1, 1.0, 1e2, 1e5, 1e10, 1e20, 1e50};
    const double printed[] = {9.9999e-6,   0.00990147384, 0.09127652716,
                              0.56714329,  3.3856301403,  9.2845714286,
                              20.028685413, 42.306755096, 110.42491883};
    for (int i = 0; i < 9; ++i) {
        const auto r = w0(xs[i], Method::M2);
        c.expect(r.converged() && rel(r.value, printed[i]) <= 5e-7,
                 "x=" + std::to_string(xs[i]) + " value " + std::to_string(r.value));
    }
    // log-domain entry. The published final column pairs 684.2472086 with a
    // 10^500 label, but that row's own intermediates follow from
    // ln x = 300 ln 10; the label is a misprint (see the notes ledger).
    const auto r300 = w0_from_ln(300.0 * kLn10);
    c.expect(r300.converged() && rel(r300.value, 684.2472086) <= 5e-7,
             "ln x = 300 ln 10 gave " + std::to_string(r300.value));
    const auto r500 = w0_from_ln(500.0 * kLn10);
    const double oracle500 = support::bisect(
        [](double y) { return y + std::log(y) - 500.0 * kLn10; }, 1.0, 500.0 * kLn10, 1e-9);
    c.expect(r500.converged() && rel(r500.value, oracle500) <= 1e-9,
             "ln x = 500 ln 10 gave " + std::to_string(r500.value) + " vs oracle " +
                 std::to_string(oracle500));
    report(2, "method-2 table reproduction including the log-domain entry", c);
}

void criterion3() {
    Criterion c;
    const double xs[] = {-0.365, -0.25, -0.1, -1e-3};
    const double secondary[] = {1.130655313, 2.153292364, 3.577152064, 9.11800647};
    const double principal[] = {0.879820, 0.3574029562, 0.1118325592, 0.0010010015};
    for (int i = 0; i < 4; ++i)
        for (Method method : {Method::M1, Method::M2}) {
            const auto sec = w_negative(xs[i], Branch::Secondary, method);
            c.expect(sec.converged() && rel(std::abs(sec.value), secondary[i]) <= 5e-6,
                     "secondary x=" + std::to_string(xs[i]) + " " + to_string(method));
            const auto pri = w_negative(xs[i], Branch::Principal, method);
            c.expect(pri.converged() && rel(std::abs(pri.value), principal[i]) <= 5e-6,
                     "principal x=" + std::to_string(xs[i]) + " " + to_string(method));
        }
    report(3, "negative-argument branch reproduction, both methods", c);
}

void criterion4() {
    Criterion c;
    auto check_sweep = [&c](const std::vector<BranchResult>& results, const char* what) {
        double lo = 1e308, hi = -1e308;
        for (const auto& r : results) {
            c.expect(r.converged(), std::string(what) + ": a seed failed to converge");
            lo = std::min(lo, std::abs(r.value));
            hi = std::max(hi, std::abs(r.value));
        }
        c.expect((hi - lo) <= 1e-8 * hi, std::string(what) + ": seed spread too wide");
    };
    check_sweep(seed_sweep(1e5, {1.0, 10.0, 1e2, 1e3, 1e4, 1e5, 1e6, 1e12}, Method::M1,
                           Branch::Principal),
                "x=1e5");
    check_sweep(seed_sweep(-0.1, {0.3, 1e3, 1e9}, Method::M1, Branch::Secondary),
                "x=-0.1 secondary");
    check_sweep(seed_sweep(-0.1, {0.3, 5.0}, Method::M1, Branch::Principal),
                "x=-0.1 principal");
    report(4, "seed sweeps converge to one value; huge seeds reseed cleanly", c);
}

void criterion5() {
    Criterion c;
    const auto cli = support::run_cli("eval 1e20 --trace --iters 4 --format json");
    c.expect(cli.exit_code == 0, "cli exited " + std::to_string(cli.exit_code));
    if (cli.exit_code == 0) {
        const json doc = json::parse(cli.out);
        const auto& trace = doc["trace"];
        c.expect(trace.size() == 4, "expected 4 trace rows");
        if (trace.size() == 4) {
            const double z2 = trace[1]["iterate"].get<double>();
            const double z3 = trace[2]["iterate"].get<double>();
            const double z4 = trace[3]["iterate"].get<double>();
            const double z5 = z4 + trace[3]["a"].get<double>();
            c.expect(rel(z2, 5e19) <= 1e-6, "z2 = " + std::to_string(z2));
            c.expect(rel(z3, 2.297042e18) <= 1e-6, "z3 = " + std::to_string(z3));
            // The published step lists z4 = 2.36324704e18, which does not
            // follow from its own coefficient formulas (the l3 printed there
            // is miscomputed); the exact recurrence gives 2.3636888313673e18
            // and the published z5 then agrees again. Checked against the
            // exact value; see the notes ledger.
            c.expect(rel(z4, 2.3636888313673e18) <= 1e-6, "z4 = " + std::to_string(z4));
            c.expect(rel(z5, 2.363688732e18) <= 1e-6, "z5 = " + std::to_string(z5));
            c.expect(rel(doc["value"].get<double>(), 42.306755092) <= 1e-9,
                     "Y = " + std::to_string(doc["value"].get<double>()));
        }
    }
    report(5, "end-to-end trace of eval 1e20 --trace --iters 4", c);
}

void criterion6() {
    Criterion c;
    std::mt19937 rng(20240810);
    std::uniform_real_distribution<double> expo(std::log(1e-6), std::log(1e12));
    int bad1 = 0, bad2 = 0;
    for (int i = 0; i < 1000; ++i) {
        const double x = std::exp(expo(rng));
        const auto r1 = w0(x, Method::M1);
        const auto r2 = w0(x, Method::M2);
        if (!(r1.converged() && std::abs(r1.value * std::exp(r1.value) - x) <= 1e-10 * x))
            ++bad1;
        if (!(r2.converged() && std::abs(r2.value * std::exp(r2.value) - x) <= 1e-10 * x))
            ++bad2;
    }
    c.expect(bad1 == 0, "m1 residual bound failed on " + std::to_string(bad1) + "/1000");
    c.expect(bad2 == 0, "m2 residual bound failed on " + std::to_string(bad2) + "/1000");

    std::uniform_real_distribution<double> nexpo(std::log(1e-3), 0.0);
    int badneg = 0;
    for (int i = 0; i < 500; ++i) {
        const double x = -kInvE * std::exp(nexpo(rng));
        const auto pri = w_negative(x, Branch::Principal, Method::M1);
        const auto sec = w_negative(x, Branch::Secondary, Method::M1);
        const bool ok = sec.value <= -1.0 && -1.0 <= pri.value && pri.value < 0.0 &&
                        std::abs(pri.value * std::exp(pri.value) - x) <= 1e-10 * std::abs(x) &&
                        std::abs(sec.value * std::exp(sec.value) - x) <= 1e-10 * std::abs(x);
        if (!ok) ++badneg;
    }
    c.expect(badneg == 0, "negative-branch bound failed on " + std::to_string(badneg) + "/500");
    report(6, "residual and ordering property suites (1000 + 500 samples)", c);
}

void criterion7() {
    Criterion c;
    for (double x : {1e-5, 0.1, 0.5, 1.0, 100.0, 1e5, 1e20}) {
        const auto r = w0(x, Method::M1);
        const double oracle = bisection_oracle(x, Branch::Principal, 1e-12);
        c.expect(std::abs(r.value - oracle) <= 1e-9,
                 "m1 x=" + std::to_string(x) + " off oracle");
    }
    for (double x : {1e-5, 1e-2, 1e-1, 1.0, 1e2, 1e5, 1e10, 1e20, 1e50, 1e300}) {
        const auto r = x > 1e100 ? w0_from_ln(std::log(x)) : w0(x, Method::M2);
        const double oracle = bisection_oracle(x, Branch::Principal, 1e-12);
        c.expect(std::abs(r.value - oracle) <= 1e-9,
                 "m2 x=" + std::to_string(x) + " off oracle");
    }
    for (double x : {-0.365, -0.25, -0.1, -1e-3})
        for (Branch branch : {Branch::Principal, Branch::Secondary}) {
            const auto r = w_negative(x, branch, Method::M1);
            const double oracle = bisection_oracle(x, branch, 1e-12);
            c.expect(std::abs(r.value - oracle) <= 1e-9,
                     std::string(to_string(branch)) + " x=" + std::to_string(x) +
                         " off oracle");
        }
    report(7, "bisection-oracle equivalence on every tabulated input", c);
}

void criterion8() {
    Criterion c;
    SolveConfig cfg;
    cfg.tol_rel = 1e-12;
    for (double x : {1e-5, 0.1, 0.5, 1.0, 100.0, 1e5, 1e20}) {
        const auto r = w0(x, Method::M1, cfg);
        c.expect(r.converged() && r.iterations() <= 6,
                 "x=" + std::to_string(x) + " took " + std::to_string(r.iterations()));
    }
    report(8, "convergence within 6 corrections at tol_rel = 1e-12", c);
}

void criterion9() {
    Criterion c;
    auto near = [](double got, double want) {
        return std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want));
    };
    // constructed identities
    c.expect(near(solve_y_pow_y(4.0).roots[0], 2.0), "y^y=4");
    c.expect(near(solve_y_pow_y(1.0).roots[0], 1.0), "y^y=1");
    {
        const auto rt2 = solve_y_pow_inv_y(std::sqrt(2.0));
        c.expect(rt2.roots.size() == 2 && near(rt2.roots[0], 2.0) && near(rt2.roots[1], 4.0),
                 "y^(1/y)=sqrt(2)");
        c.expect(near(solve_y_pow_inv_y(std::exp(kInvE)).roots[0], std::exp(1.0)),
                 "y^(1/y)=e^(1/e)");
    }
    {
        auto contains = [&near](const EquationSolution& sol, double want) {
            for (double r : sol.roots)
                if (near(r, want)) return true;
            return false;
        };
        c.expect(contains(solve_plnx_q_over_x(5.0, 2.0, 2.0), 1.0), "5ln(x)+2/x=2");
        c.expect(contains(solve_plnx_q_over_x(1.0, std::exp(1.0), 2.0), std::exp(1.0)),
                 "ln(x)+e/x=2");
        c.expect(contains(solve_plnx_qx(2.0, 3.0, 3.0), 1.0), "2ln(x)+3x=3");
        c.expect(std::abs(solve_px_q_exp_rx(1.0, 2.0, 1.0, 2.0).roots[0]) <= 1e-9,
                 "x+2e^x=2");
        c.expect(contains(solve_px_q_exp_rx(1.0, 1.0, 1.0, 1.0 + std::exp(1.0)), 1.0),
                 "x+e^x=1+e");
        c.expect(near(power_tower(std::sqrt(2.0)), 2.0), "tower(sqrt(2))");
        c.expect(power_tower(1.0) == 1.0, "tower(1)");
    }
    // oracle-verified roots
    {
        const double ref = support::bisect(
            [](double y) { return y * std::log(y) - std::log(10.0); }, 1.0, 10.0);
        c.expect(near(solve_y_pow_y(10.0).roots[0], ref), "y^y=10 vs oracle");

        const auto m12 = solve_y_pow_inv_y(1.2);
        const auto f12 = [](double y) { return std::log(y) - y * std::log(1.2); };
        c.expect(m12.roots.size() == 2 &&
                     near(m12.roots[0], support::bisect(f12, 1.0, std::exp(1.0))) &&
                     near(m12.roots[1], support::bisect(f12, std::exp(1.0), 50.0)),
                 "y^(1/y)=1.2 vs oracle");

        const auto c213 = solve_plnx_q_over_x(2.0, 1.0, 3.0);
        const auto f213 = [](double x) { return 2.0 * std::log(x) + 1.0 / x - 3.0; };
        c.expect(c213.roots.size() == 2 &&
                     near(c213.roots[0], support::bisect(f213, 0.05, 0.5)) &&
                     near(c213.roots[1], support::bisect(f213, 0.5, 10.0)),
                 "2ln(x)+1/x=3 vs oracle");

        const auto lnxe = solve_plnx_qx(1.0, 1.0, std::exp(1.0));
        c.expect(near(lnxe.roots[0],
                      support::bisect(
                          [](double x) { return std::log(x) + x - std::exp(1.0); }, 1.0, 3.0)),
                 "ln(x)+x=e vs oracle");
        c.expect(near(solve_plnx_qx(1.0, 1.0, 1.0).roots[0], 1.0), "ln(x)+x=1");

        const auto exprx = solve_px_q_exp_rx(3.0, 1.0, 2.0, 5.0);
        c.expect(near(exprx.roots[0],
                      support::bisect(
                          [](double x) { return 3.0 * x + std::exp(2.0 * x) - 5.0; }, 0.0,
                          1.0)),
                 "3x+e^(2x)=5 vs oracle");

        double t = 1.0;
        for (int i = 0; i < 200; ++i) t = std::pow(1.2, t);
        c.expect(near(power_tower(1.2), t), "tower(1.2) vs iteration oracle");
    }
    report(9, "equation solvers: identities exact, derived roots vs oracles", c);
}

void criterion10() {
    Criterion c;
    for (Branch branch : {Branch::Principal, Branch::Secondary})
        for (Method method : {Method::M1, Method::M2}) {
            try {
                const auto r = w_negative(-kInvE, branch, method);
                c.expect(std::abs(r.value + 1.0) <= 1e-4,
                         std::string(to_string(branch)) + "/" + to_string(method) +
                             " value " + std::to_string(r.value));
                c.expect(r.status() != TraceStatus::NegativeDiscriminant,
                         "negative discriminant escaped at the branch point");
            } catch (const std::exception& e) {
                c.expect(false, std::string("threw: ") + e.what());
            }
        }
    // one rounding unit inside the domain must behave the same way
    const double inside = std::nextafter(-kInvE, 0.0);
    for (Branch branch : {Branch::Principal, Branch::Secondary}) {
        const auto r = w_negative(inside, branch, Method::M1);
        c.expect(std::abs(r.value + 1.0) <= 1e-3 &&
                     r.status() != TraceStatus::NegativeDiscriminant,
                 std::string(to_string(branch)) + " just inside the branch point");
    }
    report(10, "branch-point robustness at x = -1/e", c);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failed == 0)
        std::printf("acceptance: all 10 criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failed);
    return g_failed;
}
