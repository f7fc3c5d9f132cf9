#ifndef LWQ_TESTS_SUPPORT_HPP
#define LWQ_TESTS_SUPPORT_HPP

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

namespace support {

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(1e-300, std::abs(b));
}

/// Plain bisection on [lo, hi]; the test-side oracle, independent of the
/// library's own root finders.
template <typename Fn>
double bisect(Fn&& f, double lo, double hi, double tol = 1e-13) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw std::runtime_error("bisect: no sign change in bracket");
    for (int i = 0; i < 2000 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

/// Run the CLI binary with the given arguments, capturing stdout (stderr is
/// folded in when merge_stderr is set).
inline CliResult run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string cmd =
        std::string(LWQ_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    CliResult result;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace support

#endif  // LWQ_TESTS_SUPPORT_HPP
