#include "skyloop/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace skyloop {

namespace {

double circle_distance(double a_degrees, double b_degrees) {
    double d = std::fabs(normalize_yaw(a_degrees) - normalize_yaw(b_degrees));
    return std::min(d, 360.0 - d);
}

}  // namespace

bool transitions_match(const Transition& a, const Transition& b, const ToleranceConfig& tol) {
    if (std::fabs(a.d_north - b.d_north) > tol.position_tolerance) return false;
    if (std::fabs(a.d_east - b.d_east) > tol.position_tolerance) return false;
    if (std::fabs(a.d_down - b.d_down) > tol.position_tolerance) return false;
    double yaw_diff = tol.rotation_modulo_360 ? circle_distance(a.d_yaw, b.d_yaw)
                                              : std::fabs(a.d_yaw - b.d_yaw);
    return yaw_diff <= tol.yaw_tolerance;
}

size_t lcs_length(const std::vector<Transition>& executed,
                  const std::vector<Transition>& ground_truth, const ToleranceConfig& tol) {
    const size_t n = executed.size();
    const size_t m = ground_truth.size();
    if (n == 0 || m == 0) return 0;
    std::vector<size_t> prev(m + 1, 0), curr(m + 1, 0);
    for (size_t i = 1; i <= n; ++i) {
        for (size_t j = 1; j <= m; ++j) {
            if (transitions_match(executed[i - 1], ground_truth[j - 1], tol)) {
                curr[j] = prev[j - 1] + 1;
            } else {
                curr[j] = std::max(prev[j], curr[j - 1]);
            }
        }
        std::swap(prev, curr);
    }
    return prev[m];
}

double completeness(const std::vector<Transition>& executed,
                    const std::vector<Transition>& ground_truth, const ToleranceConfig& tol) {
    if (ground_truth.empty()) return 0.0;
    size_t credit;
    if (tol.prefix_mode) {
        size_t k = 0;
        while (k < executed.size() && k < ground_truth.size() &&
               transitions_match(executed[k], ground_truth[k], tol)) {
            ++k;
        }
        credit = k;
    } else {
        credit = lcs_length(executed, ground_truth, tol);
    }
    return static_cast<double>(credit) / static_cast<double>(ground_truth.size());
}

int success(const std::vector<Transition>& executed, const std::vector<Transition>& ground_truth,
            const ToleranceConfig& tol) {
    if (executed.size() != ground_truth.size()) return 0;
    return completeness(executed, ground_truth, tol) == 1.0 ? 1 : 0;
}

}  // namespace skyloop
