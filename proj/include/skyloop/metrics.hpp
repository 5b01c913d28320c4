#pragma once

#include <cstddef>
#include <vector>

#include "skyloop/sim.hpp"

namespace skyloop {

struct ToleranceConfig {
    double position_tolerance = 0.1;  // meters, per component
    double yaw_tolerance = 1.0;       // degrees
    // Compare rotations on the circle instead of as signed commanded angles
    // (turn_cw(450) then matches a ground-truth +90).
    bool rotation_modulo_360 = false;
    // Score the longest matching prefix instead of the LCS.
    bool prefix_mode = false;
};

bool transitions_match(const Transition& a, const Transition& b, const ToleranceConfig& tol);

// Longest order-preserving common subsequence under tolerance equality.
size_t lcs_length(const std::vector<Transition>& executed,
                  const std::vector<Transition>& ground_truth, const ToleranceConfig& tol);

// Fraction of ground-truth transitions credited as correctly executed.
double completeness(const std::vector<Transition>& executed,
                    const std::vector<Transition>& ground_truth, const ToleranceConfig& tol);

// 1 only for an exact sequence match under tolerance: full completeness and
// equal lengths, so extra actions never count as success.
int success(const std::vector<Transition>& executed, const std::vector<Transition>& ground_truth,
            const ToleranceConfig& tol);

}  // namespace skyloop
