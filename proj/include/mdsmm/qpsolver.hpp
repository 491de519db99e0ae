#pragma once

#include "mdsmm/matcore.hpp"

#include <cstddef>
#include <vector>

namespace mdsmm {

/// Soft-margin SVM dual over a precomputed Gram matrix:
///
///   maximize   sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij
///   subject to 0 <= a_i <= C,  sum_i a_i y_i = 0.
struct DualProblem {
    Mat kernel;
    std::vector<int> labels;
    double cost = 1.0;
    double kkt_tol = 1e-3;
    /// Budget of pair updates; 0 selects the default of 10^4 * N.
    std::size_t max_passes = 0;
    /// Once kkt_tol holds, also require primal - dual <= gap_tol * dual, tightening the KKT target
    /// as needed. 0 disables the check.
    double gap_tol = 0.0;
};

struct DualSolution {
    std::vector<double> alpha;
    double bias = 0.0;
    double dual_objective = 0.0;
    std::size_t iterations = 0;
    /// max(0, m(a) - M(a)): the gap between the most violating up/low pair.
    double max_kkt_violation = 0.0;
    /// False when the pair-update budget ran out before kkt_tol was reached. The best iterate is
    /// still returned; whether to accept it is up to the caller.
    bool converged = false;
};

/// Checks the DualProblem invariants; throws input_error / dimension_error.
void validate(const DualProblem &p);

/// Sequential minimal optimization. The first index is the maximal violator of the up set; its
/// partner is the low-set index with the largest second-order gain. Lowest index wins ties.
///
/// The bias is the mean of y_i - f_i over free vectors (0 < a_i < C); if there are none it is the
/// midpoint of the interval of biases consistent with the KKT conditions. Negating every label
/// returns the same alpha and the negated bias.
[[nodiscard]] DualSolution solve_dual(const DualProblem &p);

/// f_j = sum_i a_i y_i K(x_j, x_i) + bias for each row j of cross_kernel (M x N).
[[nodiscard]] Vec decision_values(const DualProblem &p, const DualSolution &s, const Mat &cross_kernel);

}  // namespace mdsmm
