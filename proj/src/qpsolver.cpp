#include "mdsmm/qpsolver.hpp"

#include "mdsmm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mdsmm {

namespace {

constexpr double curvature_floor = 1e-12;
constexpr double min_threshold = 1e-12;

// Index sets of the working-set rule, written in terms of the gradient G of the minimization
// form f(a) = 1/2 a'Qa - e'a with Q_ij = y_i y_j K_ij.
bool in_up(int y, double a, double c) { return (y > 0 && a < c) || (y < 0 && a > 0.0); }
bool in_low(int y, double a, double c) { return (y > 0 && a > 0.0) || (y < 0 && a < c); }

struct Violation {
    std::size_t up = 0;
    std::size_t low = 0;
    double m = -std::numeric_limits<double>::infinity();
    double big_m = std::numeric_limits<double>::infinity();
};

Violation most_violating_pair(const std::vector<std::size_t> &active, const std::vector<int> &y,
                              const std::vector<double> &a, const std::vector<double> &grad, double c) {
    Violation v;
    for (std::size_t t : active) {
        const double score = -y[t] * grad[t];
        // strict comparisons keep the lowest index on ties
        if (in_up(y[t], a[t], c) && score > v.m) {
            v.m = score;
            v.up = t;
        }
        if (in_low(y[t], a[t], c) && score < v.big_m) {
            v.big_m = score;
            v.low = t;
        }
    }
    return v;
}

// Partner for i: among low-set indices violating with i, the one whose pair step gains the most,
// (m - score)^2 / eta, with eta floored at the curvature guard. Lowest index on ties.
std::size_t second_order_partner(const Mat &k, const std::vector<double> &diag, const std::vector<std::size_t> &active,
                                 const std::vector<int> &y, const std::vector<double> &a,
                                 const std::vector<double> &grad, double c, std::size_t i, double m) {
    const std::size_t n = a.size();
    const double *row_i = k.data().data() + i * n;
    std::size_t best = n;
    double best_gain = -1.0;
    for (std::size_t t : active) {
        if (!in_low(y[t], a[t], c)) {
            continue;
        }
        const double diff = m + y[t] * grad[t];
        if (!(diff > 0.0)) {
            continue;
        }
        double eta = diag[i] + diag[t] - 2.0 * row_i[t];
        if (!(eta > curvature_floor)) {
            eta = curvature_floor;
        }
        const double gain = diff * diff / eta;
        if (gain > best_gain) {
            best_gain = gain;
            best = t;
        }
    }
    return best;
}

// Drops bound variables that cannot join a violating pair at the current m and M. Sorted order is
// kept so ties still resolve to the lowest index.
void shrink(std::vector<std::size_t> &active, const std::vector<int> &y, const std::vector<double> &a,
            const std::vector<double> &grad, double c, const Violation &v) {
    std::erase_if(active, [&](std::size_t t) {
        const bool up = in_up(y[t], a[t], c);
        const bool low = in_low(y[t], a[t], c);
        const double score = -y[t] * grad[t];
        return (up && !low && score < v.big_m) || (low && !up && score > v.m);
    });
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        out[t] = t;
    }
    return out;
}

std::vector<double> full_gradient(const Mat &k, const std::vector<int> &y, const std::vector<double> &a) {
    const std::size_t n = a.size();
    std::vector<double> grad(n, -1.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (a[j] == 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            grad[i] += y[i] * y[j] * k(i, j) * a[j];
        }
    }
    return grad;
}

double compute_bias(const std::vector<int> &y, const std::vector<double> &a, const std::vector<double> &grad,
                    double c) {
    double free_sum = 0.0;
    std::size_t free_count = 0;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < a.size(); ++t) {
        // y_t - f_t without bias
        const double r = -y[t] * grad[t];
        if (a[t] > 0.0 && a[t] < c) {
            free_sum += r;
            ++free_count;
        } else if ((y[t] > 0) == (a[t] == 0.0)) {
            lower = std::max(lower, r);
        } else {
            upper = std::min(upper, r);
        }
    }
    if (free_count > 0) {
        return free_sum / static_cast<double>(free_count);
    }
    if (std::isinf(lower)) {
        return upper;
    }
    if (std::isinf(upper)) {
        return lower;
    }
    return 0.5 * (lower + upper);
}

// Primal minus dual at the solver's bias, relative to the dual value. With (Qa)_t = grad_t + 1 the
// hinge of sample t is max(0, -grad_t - y_t b).
bool gap_within(const std::vector<int> &y, const std::vector<double> &a, const std::vector<double> &grad, double c,
                double rel) {
    const double b = compute_bias(y, a, grad, c);
    double quad = 0.0;
    double sum = 0.0;
    double hinge = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        quad += a[t] * (grad[t] + 1.0);
        sum += a[t];
        hinge += std::max(0.0, -grad[t] - y[t] * b);
    }
    const double dual = sum - 0.5 * quad;
    return quad - sum + c * hinge <= rel * std::max(dual, std::numeric_limits<double>::min());
}

}  // namespace

void validate(const DualProblem &p) {
    const std::size_t n = p.labels.size();
    if (p.kernel.rows() != p.kernel.cols()) {
        throw dimension_error("dual problem: kernel is not square");
    }
    if (p.kernel.rows() != n) {
        throw dimension_error("dual problem: kernel size " + std::to_string(p.kernel.rows()) + " != " +
                              std::to_string(n) + " labels");
    }
    if (!(p.cost > 0.0) || !std::isfinite(p.cost)) {
        throw input_error("dual problem: cost must be positive");
    }
    if (!(p.kkt_tol > 0.0)) {
        throw input_error("dual problem: kkt_tol must be positive");
    }
    if (!(p.gap_tol >= 0.0)) {
        throw input_error("dual problem: gap_tol must be non-negative");
    }
    bool has_pos = false;
    bool has_neg = false;
    for (int y : p.labels) {
        if (y == 1) {
            has_pos = true;
        } else if (y == -1) {
            has_neg = true;
        } else {
            throw input_error("dual problem: labels must be +1 or -1");
        }
    }
    if (!has_pos || !has_neg) {
        throw input_error("dual problem: both +1 and -1 labels are required");
    }
    double scale = 0.0;
    for (double v : p.kernel.data()) {
        scale = std::max(scale, std::abs(v));
    }
    const double tol = 1e-9 * std::max(scale, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(p.kernel(i, j) - p.kernel(j, i)) > tol) {
                throw input_error("dual problem: kernel is not symmetric at (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")");
            }
        }
    }
}

DualSolution solve_dual(const DualProblem &p) {
    validate(p);
    const std::size_t n = p.labels.size();
    const Mat &k = p.kernel;
    // Solved with the first label oriented to +1, so flipping every label only negates the bias.
    const int orientation = p.labels.front();
    std::vector<int> y = p.labels;
    for (int &label : y) {
        label *= orientation;
    }
    const double c = p.cost;
    const std::size_t budget = p.max_passes ? p.max_passes : 10000 * n;

    std::vector<double> a(n, 0.0);
    std::vector<double> grad(n, -1.0);
    std::vector<double> diag(n);
    for (std::size_t t = 0; t < n; ++t) {
        diag[t] = k(t, t);
    }

    DualSolution out;
    // The incrementally updated gradient drifts over long runs; it is rebuilt periodically and
    // before convergence is accepted.
    const std::size_t refresh_period = 100 * n;
    std::size_t since_refresh = 0;
    // Gradients of shrunk variables go stale; every refresh restores the full set.
    const std::vector<std::size_t> everyone = all_indices(n);
    std::vector<std::size_t> active = everyone;
    const std::size_t shrink_period = std::min<std::size_t>(n, 1000);
    std::size_t since_shrink = 0;
    // Tightened whenever the KKT target is met but the duality gap is not.
    double threshold = p.kkt_tol;
    while (true) {
        Violation v = most_violating_pair(active, y, a, grad, c);
        double gap = v.m - v.big_m;
        if (!(gap > threshold) || since_refresh >= refresh_period) {
            if (since_refresh > 0) {
                grad = full_gradient(k, y, a);
                since_refresh = 0;
            }
            if (since_refresh == 0) {
                active = everyone;
                since_shrink = 0;
                v = most_violating_pair(active, y, a, grad, c);
                gap = v.m - v.big_m;
            }
            if (!(gap > threshold)) {
                // below the floor the gap estimate is rounding noise
                if (p.gap_tol <= 0.0 || !(gap > min_threshold) || gap_within(y, a, grad, c, p.gap_tol)) {
                    out.converged = true;
                    break;
                }
                threshold = std::max(0.25 * gap, min_threshold);
            }
        }
        if (out.iterations >= budget) {
            break;
        }
        if (++since_shrink >= shrink_period) {
            shrink(active, y, a, grad, c, v);
            since_shrink = 0;
        }
        const std::size_t i = v.up;
        const std::size_t j = second_order_partner(k, diag, active, y, a, grad, c, i, v.m);

        // Move a_i += y_i t, a_j -= y_j t (keeps sum a y fixed); t is clipped to the box.
        double t_max = y[i] > 0 ? c - a[i] : a[i];
        bool i_hits = true;
        const double t_j = y[j] > 0 ? a[j] : c - a[j];
        if (t_j < t_max) {
            t_max = t_j;
            i_hits = false;
        }
        const double eta = diag[i] + diag[j] - 2.0 * k(i, j);
        double t = t_max;
        bool clipped = true;
        if (eta > curvature_floor) {
            const double t_opt = (v.m + y[j] * grad[j]) / eta;
            if (t_opt < t_max) {
                t = t_opt;
                clipped = false;
            }
        }

        a[i] += y[i] * t;
        a[j] -= y[j] * t;
        if (clipped) {
            // snap the variable that reached the box exactly onto it
            if (i_hits) {
                a[i] = y[i] > 0 ? c : 0.0;
            } else {
                a[j] = y[j] > 0 ? 0.0 : c;
            }
        }
        a[i] = std::clamp(a[i], 0.0, c);
        a[j] = std::clamp(a[j], 0.0, c);

        // rows instead of columns: the kernel is symmetric and stored row-major
        const double *row_i = k.data().data() + i * n;
        const double *row_j = k.data().data() + j * n;
        for (std::size_t r : active) {
            grad[r] += t * y[r] * (row_i[r] - row_j[r]);
        }
        ++out.iterations;
        ++since_refresh;
    }

    // Recompute the gradient from scratch so the reported diagnostics carry no drift.
    grad = full_gradient(k, y, a);
    const Violation v = most_violating_pair(everyone, y, a, grad, c);
    out.max_kkt_violation = std::max(0.0, v.m - v.big_m);
    double objective = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        // sum a - 1/2 a'Qa, with (Qa)_r = grad_r + 1
        objective += a[r] - 0.5 * a[r] * (grad[r] + 1.0);
    }
    out.dual_objective = objective;
    out.bias = orientation * compute_bias(y, a, grad, c);
    out.alpha = std::move(a);
    return out;
}

Vec decision_values(const DualProblem &p, const DualSolution &s, const Mat &cross_kernel) {
    const std::size_t n = p.labels.size();
    if (cross_kernel.cols() != n || s.alpha.size() != n) {
        throw dimension_error("decision_values: cross kernel has " + std::to_string(cross_kernel.cols()) +
                              " columns, expected " + std::to_string(n));
    }
    std::vector<double> out(cross_kernel.rows(), s.bias);
    for (std::size_t r = 0; r < cross_kernel.rows(); ++r) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += s.alpha[i] * p.labels[i] * cross_kernel(r, i);
        }
        out[r] += acc;
    }
    return Vec(std::move(out));
}

}  // namespace mdsmm
