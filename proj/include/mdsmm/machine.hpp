#pragma once

// Multi-distance support matrix machine: training by alternating projection, prediction, and the
// `MDSMM 1` model text format.

#include "mdsmm/matcore.hpp"
#include "mdsmm/ovr.hpp"
#include "mdsmm/qpsolver.hpp"
#include "mdsmm/sample.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace mdsmm {

enum class HalfStep { init, w_step, z_step };

struct HistoryEntry {
    std::size_t iteration = 0;
    HalfStep step = HalfStep::init;
    /// ½‖w‖²‖Z‖² + C Σ hinge, evaluated with the bias of this half-step.
    double primal_objective = 0.0;
    /// Dual value of the half-step's QP; empty for the initial point.
    std::optional<double> dual_objective;
    /// Convergence statistic; recorded on Z-steps only.
    std::optional<double> convergence_statistic;
};

/// Everything a half-step produced. Passed to TrainConfig::observer after each half-step.
struct HalfStepTrace {
    std::size_t iteration = 0;
    HalfStep step = HalfStep::w_step;
    Vec w_before;
    Mat z_before;
    Vec w_after;
    Mat z_after;
    double bias = 0.0;
    DualSolution dual;
};

struct TrainConfig {
    double cost = 1.0;
    double epsilon = 1e-4;
    std::size_t max_loops = 50;
    /// KKT tolerance of each half-step QP.
    double kkt_tol = 1e-6;
    /// Pair-update budget per half-step QP; 0 selects 100000 per training sample.
    std::size_t max_passes = 0;
    /// Relative duality-gap target of each half-step QP; 0 disables it.
    double gap_tol = 1e-8;
    std::function<void(const HalfStepTrace &)> observer;
};

struct MdsmModel {
    Vec w;
    Mat z;
    double bias = 0.0;
    std::vector<HistoryEntry> history;
    std::size_t loops = 0;
    bool converged = false;
    /// Training stopped because ‖w‖ or ‖Z‖ vanished; the model is the last good iterate.
    bool degenerate = false;
    /// Some half-step QP ran out of its pair-update budget.
    bool qp_budget_exhausted = false;
};

using MdsmOvrModel = OvrModel<MdsmModel>;

void validate(const TrainConfig &cfg);

/// Alternating projection from w = 1, Z = 1, b = 0. Each half-step is a soft-margin SVM dual:
/// the w-step over features d2(X_i, Z) with Gram scaled by 1/‖Z‖², the Z-step over G(w) o X_i
/// with Gram scaled by 1/‖w‖². Stops when
/// |w'_{t+1} w_t / w'_t w_t - 1| + |<Z_{t+1}, Z_t> / <Z_t, Z_t> - 1| < epsilon or after max_loops.
[[nodiscard]] MdsmModel train_binary(std::span<const LabeledSample> samples, const TrainConfig &cfg);

/// w' d2(X, Z) + b.
[[nodiscard]] double decision_value(const MdsmModel &model, const Mat &x);
/// sign of decision_value, with sign(0) = +1.
[[nodiscard]] int predict(const MdsmModel &model, const Mat &x);

[[nodiscard]] MdsmOvrModel train_ovr(std::span<const LabeledSample> samples, const TrainConfig &cfg);
[[nodiscard]] int predict(const MdsmOvrModel &model, const Mat &x);

[[nodiscard]] double primal_objective(std::span<const LabeledSample> samples, const Vec &w, const Mat &z,
                                      double bias, double cost);
[[nodiscard]] double primal_objective(std::span<const LabeledSample> samples, const MdsmModel &model, double cost);

void write_model(std::ostream &out, const MdsmModel &model);
[[nodiscard]] MdsmModel read_model(std::istream &in);
void write_model(std::ostream &out, const MdsmOvrModel &model);
[[nodiscard]] MdsmOvrModel read_ovr_model(std::istream &in);

}  // namespace mdsmm
