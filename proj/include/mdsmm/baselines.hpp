#pragma once

#include "mdsmm/matcore.hpp"
#include "mdsmm/ovr.hpp"
#include "mdsmm/qpsolver.hpp"
#include "mdsmm/sample.hpp"

#include <iosfwd>
#include <span>

namespace mdsmm {

/// Linear soft-margin SVM on matrices: decision <W, X> + b, which is the vectorized SVM
/// w'vec(X) + b with W the reshaped weight vector.
struct LinearSvmModel {
    Mat w;
    double bias = 0.0;
    bool qp_budget_exhausted = false;
};

using LinearOvrModel = OvrModel<LinearSvmModel>;

[[nodiscard]] LinearSvmModel train_linear_svm(std::span<const LabeledSample> samples, double cost,
                                              double kkt_tol = 1e-3, std::size_t max_passes = 0);

[[nodiscard]] double decision_value(const LinearSvmModel &model, const Mat &x);
/// sign(<W, X> + b), sign(0) = +1.
[[nodiscard]] int predict_linear(const LinearSvmModel &model, const Mat &x);

[[nodiscard]] LinearOvrModel train_linear_ovr(std::span<const LabeledSample> samples, double cost,
                                              double kkt_tol = 1e-3);

/// `LSVM 1 m n`, m rows of n reals, `b <real>`; one-vs-rest files prefix each block with `LABEL <k>`.
void write_model(std::ostream &out, const LinearSvmModel &model);
[[nodiscard]] LinearSvmModel read_linear_model(std::istream &in);
void write_model(std::ostream &out, const LinearOvrModel &model);
[[nodiscard]] LinearOvrModel read_linear_ovr_model(std::istream &in);

}  // namespace mdsmm
