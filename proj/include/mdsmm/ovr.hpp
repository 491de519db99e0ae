#pragma once

#include "mdsmm/errors.hpp"
#include "mdsmm/sample.hpp"

#include <cstddef>
#include <future>
#include <span>
#include <vector>

namespace mdsmm {

/// One-vs-rest decomposition over any binary model exposing `decision_value(model, X)`.
template <class Model>
struct OvrModel {
    std::vector<int> labels;
    std::vector<Model> binaries;
};

/// Trains one `label vs. rest` problem per distinct label. `train_binary` receives samples
/// relabelled to +1 (this label) / -1 (everything else). Binary problems run concurrently.
template <class Model, class TrainBinary>
OvrModel<Model> train_ovr(std::span<const LabeledSample> samples, TrainBinary train_binary) {
    common_shape(samples);
    OvrModel<Model> out;
    out.labels = distinct_labels(samples);
    if (out.labels.size() < 2) {
        throw input_error("one-vs-rest needs at least two distinct labels");
    }
    std::vector<std::future<Model>> jobs;
    jobs.reserve(out.labels.size());
    for (int label : out.labels) {
        jobs.push_back(std::async(std::launch::async, [samples, label, &train_binary] {
            std::vector<LabeledSample> relabelled;
            relabelled.reserve(samples.size());
            for (const auto &s : samples) {
                relabelled.push_back({s.x, s.label == label ? 1 : -1});
            }
            return train_binary(std::span<const LabeledSample>(relabelled));
        }));
    }
    out.binaries.reserve(jobs.size());
    for (auto &job : jobs) {
        out.binaries.push_back(job.get());
    }
    return out;
}

/// Label whose binary decision value is largest; ties go to the smallest label.
template <class Model>
int predict_ovr(const OvrModel<Model> &model, const Mat &x) {
    std::size_t best = 0;
    double best_value = decision_value(model.binaries[0], x);
    for (std::size_t k = 1; k < model.binaries.size(); ++k) {
        const double v = decision_value(model.binaries[k], x);
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }
    return model.labels[best];
}

}  // namespace mdsmm
