#include "mdsmm/sample.hpp"

#include "mdsmm/errors.hpp"

#include <algorithm>
#include <string>

namespace mdsmm {

std::pair<std::size_t, std::size_t> common_shape(std::span<const LabeledSample> samples) {
    if (samples.empty()) {
        throw input_error("sample set is empty");
    }
    const std::size_t m = samples.front().x.rows();
    const std::size_t n = samples.front().x.cols();
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].x.rows() != m || samples[i].x.cols() != n) {
            throw dimension_error("sample " + std::to_string(i) + " has shape " +
                                  std::to_string(samples[i].x.rows()) + "x" + std::to_string(samples[i].x.cols()) +
                                  ", expected " + std::to_string(m) + "x" + std::to_string(n));
        }
    }
    return {m, n};
}

void require_binary_labels(std::span<const LabeledSample> samples) {
    bool pos = false;
    bool neg = false;
    for (const auto &s : samples) {
        if (s.label == 1) {
            pos = true;
        } else if (s.label == -1) {
            neg = true;
        } else {
            throw input_error("binary training needs labels in {-1, +1}, got " + std::to_string(s.label));
        }
    }
    if (!pos || !neg) {
        throw input_error("binary training needs at least one sample of each label");
    }
}

std::vector<int> distinct_labels(std::span<const LabeledSample> samples) {
    std::vector<int> labels;
    labels.reserve(samples.size());
    for (const auto &s : samples) {
        labels.push_back(s.label);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

}  // namespace mdsmm
