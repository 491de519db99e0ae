#pragma once

#include "mdsmm/matcore.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mdsmm {

struct LabeledSample {
    Mat x;
    int label = 0;

    friend bool operator==(const LabeledSample &, const LabeledSample &) = default;
};

/// Common (rows, cols) of a nonempty sample set; throws dimension_error on mixed shapes and
/// input_error on an empty set.
std::pair<std::size_t, std::size_t> common_shape(std::span<const LabeledSample> samples);

/// Throws input_error unless every label is +1 or -1 and both occur.
void require_binary_labels(std::span<const LabeledSample> samples);

/// Distinct labels in ascending order.
std::vector<int> distinct_labels(std::span<const LabeledSample> samples);

}  // namespace mdsmm
