#pragma once

#include "mdsmm/matcore.hpp"
#include "mdsmm/sample.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mdsmm {

struct Dataset {
    std::vector<LabeledSample> samples;
    std::size_t m = 0;
    std::size_t n = 0;
    /// Free-text note on where the samples came from. Not stored in the file format.
    std::string provenance;

    /// Compares samples and shape; provenance is ignored.
    friend bool operator==(const Dataset &a, const Dataset &b) {
        return a.m == b.m && a.n == b.n && a.samples == b.samples;
    }
};

/// Builds a dataset from a nonempty, uniformly shaped sample set.
[[nodiscard]] Dataset make_dataset(std::vector<LabeledSample> samples, std::string provenance = {});

// Text format:
//   MDS 1 N m n
//   label <int>        } repeated N times
//   m lines of n reals }
// Reals are written with 17 significant digits, so a round trip is exact.

void write_dataset(std::ostream &out, const Dataset &ds);
void write_dataset(const std::filesystem::path &path, const Dataset &ds);
[[nodiscard]] Dataset read_dataset(std::istream &in);
[[nodiscard]] Dataset read_dataset(const std::filesystem::path &path);

/// Pixel matrix (height x width) of a P2 or P5 graymap together with its maxval.
struct PgmImage {
    Mat pixels;
    unsigned maxval = 255;
};

[[nodiscard]] PgmImage read_pgm_image(std::istream &in);
[[nodiscard]] Mat read_pgm(std::istream &in);
[[nodiscard]] Mat read_pgm(const std::filesystem::path &path);

/// Writes P5 (binary) or P2 (ASCII). Pixels are rounded to the nearest integer and must lie in
/// [0, maxval].
void write_pgm(std::ostream &out, const Mat &pixels, unsigned maxval = 255, bool binary = true);
void write_pgm(const std::filesystem::path &path, const Mat &pixels, unsigned maxval = 255, bool binary = true);

/// X / maxval. Throws input_error for maxval <= 0.
[[nodiscard]] Mat normalize_unit(const Mat &x, double maxval);

/// Area-weighted downsampling (or upsampling) to new_m x new_n: every output cell is the mean of
/// the source region it covers, with partially covered pixels weighted by their overlap.
[[nodiscard]] Mat resize_block_mean(const Mat &x, std::size_t new_m, std::size_t new_n);

}  // namespace mdsmm
