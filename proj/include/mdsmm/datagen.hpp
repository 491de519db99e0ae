#pragma once

#include "mdsmm/matcore.hpp"
#include "mdsmm/sample.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace mdsmm {

/// SplitMix64 stream with Box-Muller normals.
///
/// next_u64: state += 0x9E3779B97F4A7C15, then z = state;
///           z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
///           return z ^ (z >> 31).
/// uniform:  (next_u64() >> 11) * 2^-53, in [0, 1).
/// normal:   u1 = 1 - uniform(), u2 = uniform(), r = sqrt(-2 ln u1); returns r cos(2 pi u2) and
///           caches r sin(2 pi u2) for the following call.
/// split:    a new Rng seeded with next_u64().
class Rng {
  public:
    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next_u64() noexcept;
    double uniform() noexcept;
    double normal() noexcept;
    /// Uniform +1 / -1.
    int sign() noexcept { return (next_u64() >> 63) ? 1 : -1; }
    Rng split() noexcept { return Rng(next_u64()); }

  private:
    std::uint64_t state_;
    std::optional<double> cached_normal_;
};

/// i.i.d. standard normal entries.
[[nodiscard]] Mat gaussian_matrix(Rng &rng, std::size_t rows, std::size_t cols);

struct SyntheticConfig {
    std::size_t n = 20;
    double a = 10.0;
    double b = 2.0;
    double c = std::sqrt(20.0);
    std::size_t per_class = 500;
    std::uint64_t seed = 0;
    /// Number of covariance groups; two gives the binary protocol.
    std::size_t groups = 2;
};

void validate(const SyntheticConfig &cfg);

/// Population of the covariance protocol: one factor F_i = R_i M_i per group with
/// M_i = a Q + b eps_i and R_i = diag(c / delta_k), delta_k^2 = (M_i M_i')_kk. The group covariance
/// is Sigma_i = F_i F_i' and has c^2 on its diagonal.
struct SyntheticPopulation {
    std::vector<Mat> factors;
    std::vector<int> labels;
};

/// Draws Q and every eps_i from `rng`. Requires a, c > 0 and b >= 0 (b = 0 makes all groups share
/// one covariance). Any delta_k^2 < 1e-24 triggers a fresh eps_i.
[[nodiscard]] SyntheticPopulation make_population(const SyntheticConfig &cfg, Rng &rng);

/// `per_class` samples per group. Each sample is X = P P' with P = F_i G, G standard normal n x n,
/// i.e. the columns of P are independent N(0, Sigma_i) vectors.
[[nodiscard]] std::vector<LabeledSample> sample_population(const SyntheticPopulation &pop, std::size_t per_class,
                                                           Rng &rng);

/// Population and samples from Rng(cfg.seed). Two groups are labelled +1 and -1; more groups are
/// labelled 1..groups.
[[nodiscard]] std::vector<LabeledSample> synthetic_two_class(const SyntheticConfig &cfg);

/// Two-state chain on {+1, -1} started from its stationary law: stays with probability 1 - p,
/// flips with probability p.
[[nodiscard]] std::vector<int> markov_label_stream(Rng &rng, double flip_prob, std::size_t length);

}  // namespace mdsmm
