#include "mdsmm/datagen.hpp"

#include "mdsmm/errors.hpp"

#include <numbers>

namespace mdsmm {

std::uint64_t Rng::next_u64() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() noexcept {
    if (cached_normal_) {
        const double v = *cached_normal_;
        cached_normal_.reset();
        return v;
    }
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(angle);
    return r * std::cos(angle);
}

Mat gaussian_matrix(Rng &rng, std::size_t rows, std::size_t cols) {
    std::vector<double> d(rows * cols);
    for (double &v : d) {
        v = rng.normal();
    }
    return Mat(rows, cols, std::move(d));
}

void validate(const SyntheticConfig &cfg) {
    if (cfg.n < 2) {
        throw input_error("synthetic config: n must be at least 2");
    }
    if (!(cfg.a > 0.0) || !(cfg.b > 0.0) || !(cfg.c > 0.0)) {
        throw input_error("synthetic config: a, b and c must be positive");
    }
    if (cfg.per_class == 0) {
        throw input_error("synthetic config: per_class must be positive");
    }
    if (cfg.groups < 2) {
        throw input_error("synthetic config: at least two groups are required");
    }
}

SyntheticPopulation make_population(const SyntheticConfig &cfg, Rng &rng) {
    if (cfg.n < 2 || cfg.groups < 2) {
        throw input_error("synthetic population: n and groups must be at least 2");
    }
    if (!(cfg.a > 0.0) || !(cfg.b >= 0.0) || !(cfg.c > 0.0)) {
        throw input_error("synthetic population: need a > 0, b >= 0, c > 0");
    }
    const std::size_t n = cfg.n;
    const Mat q = gaussian_matrix(rng, n, n);

    SyntheticPopulation pop;
    for (std::size_t g = 0; g < cfg.groups; ++g) {
        while (true) {
            const Mat mixed = cfg.a * q + cfg.b * gaussian_matrix(rng, n, n);
            std::vector<double> f(n * n);
            bool degenerate = false;
            for (std::size_t k = 0; k < n && !degenerate; ++k) {
                double delta_sq = 0.0;
                for (double v : mixed.row(k)) {
                    delta_sq += v * v;
                }
                if (delta_sq < 1e-24) {
                    degenerate = true;
                    break;
                }
                const double scale = cfg.c / std::sqrt(delta_sq);
                for (std::size_t j = 0; j < n; ++j) {
                    f[k * n + j] = scale * mixed(k, j);
                }
            }
            if (!degenerate) {
                pop.factors.emplace_back(n, n, std::move(f));
                break;
            }
        }
        pop.labels.push_back(cfg.groups == 2 ? (g == 0 ? 1 : -1) : static_cast<int>(g + 1));
    }
    return pop;
}

std::vector<LabeledSample> sample_population(const SyntheticPopulation &pop, std::size_t per_class, Rng &rng) {
    std::vector<LabeledSample> out;
    out.reserve(per_class * pop.factors.size());
    for (std::size_t g = 0; g < pop.factors.size(); ++g) {
        const Mat &f = pop.factors[g];
        for (std::size_t s = 0; s < per_class; ++s) {
            const Mat p = matmul(f, gaussian_matrix(rng, f.cols(), f.cols()));
            out.push_back({matmul(p, transpose(p)), pop.labels[g]});
        }
    }
    return out;
}

std::vector<LabeledSample> synthetic_two_class(const SyntheticConfig &cfg) {
    validate(cfg);
    Rng rng(cfg.seed);
    const SyntheticPopulation pop = make_population(cfg, rng);
    return sample_population(pop, cfg.per_class, rng);
}

std::vector<int> markov_label_stream(Rng &rng, double flip_prob, std::size_t length) {
    if (!(flip_prob > 0.0 && flip_prob < 1.0)) {
        throw input_error("markov_label_stream: flip probability must lie in (0, 1)");
    }
    std::vector<int> out;
    out.reserve(length);
    int state = rng.sign();
    for (std::size_t i = 0; i < length; ++i) {
        if (i > 0 && rng.uniform() < flip_prob) {
            state = -state;
        }
        out.push_back(state);
    }
    return out;
}

}  // namespace mdsmm
