#include "doctest.h"

#include "mdsmm/datagen.hpp"
#include "mdsmm/errors.hpp"
#include "mdsmm/evalharness.hpp"
#include "mdsmm/machine.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <sstream>

using namespace mdsmm;

namespace {

std::vector<LabeledSample> singleton_pair() { return {{Mat::ones(2, 2), 1}, {-1.0 * Mat::ones(2, 2), -1}}; }

std::vector<LabeledSample> small_synthetic(std::size_t n, std::size_t per_class, double b, std::uint64_t seed) {
    SyntheticConfig cfg;
    cfg.n = n;
    cfg.per_class = per_class;
    cfg.b = b;
    cfg.seed = seed;
    return synthetic_two_class(cfg);
}

MdsmModel fixed_model(double bias) {
    MdsmModel m{Vec(std::vector<double>{1, -2, 0.5, 3}), Mat(2, 2, {1, 2, -1, 0.5}), bias, {}};
    return m;
}

}  // namespace

TEST_SUITE("mdsmm") {

TEST_CASE("separable singleton pair") {
    TrainConfig cfg;
    cfg.cost = 10.0;
    const auto data = singleton_pair();
    const MdsmModel model = train_binary(data, cfg);
    CHECK(predict(model, data[0].x) == 1);
    CHECK(predict(model, data[1].x) == -1);
    CHECK(norm(model.w) > 0.0);
    CHECK(frobenius_norm(model.z) > 0.0);
    CHECK_FALSE(model.degenerate);
}

TEST_CASE("flipping every label negates the decision function") {
    const auto data = small_synthetic(4, 12, 2.0, 5);
    auto flipped = data;
    for (auto &s : flipped) {
        s.label = -s.label;
    }
    const MdsmModel a = train_binary(data, {});
    const MdsmModel b = train_binary(flipped, {});
    for (const auto &s : data) {
        const double va = decision_value(a, s.x);
        const double vb = decision_value(b, s.x);
        CHECK(vb == -va);
    }
}

TEST_CASE("decision value, prediction and scaling") {
    const Mat x(2, 2, {0.3, -1, 2, 1});
    const MdsmModel m = fixed_model(0.7);
    CHECK(decision_value(m, x) == doctest::Approx(dot(m.w, multi_distance(x, m.z)) + 0.7).epsilon(1e-15));
    CHECK(decision_value(m, Mat::zeros(2, 2)) == 0.7);

    MdsmModel scaled = m;
    scaled.w = 4.0 * m.w;
    scaled.z = 0.25 * m.z;
    CHECK(decision_value(scaled, x) == doctest::Approx(decision_value(m, x)).epsilon(1e-14));

    CHECK(predict(fixed_model(3.2), Mat::zeros(2, 2)) == 1);
    CHECK(predict(fixed_model(-0.1), Mat::zeros(2, 2)) == -1);
    CHECK(predict(fixed_model(0.0), Mat::zeros(2, 2)) == 1);
    CHECK_THROWS_AS(static_cast<void>(decision_value(m, Mat::zeros(3, 2))), dimension_error);
}

TEST_CASE("primal objective") {
    const auto data = singleton_pair();
    CHECK(primal_objective(data, Vec(4, 0.0), Mat::zeros(2, 2), 0.0, 2.5) == 5.0);

    // w = 1, Z = 1: d2(+-ones) = +-2 per entry, decision +-8, margins above one
    const Vec w(4, 1.0);
    const Mat z = Mat::ones(2, 2);
    CHECK(primal_objective(data, w, z, 0.0, 3.0) == doctest::Approx(0.5 * 4.0 * 4.0).epsilon(1e-15));
    CHECK(primal_objective(data, 2.0 * w, 0.5 * z, 0.0, 3.0) ==
          doctest::Approx(primal_objective(data, w, z, 0.0, 3.0)).epsilon(1e-15));
}

TEST_CASE("training rejects bad inputs") {
    TrainConfig cfg;
    auto mixed = singleton_pair();
    mixed.push_back({Mat::ones(3, 2), 1});
    CHECK_THROWS_AS(static_cast<void>(train_binary(mixed, cfg)), dimension_error);
    CHECK_THROWS_AS(static_cast<void>(train_binary(std::vector<LabeledSample>{{Mat::ones(2, 2), 1}}, cfg)),
                    input_error);
    cfg.cost = 0.0;
    CHECK_THROWS_AS(static_cast<void>(train_binary(singleton_pair(), cfg)), input_error);
}

TEST_CASE("property: half-step trace invariants") {
    Rng meta(41);
    for (int rep = 0; rep < 6; ++rep) {
        const auto data = small_synthetic(3 + meta.next_u64() % 4, 8 + meta.next_u64() % 8,
                                          std::pow(2.0, 0.2 + 0.8 * meta.uniform()), meta.next_u64());
        TrainConfig cfg;
        double worst_reconstruction = 0.0;
        cfg.observer = [&](const HalfStepTrace &t) {
            if (t.step == HalfStep::w_step) {
                const double zz = inner_product(t.z_before, t.z_before);
                std::vector<double> ref(t.w_after.size(), 0.0);
                for (std::size_t i = 0; i < data.size(); ++i) {
                    const auto d = oracle::naive_multi_distance(data[i].x, t.z_before);
                    for (std::size_t k = 0; k < ref.size(); ++k) {
                        ref[k] += t.dual.alpha[i] * data[i].label * d[k] / zz;
                    }
                }
                for (std::size_t k = 0; k < ref.size(); ++k) {
                    worst_reconstruction = std::max(worst_reconstruction, oracle::rel_diff(ref[k], t.w_after[k]));
                }
            } else {
                const double ww = dot(t.w_before, t.w_before);
                const Mat g = g_matrix(t.w_before, t.z_after.rows(), t.z_after.cols());
                for (std::size_t r = 0; r < t.z_after.rows(); ++r) {
                    for (std::size_t c = 0; c < t.z_after.cols(); ++c) {
                        double ref = 0.0;
                        for (std::size_t i = 0; i < data.size(); ++i) {
                            ref += t.dual.alpha[i] * data[i].label * g(r, c) * data[i].x(r, c) / ww;
                        }
                        worst_reconstruction = std::max(worst_reconstruction, oracle::rel_diff(ref, t.z_after(r, c)));
                    }
                }
            }
        };
        const MdsmModel model = train_binary(data, cfg);
        CHECK(worst_reconstruction <= 1e-9);
        for (std::size_t k = 1; k < model.history.size(); ++k) {
            const double prev = model.history[k - 1].primal_objective;
            const double cur = model.history[k].primal_objective;
            const double gap = cur - *model.history[k].dual_objective;
            CHECK(gap >= -1e-9 * (1.0 + std::abs(cur)));
            CHECK(cur <= prev + 1e-8 * std::abs(prev) + gap);
        }
    }
}

TEST_CASE("training is deterministic") {
    const auto data = small_synthetic(5, 10, 1.5, 9);
    const MdsmModel a = train_binary(data, {});
    const MdsmModel b = train_binary(data, {});
    CHECK(a.w == b.w);
    CHECK(a.z == b.z);
    CHECK(a.bias == b.bias);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t k = 0; k < a.history.size(); ++k) {
        CHECK(a.history[k].primal_objective == b.history[k].primal_objective);
        CHECK(a.history[k].convergence_statistic == b.history[k].convergence_statistic);
    }
}

TEST_CASE("model text format round trip and malformed input") {
    const MdsmModel m = train_binary(small_synthetic(3, 6, 2.0, 4), {});
    std::stringstream ss;
    write_model(ss, m);
    const MdsmModel r = read_model(ss);
    CHECK(r.w == m.w);
    CHECK(r.z == m.z);
    CHECK(r.bias == m.bias);

    std::istringstream bad_header("MDSMM 2 2 2\n");
    CHECK_THROWS_AS(static_cast<void>(read_model(bad_header)), parse_error);
    std::istringstream short_w("MDSMM 1 2 2\nw 1 2 3\n1 2\n3 4\nb 0\n");
    CHECK_THROWS_AS(static_cast<void>(read_model(short_w)), parse_error);
    std::istringstream no_bias("MDSMM 1 1 1\nw 1 2\n3\n");
    CHECK_THROWS_AS(static_cast<void>(read_model(no_bias)), parse_error);
}

TEST_CASE("one-vs-rest") {
    const auto two = small_synthetic(4, 10, 2.0, 12);
    const MdsmOvrModel ovr = train_ovr(two, {});
    REQUIRE(ovr.labels == std::vector<int>{-1, 1});
    const MdsmModel binary = train_binary(two, {});
    for (const auto &s : two) {
        CHECK(predict(ovr, s.x) == predict(binary, s.x));
    }
    CHECK_THROWS_AS(static_cast<void>(predict(ovr, Mat::ones(5, 4))), dimension_error);

    auto one_label = two;
    for (auto &s : one_label) {
        s.label = 3;
    }
    CHECK_THROWS_AS(static_cast<void>(train_ovr(one_label, {})), input_error);

    std::stringstream ss;
    write_model(ss, ovr);
    const MdsmOvrModel back = read_ovr_model(ss);
    CHECK(back.labels == ovr.labels);
    for (std::size_t k = 0; k < ovr.binaries.size(); ++k) {
        CHECK(back.binaries[k].w == ovr.binaries[k].w);
        CHECK(back.binaries[k].z == ovr.binaries[k].z);
    }
}

TEST_CASE("three separated groups") {
    SyntheticConfig cfg;
    cfg.n = 6;
    cfg.b = 4.0;
    cfg.per_class = 30;
    cfg.groups = 3;
    cfg.seed = 8;
    const auto data = synthetic_two_class(cfg);
    const MdsmOvrModel model = train_ovr(data, {});
    CHECK(model.labels == std::vector<int>{1, 2, 3});
    const auto c = [&](const Mat &x) { return predict(model, x); };
    CHECK(accuracy(c, data) >= 0.95);
}

TEST_CASE("noise regression at seed 42") {
    // Frozen from the first run.
    auto run = [](double b) {
        SyntheticConfig cfg;
        cfg.b = b;
        Rng rng(42);
        const TrialData data = synthetic_source(cfg, 100, 500)(rng);
        const MdsmModel model = train_binary(data.train, {});
        return accuracy([&](const Mat &x) { return predict(model, x); }, data.test);
    };
    const double acc_b2 = run(2.0);
    const double acc_b02 = run(std::pow(2.0, 0.2));
    CHECK(acc_b2 > acc_b02);
    CHECK(acc_b2 == doctest::Approx(0.962).epsilon(1e-12));
    CHECK(acc_b02 == doctest::Approx(0.864).epsilon(1e-12));
}

}
