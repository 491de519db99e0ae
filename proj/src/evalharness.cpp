#include "mdsmm/evalharness.hpp"

#include "mdsmm/baselines.hpp"
#include "mdsmm/errors.hpp"
#include "textio.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <ostream>

namespace mdsmm {

namespace {

bool is_binary(std::span<const LabeledSample> samples) {
    const auto labels = distinct_labels(samples);
    return labels == std::vector<int>{-1, 1};
}

template <class T>
void shuffle(std::vector<T> &v, Rng &rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
        std::swap(v[i - 1], v[std::min(j, i - 1)]);
    }
}

std::map<int, std::vector<std::size_t>> indices_by_label(std::span<const LabeledSample> samples) {
    std::map<int, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out[samples[i].label].push_back(i);
    }
    return out;
}

}  // namespace

Trainer mdsmm_trainer(TrainConfig base) {
    return [base](std::span<const LabeledSample> samples, double cost) -> Classifier {
        TrainConfig cfg = base;
        cfg.cost = cost;
        if (is_binary(samples)) {
            auto model = std::make_shared<const MdsmModel>(train_binary(samples, cfg));
            return [model](const Mat &x) { return predict(*model, x); };
        }
        auto model = std::make_shared<const MdsmOvrModel>(train_ovr(samples, cfg));
        return [model](const Mat &x) { return predict(*model, x); };
    };
}

Trainer linear_trainer(double kkt_tol) {
    return [kkt_tol](std::span<const LabeledSample> samples, double cost) -> Classifier {
        if (is_binary(samples)) {
            auto model = std::make_shared<const LinearSvmModel>(train_linear_svm(samples, cost, kkt_tol));
            return [model](const Mat &x) { return predict_linear(*model, x); };
        }
        auto model = std::make_shared<const LinearOvrModel>(train_linear_ovr(samples, cost, kkt_tol));
        return [model](const Mat &x) { return predict_ovr(*model, x); };
    };
}

std::vector<double> normalized_costs(const GridSpec &grid) {
    if (!grid.kernel_widths.empty() || !grid.ranks.empty()) {
        throw input_error("kernel-width and rank grids: baseline not implemented");
    }
    if (grid.costs.empty()) {
        throw input_error("cost grid is empty");
    }
    std::vector<double> costs = grid.costs;
    for (double c : costs) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw input_error("cost grid entries must be positive and finite");
        }
    }
    std::sort(costs.begin(), costs.end());
    costs.erase(std::unique(costs.begin(), costs.end()), costs.end());
    return costs;
}

double accuracy(std::span<const int> predictions, std::span<const int> labels) {
    if (predictions.size() != labels.size()) {
        throw dimension_error("accuracy: " + std::to_string(predictions.size()) + " predictions for " +
                              std::to_string(labels.size()) + " labels");
    }
    if (labels.empty()) {
        throw dimension_error("accuracy: no samples");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        hits += predictions[i] == labels[i] ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double accuracy(const Classifier &classifier, std::span<const LabeledSample> samples) {
    std::vector<int> predictions;
    std::vector<int> labels;
    predictions.reserve(samples.size());
    labels.reserve(samples.size());
    for (const auto &s : samples) {
        predictions.push_back(classifier(s.x));
        labels.push_back(s.label);
    }
    return accuracy(predictions, labels);
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const LabeledSample> samples, std::size_t k,
                                                       Rng &rng) {
    if (k < 2) {
        throw input_error("k-fold: k must be at least 2");
    }
    auto groups = indices_by_label(samples);
    for (const auto &[label, idx] : groups) {
        if (idx.size() < k) {
            throw stratification_error("label " + std::to_string(label) + " has " + std::to_string(idx.size()) +
                                       " samples, fewer than k = " + std::to_string(k));
        }
    }
    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t next = 0;
    for (auto &[label, idx] : groups) {
        shuffle(idx, rng);
        for (std::size_t i : idx) {
            folds[next].push_back(i);
            next = (next + 1) % k;
        }
    }
    for (auto &f : folds) {
        std::sort(f.begin(), f.end());
    }
    return folds;
}

CvResult kfold_select(std::span<const LabeledSample> samples, const GridSpec &grid, std::size_t k,
                      const Trainer &trainer, Rng &rng) {
    const std::vector<double> costs = normalized_costs(grid);
    const auto folds = stratified_folds(samples, k, rng);

    std::vector<std::vector<LabeledSample>> train(k);
    std::vector<std::vector<LabeledSample>> held_out(k);
    for (std::size_t f = 0; f < k; ++f) {
        for (std::size_t g = 0; g < k; ++g) {
            auto &dest = g == f ? held_out[f] : train[f];
            for (std::size_t i : folds[g]) {
                dest.push_back(samples[i]);
            }
        }
    }

    CvResult result;
    double best = -1.0;
    for (double cost : costs) {
        CvRow row{cost, {}, 0.0};
        for (std::size_t f = 0; f < k; ++f) {
            const Classifier c = trainer(train[f], cost);
            row.fold_accuracies.push_back(accuracy(c, held_out[f]));
        }
        row.mean_accuracy = mean_and_std(row.fold_accuracies).first;
        if (row.mean_accuracy > best) {
            best = row.mean_accuracy;
            result.chosen_cost = cost;
        }
        result.table.push_back(std::move(row));
    }
    return result;
}

DataSource synthetic_source(SyntheticConfig cfg, std::size_t train_per_class, std::size_t test_per_class) {
    cfg.per_class = train_per_class;
    validate(cfg);
    if (test_per_class == 0) {
        throw input_error("synthetic source: test_per_class must be positive");
    }
    return [cfg, train_per_class, test_per_class](Rng &rng) {
        const SyntheticPopulation pop = make_population(cfg, rng);
        TrialData data;
        data.train = sample_population(pop, train_per_class, rng);
        data.test = sample_population(pop, test_per_class, rng);
        return data;
    };
}

DataSource split_source(std::vector<LabeledSample> samples, double train_fraction) {
    common_shape(samples);
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw input_error("split source: train fraction must lie in (0, 1)");
    }
    for (const auto &[label, idx] : indices_by_label(samples)) {
        if (idx.size() < 2) {
            throw stratification_error("label " + std::to_string(label) + " has fewer than two samples to split");
        }
    }
    auto shared = std::make_shared<const std::vector<LabeledSample>>(std::move(samples));
    return [shared, train_fraction](Rng &rng) {
        TrialData data;
        for (auto [label, idx] : indices_by_label(*shared)) {
            shuffle(idx, rng);
            auto cut = static_cast<std::size_t>(std::round(train_fraction * static_cast<double>(idx.size())));
            cut = std::clamp<std::size_t>(cut, 1, idx.size() - 1);
            for (std::size_t t = 0; t < idx.size(); ++t) {
                (t < cut ? data.train : data.test).push_back((*shared)[idx[t]]);
            }
        }
        return data;
    };
}

TrialReport run_trials(const TrialConfig &cfg, const Trainer &trainer) {
    if (cfg.trials == 0) {
        throw input_error("run_trials: at least one trial is required");
    }
    if (!cfg.source) {
        throw input_error("run_trials: no data source");
    }
    const std::vector<double> costs = normalized_costs(cfg.grid);

    TrialReport report;
    report.model = cfg.model;
    report.param = cfg.param;
    std::vector<double> accuracies;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        const auto start = std::chrono::steady_clock::now();
        TrialRecord rec;
        rec.index = t;
        rec.seed = cfg.base_seed + t;
        Rng rng(rec.seed);
        const TrialData data = cfg.source(rng);
        rec.cost = costs.front();
        if (costs.size() > 1) {
            GridSpec grid;
            grid.costs = costs;
            rec.cost = kfold_select(data.train, grid, cfg.folds, trainer, rng).chosen_cost;
        }
        const Classifier c = trainer(data.train, rec.cost);
        rec.accuracy = accuracy(c, data.test);
        rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        accuracies.push_back(rec.accuracy);
        report.trials.push_back(rec);
    }
    std::tie(report.mean, report.std_dev) = mean_and_std(accuracies);
    return report;
}

std::pair<double, double> mean_and_std(std::span<const double> values) {
    if (values.empty()) {
        throw input_error("mean_and_std: no values");
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / static_cast<double>(values.size()))};
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) {
            ++j;
        }
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) {
            ranks[order[t]] = rank;
        }
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw input_error("spearman_correlation: need two equally long series of length >= 2");
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const auto [mx, sx] = mean_and_std(rx);
    const auto [my, sy] = mean_and_std(ry);
    if (sx == 0.0 || sy == 0.0) {
        return 0.0;
    }
    double cov = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        cov += (rx[i] - mx) * (ry[i] - my);
    }
    cov /= static_cast<double>(rx.size());
    return cov / (sx * sy);
}

void write_report_csv_header(std::ostream &out) { out << "row,model,param,trial,seed,cost,accuracy,std\n"; }

void write_report_csv_rows(std::ostream &out, const TrialReport &report) {
    using textio::format_real;
    for (const auto &t : report.trials) {
        out << "trial," << report.model << ',' << report.param << ',' << t.index << ',' << t.seed << ','
            << format_real(t.cost) << ',' << format_real(t.accuracy) << ",\n";
    }
    out << "summary," << report.model << ',' << report.param << ",,,," << format_real(report.mean) << ','
        << format_real(report.std_dev) << '\n';
}

void write_cv_csv(std::ostream &out, const CvResult &result) {
    using textio::format_real;
    out << "cost,fold,accuracy\n";
    for (const auto &row : result.table) {
        for (std::size_t f = 0; f < row.fold_accuracies.size(); ++f) {
            out << format_real(row.cost) << ',' << f << ',' << format_real(row.fold_accuracies[f]) << '\n';
        }
        out << format_real(row.cost) << ",mean," << format_real(row.mean_accuracy) << '\n';
    }
    out << "chosen," << format_real(result.chosen_cost) << ",\n";
}

}  // namespace mdsmm
