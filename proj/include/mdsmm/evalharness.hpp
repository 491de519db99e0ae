#pragma once

// Repeated-trial experiments: stratified k-fold cost selection, per-trial train/test evaluation
// and accuracy aggregation.

#include "mdsmm/datagen.hpp"
#include "mdsmm/machine.hpp"
#include "mdsmm/sample.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mdsmm {

using Classifier = std::function<int(const Mat &)>;
/// Trains on a sample set at cost C and returns the resulting predictor.
using Trainer = std::function<Classifier(std::span<const LabeledSample>, double cost)>;

/// MDSMM with `base` settings (its cost is overridden); binary for a ±1 label set, one-vs-rest otherwise.
[[nodiscard]] Trainer mdsmm_trainer(TrainConfig base = {});
/// Linear SVM; binary for a ±1 label set, one-vs-rest otherwise.
[[nodiscard]] Trainer linear_trainer(double kkt_tol = 1e-3);

struct GridSpec {
    std::vector<double> costs{1e-2, 1e-1, 1.0, 1e1, 1e2};
    /// Kernel widths and ranks of the kernel / factorized baselines; must stay empty.
    std::vector<double> kernel_widths;
    std::vector<std::size_t> ranks;
};

/// Costs sorted ascending with duplicates removed. Throws input_error for an empty or non-positive
/// grid, and for any kernel-width or rank entry ("baseline not implemented").
[[nodiscard]] std::vector<double> normalized_costs(const GridSpec &grid);

/// Fraction of equal entries. Throws dimension_error on a length mismatch or empty input.
[[nodiscard]] double accuracy(std::span<const int> predictions, std::span<const int> labels);
[[nodiscard]] double accuracy(const Classifier &classifier, std::span<const LabeledSample> samples);

/// Stratified folds: each label's indices are shuffled and dealt round-robin, continuing the deal
/// across labels. Throws stratification_error if a label has fewer than k samples.
[[nodiscard]] std::vector<std::vector<std::size_t>> stratified_folds(std::span<const LabeledSample> samples,
                                                                     std::size_t k, Rng &rng);

struct CvRow {
    double cost = 0.0;
    std::vector<double> fold_accuracies;
    double mean_accuracy = 0.0;
};

struct CvResult {
    double chosen_cost = 0.0;
    std::vector<CvRow> table;
};

/// Cost with the best mean fold accuracy; ties go to the smallest cost.
[[nodiscard]] CvResult kfold_select(std::span<const LabeledSample> samples, const GridSpec &grid, std::size_t k,
                                    const Trainer &trainer, Rng &rng);

struct TrialData {
    std::vector<LabeledSample> train;
    std::vector<LabeledSample> test;
};

/// Produces one trial's data from the trial's private generator.
using DataSource = std::function<TrialData(Rng &)>;

/// Fresh synthetic population per trial; `train_per_class` and `test_per_class` samples per group
/// drawn from it.
[[nodiscard]] DataSource synthetic_source(SyntheticConfig cfg, std::size_t train_per_class,
                                          std::size_t test_per_class);

/// Fresh stratified split of a fixed sample set per trial; `train_fraction` of each label trains.
[[nodiscard]] DataSource split_source(std::vector<LabeledSample> samples, double train_fraction);

struct TrialConfig {
    DataSource source;
    GridSpec grid;
    /// More than one grid cost turns on k-fold selection inside every trial.
    std::size_t folds = 5;
    std::size_t trials = 10;
    std::uint64_t base_seed = 0;
    std::string model;
    std::string param;
};

struct TrialRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    double cost = 0.0;
    double accuracy = 0.0;
    double wall_seconds = 0.0;
};

struct TrialReport {
    std::string model;
    std::string param;
    std::vector<TrialRecord> trials;
    double mean = 0.0;
    /// Population standard deviation (divides by the number of trials).
    double std_dev = 0.0;
};

/// Trial t uses Rng(base_seed + t) for its data and its fold assignment.
[[nodiscard]] TrialReport run_trials(const TrialConfig &cfg, const Trainer &trainer);

/// Mean and population standard deviation.
[[nodiscard]] std::pair<double, double> mean_and_std(std::span<const double> values);

/// Spearman rank correlation with average ranks for ties. Throws for fewer than two points;
/// returns 0 when either side is constant.
[[nodiscard]] double spearman_correlation(std::span<const double> x, std::span<const double> y);

/// CSV with header `row,model,param,trial,seed,cost,accuracy,std`: one `trial` row per trial, then a
/// `summary` row carrying the mean in `accuracy`. Wall times are not written.
void write_report_csv_header(std::ostream &out);
void write_report_csv_rows(std::ostream &out, const TrialReport &report);

void write_cv_csv(std::ostream &out, const CvResult &result);

}  // namespace mdsmm
