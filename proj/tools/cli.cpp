#include "cli.hpp"

#include "mdsmm/baselines.hpp"
#include "mdsmm/bounds.hpp"
#include "mdsmm/dataio.hpp"
#include "mdsmm/datagen.hpp"
#include "mdsmm/errors.hpp"
#include "mdsmm/evalharness.hpp"
#include "mdsmm/machine.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mdsmm {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Reports are assembled in memory and written in one go.
void emit(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw io_error("cannot open '" + path + "' for writing");
    }
    file << text;
    if (!file.flush()) {
        throw io_error("failed writing '" + path + "'");
    }
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool binary_labels(std::span<const LabeledSample> samples) {
    return distinct_labels(samples) == std::vector<int>{-1, 1};
}

struct GenOptions {
    std::size_t n = 20;
    double a = 10.0;
    double b = 2.0;
    double c = std::sqrt(20.0);
    std::size_t per_class = 500;
    std::size_t groups = 2;
    std::uint64_t seed = 0;
    std::string out;
};

struct TrainOptions {
    std::string data;
    std::string model_out;
    std::string type = "mdsmm";
    double cost = 1.0;
    double epsilon = 1e-4;
    std::size_t max_loops = 50;
    double kkt_tol = 1e-6;
    std::uint64_t seed = 0;
};

struct PredictOptions {
    std::string data;
    std::string model;
    std::string report_out;
};

struct CvOptions {
    std::string data;
    std::string type = "mdsmm";
    std::vector<double> grid{1e-2, 1e-1, 1.0, 1e1, 1e2};
    std::vector<double> kernel_widths;
    std::vector<std::size_t> ranks;
    std::size_t k = 5;
    std::size_t trials = 10;
    double train_fraction = 0.5;
    double epsilon = 1e-4;
    std::size_t max_loops = 50;
    double kkt_tol = 1e-6;
    std::uint64_t seed = 0;
    std::string report_out;
};

struct SweepOptions {
    std::string mode = "noise";
    std::vector<std::string> types{"mdsmm", "lsvm"};
    std::size_t trials = 10;
    std::size_t per_class = 100;
    std::size_t test_per_class = 500;
    double a = 10.0;
    double c = std::sqrt(20.0);
    std::size_t n = 20;
    double b = 2.0;
    std::vector<double> b_grid;
    std::vector<std::size_t> n_grid{15, 25, 35, 45, 55};
    double cost = 1.0;
    std::vector<double> grid;
    std::size_t k = 5;
    double epsilon = 1e-4;
    std::size_t max_loops = 50;
    double kkt_tol = 1e-6;
    std::uint64_t seed = 0;
    std::string report_out;
};

struct BoundsOptions {
    std::string data;
    std::string theorem = "thm1";
    BoundInputs in;
    std::optional<std::size_t> n_samples;
    std::optional<double> r, r1, r2;
    std::string cap_mode = "explicit";
    std::string rademacher_source = "cap";
    std::size_t rounds = 200;
    std::uint64_t seed = 0;
    std::string report_out;
};

struct RademacherOptions {
    std::string data;
    std::size_t rounds = 200;
    std::string hypothesis = "mdsmm";
    std::uint64_t seed = 0;
    std::string report_out;
};

struct ImportOptions {
    std::string list;
    std::optional<std::size_t> rows, cols;
    std::string out;
};

TrainConfig train_config(double cost, double epsilon, std::size_t max_loops, double kkt_tol) {
    TrainConfig cfg;
    cfg.cost = cost;
    cfg.epsilon = epsilon;
    cfg.max_loops = max_loops;
    cfg.kkt_tol = kkt_tol;
    validate(cfg);
    return cfg;
}

Trainer make_trainer(const std::string &type, const TrainConfig &cfg) {
    return type == "mdsmm" ? mdsmm_trainer(cfg) : linear_trainer(cfg.kkt_tol);
}

// ---------------------------------------------------------------------------------------------

void cmd_gen(const GenOptions &o, std::ostream &out) {
    SyntheticConfig cfg;
    cfg.n = o.n;
    cfg.a = o.a;
    cfg.b = o.b;
    cfg.c = o.c;
    cfg.per_class = o.per_class;
    cfg.groups = o.groups;
    cfg.seed = o.seed;
    validate(cfg);
    const Dataset ds = make_dataset(synthetic_two_class(cfg), "synthetic");
    std::ostringstream text;
    write_dataset(text, ds);
    emit(o.out, text.str(), out);
}

void cmd_train(const TrainOptions &o, std::ostream &out, std::ostream &err) {
    const TrainConfig cfg = train_config(o.cost, o.epsilon, o.max_loops, o.kkt_tol);
    const Dataset ds = read_dataset(std::filesystem::path(o.data));
    std::ostringstream text;
    if (o.type == "mdsmm") {
        auto warn = [&err](const MdsmModel &m, const std::string &what) {
            if (m.degenerate) {
                err << "warning: " << what << "training collapsed (w or Z vanished); kept last iterate\n";
            }
            if (m.qp_budget_exhausted) {
                err << "warning: " << what << "a half-step QP exhausted its update budget\n";
            }
        };
        if (binary_labels(ds.samples)) {
            const MdsmModel m = train_binary(ds.samples, cfg);
            warn(m, "");
            write_model(text, m);
        } else {
            const MdsmOvrModel m = train_ovr(ds.samples, cfg);
            for (std::size_t k = 0; k < m.labels.size(); ++k) {
                warn(m.binaries[k], "label " + std::to_string(m.labels[k]) + ": ");
            }
            write_model(text, m);
        }
    } else {
        if (binary_labels(ds.samples)) {
            const LinearSvmModel m = train_linear_svm(ds.samples, cfg.cost, cfg.kkt_tol);
            if (m.qp_budget_exhausted) {
                err << "warning: the QP exhausted its update budget\n";
            }
            write_model(text, m);
        } else {
            write_model(text, train_linear_ovr(ds.samples, cfg.cost, cfg.kkt_tol));
        }
    }
    emit(o.model_out, text.str(), out);
}

void cmd_predict(const PredictOptions &o, std::ostream &out) {
    const Dataset ds = read_dataset(std::filesystem::path(o.data));
    const std::string model_text = slurp(o.model);
    std::istringstream probe(model_text);
    std::string head;
    probe >> head;
    std::string inner;
    if (head == "LABEL") {
        std::string label;
        probe >> label >> inner;
    }

    std::function<int(const Mat &)> classify;
    std::function<std::optional<double>(const Mat &)> decide = [](const Mat &) { return std::optional<double>(); };
    std::istringstream in(model_text);
    if (head == "MDSMM") {
        auto m = std::make_shared<MdsmModel>(read_model(in));
        classify = [m](const Mat &x) { return predict(*m, x); };
        decide = [m](const Mat &x) { return std::optional<double>(decision_value(*m, x)); };
    } else if (head == "LSVM") {
        auto m = std::make_shared<LinearSvmModel>(read_linear_model(in));
        classify = [m](const Mat &x) { return predict_linear(*m, x); };
        decide = [m](const Mat &x) { return std::optional<double>(decision_value(*m, x)); };
    } else if (head == "LABEL" && inner == "MDSMM") {
        auto m = std::make_shared<MdsmOvrModel>(read_ovr_model(in));
        classify = [m](const Mat &x) { return predict(*m, x); };
    } else if (head == "LABEL" && inner == "LSVM") {
        auto m = std::make_shared<LinearOvrModel>(read_linear_ovr_model(in));
        classify = [m](const Mat &x) { return predict_ovr(*m, x); };
    } else {
        throw parse_error("unrecognized model file (expected MDSMM 1, LSVM 1 or LABEL blocks)", 1);
    }

    std::ostringstream text;
    text << "row,index,label,prediction,decision,accuracy\n";
    std::vector<int> predictions;
    std::vector<int> labels;
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        const auto &s = ds.samples[i];
        const int p = classify(s.x);
        const auto d = decide(s.x);
        predictions.push_back(p);
        labels.push_back(s.label);
        text << "sample," << i << ',' << s.label << ',' << p << ',' << (d ? fmt(*d) : "") << ",\n";
    }
    text << "summary,,,,," << fmt(accuracy(predictions, labels)) << '\n';
    emit(o.report_out, text.str(), out);
}

void cmd_cv(const CvOptions &o, std::ostream &out) {
    const TrainConfig cfg = train_config(1.0, o.epsilon, o.max_loops, o.kkt_tol);
    TrialConfig tc;
    tc.grid.costs = o.grid;
    tc.grid.kernel_widths = o.kernel_widths;
    tc.grid.ranks = o.ranks;
    static_cast<void>(normalized_costs(tc.grid));
    const Dataset ds = read_dataset(std::filesystem::path(o.data));
    tc.source = split_source(ds.samples, o.train_fraction);
    tc.folds = o.k;
    tc.trials = o.trials;
    tc.base_seed = o.seed;
    tc.model = o.type;
    tc.param = "fraction=" + fmt(o.train_fraction);
    const TrialReport report = run_trials(tc, make_trainer(o.type, cfg));
    std::ostringstream text;
    write_report_csv_header(text);
    write_report_csv_rows(text, report);
    emit(o.report_out, text.str(), out);
}

void cmd_sweep(const SweepOptions &o, std::ostream &out) {
    const TrainConfig cfg = train_config(o.cost, o.epsilon, o.max_loops, o.kkt_tol);
    GridSpec grid;
    grid.costs = o.grid.empty() ? std::vector<double>{o.cost} : o.grid;
    static_cast<void>(normalized_costs(grid));

    std::vector<SyntheticConfig> points;
    std::vector<std::string> params;
    if (o.mode == "noise") {
        std::vector<double> bs = o.b_grid;
        if (bs.empty()) {
            // ten geometric steps from 2^0.2 to 2
            for (int k = 0; k < 10; ++k) {
                bs.push_back(k == 9 ? 2.0 : std::pow(2.0, 0.2 + 0.8 * k / 9.0));
            }
        }
        for (double b : bs) {
            SyntheticConfig s;
            s.n = o.n;
            s.a = o.a;
            s.b = b;
            s.c = o.c;
            points.push_back(s);
            params.push_back("b=" + fmt(b));
        }
    } else {
        for (std::size_t n : o.n_grid) {
            SyntheticConfig s;
            s.n = n;
            s.a = o.a;
            s.b = o.b;
            s.c = o.c;
            points.push_back(s);
            params.push_back("n=" + std::to_string(n));
        }
    }

    std::ostringstream text;
    write_report_csv_header(text);
    for (std::size_t p = 0; p < points.size(); ++p) {
        const DataSource source = synthetic_source(points[p], o.per_class, o.test_per_class);
        for (const auto &type : o.types) {
            TrialConfig tc;
            tc.source = source;
            tc.grid = grid;
            tc.folds = o.k;
            tc.trials = o.trials;
            tc.base_seed = o.seed;
            tc.model = type;
            tc.param = params[p];
            write_report_csv_rows(text, run_trials(tc, make_trainer(type, cfg)));
        }
    }
    emit(o.report_out, text.str(), out);
}

void cmd_bounds(BoundsOptions o, std::ostream &out) {
    BoundInputs in = o.in;
    std::optional<Dataset> ds;
    if (!o.data.empty()) {
        ds = read_dataset(std::filesystem::path(o.data));
        in.radii = data_radii(ds->samples);
        in.n_samples = ds->samples.size();
    }
    if (o.r) in.radii.r = *o.r;
    if (o.r1) in.radii.r1 = *o.r1;
    if (o.r2) in.radii.r2 = *o.r2;
    if (o.n_samples) in.n_samples = *o.n_samples;
    in.cap_mode = o.cap_mode == "hinge" ? LossCapMode::hinge : LossCapMode::explicit_value;

    std::vector<BoundReport> reports;
    switch (parse_theorem_id(o.theorem)) {
        case TheoremId::thm1: reports.push_back(bound_thm1(in)); break;
        case TheoremId::svm_ref: reports.push_back(bound_svm_ref(in)); break;
        case TheoremId::thm2: reports.push_back(bound_thm2_mixing(in)); break;
        case TheoremId::thm3: reports.push_back(bound_thm3_uemc(in)); break;
        case TheoremId::thm5: reports.push_back(bound_thm5_stochastic(in)); break;
        case TheoremId::thm4: {
            if (o.rademacher_source == "mc") {
                if (!ds) {
                    throw input_error("--rademacher-source mc needs --data");
                }
                Rng rng(o.seed);
                const auto est = empirical_rademacher_mdsmm(ds->samples, o.rounds, rng);
                reports.push_back(bound_thm4_martingale(in, in.lipschitz * in.b_cap * in.d_cap * est.estimate,
                                                        RademacherSource::monte_carlo));
            } else {
                reports.push_back(
                    bound_thm4_martingale(in, analytic_rademacher_cap(in), RademacherSource::analytic_cap));
            }
            break;
        }
    }
    std::ostringstream text;
    write_bound_csv_header(text);
    for (const auto &r : reports) {
        write_bound_csv_row(text, r);
    }
    emit(o.report_out, text.str(), out);
}

void cmd_rademacher(const RademacherOptions &o, std::ostream &out) {
    const Dataset ds = read_dataset(std::filesystem::path(o.data));
    Rng rng(o.seed);
    const RademacherEstimate est = o.hypothesis == "mdsmm" ? empirical_rademacher_mdsmm(ds.samples, o.rounds, rng)
                                                           : empirical_rademacher_linear(ds.samples, o.rounds, rng);
    std::ostringstream text;
    text << "hypothesis,N,rounds,seed,estimate,std_error,cap\n";
    double cap = 0.0;
    if (o.hypothesis == "mdsmm") {
        cap = multi_distance_rademacher_cap(ds.samples);
    } else {
        cap = data_radii(ds.samples).r / std::sqrt(static_cast<double>(ds.samples.size()));
    }
    text << o.hypothesis << ',' << ds.samples.size() << ',' << o.rounds << ',' << o.seed << ',' << fmt(est.estimate)
         << ',' << fmt(est.std_error) << ',' << fmt(cap) << '\n';
    emit(o.report_out, text.str(), out);
}

void cmd_import(const ImportOptions &o, std::ostream &out) {
    std::istringstream list(slurp(o.list));
    std::vector<LabeledSample> samples;
    std::string line;
    std::size_t line_no = 0;
    const std::filesystem::path base = std::filesystem::path(o.list).parent_path();
    while (std::getline(list, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string path;
        std::string label_text;
        if (!(fields >> path)) {
            continue;
        }
        if (!(fields >> label_text)) {
            throw parse_error("expected '<pgm path> <label>'", line_no);
        }
        int label = 0;
        try {
            std::size_t used = 0;
            label = std::stoi(label_text, &used);
            if (used != label_text.size()) {
                throw std::invalid_argument(label_text);
            }
        } catch (const std::exception &) {
            throw parse_error("bad label '" + label_text + "'", line_no);
        }
        std::filesystem::path file(path);
        if (file.is_relative()) {
            file = base / file;
        }
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            throw io_error("cannot open '" + file.string() + "'");
        }
        const PgmImage img = read_pgm_image(in);
        Mat x = normalize_unit(img.pixels, img.maxval);
        if (o.rows || o.cols) {
            x = resize_block_mean(x, o.rows.value_or(x.rows()), o.cols.value_or(x.cols()));
        }
        samples.push_back({std::move(x), label});
    }
    std::ostringstream text;
    write_dataset(text, make_dataset(std::move(samples), o.list));
    emit(o.out, text.str(), out);
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Multi-distance support matrix machine toolkit", "mdsmm"};
    app.require_subcommand(1);
    const auto types = CLI::IsMember({"mdsmm", "lsvm"});

    GenOptions gen;
    auto *g = app.add_subcommand("gen", "Generate a synthetic covariance dataset");
    g->add_option("--n", gen.n, "Matrix size n (samples are n x n)")->check(CLI::Range(2, 100000));
    g->add_option("--a", gen.a, "Shared mixing weight a");
    g->add_option("--b", gen.b, "Noise level b (> 0)");
    g->add_option("--c", gen.c, "Per-entry standard deviation c");
    g->add_option("--per-class", gen.per_class, "Samples per group")->check(CLI::PositiveNumber);
    g->add_option("--groups", gen.groups, "Number of groups")->check(CLI::Range(2, 1000));
    g->add_option("--seed", gen.seed, "Random seed");
    g->add_option("--out", gen.out, "Output dataset path")->required();

    TrainOptions train;
    auto *t = app.add_subcommand("train", "Train a model");
    t->add_option("--data", train.data, "Training dataset")->required();
    t->add_option("--model-out", train.model_out, "Model output path")->required();
    t->add_option("--type", train.type, "mdsmm or lsvm")->check(types);
    t->add_option("--cost", train.cost, "Trade-off parameter C");
    t->add_option("--epsilon", train.epsilon, "Convergence threshold");
    t->add_option("--max-loops", train.max_loops, "Maximum alternating loops");
    t->add_option("--kkt-tol", train.kkt_tol, "QP optimality tolerance");
    t->add_option("--seed", train.seed, "Random seed (training is deterministic)");

    PredictOptions pred;
    auto *p = app.add_subcommand("predict", "Apply a model to a dataset");
    p->add_option("--data", pred.data, "Dataset")->required();
    p->add_option("--model", pred.model, "Model file")->required();
    p->add_option("--report-out", pred.report_out, "CSV output path (default stdout)");

    CvOptions cv;
    auto *c = app.add_subcommand("cv", "Repeated train/test splits with k-fold cost selection");
    c->add_option("--data", cv.data, "Dataset")->required();
    c->add_option("--type", cv.type, "mdsmm or lsvm")->check(types);
    c->add_option("--grid", cv.grid, "Cost grid")->delimiter(',');
    c->add_option("--kernel-widths", cv.kernel_widths, "Kernel-width grid (not implemented)")->delimiter(',');
    c->add_option("--ranks", cv.ranks, "Rank grid (not implemented)")->delimiter(',');
    c->add_option("--k", cv.k, "Folds")->check(CLI::Range(2, 1000));
    c->add_option("--trials", cv.trials, "Trials")->check(CLI::PositiveNumber);
    c->add_option("--train-fraction", cv.train_fraction, "Training share of each label");
    c->add_option("--epsilon", cv.epsilon, "Convergence threshold");
    c->add_option("--max-loops", cv.max_loops, "Maximum alternating loops");
    c->add_option("--kkt-tol", cv.kkt_tol, "QP optimality tolerance");
    c->add_option("--seed", cv.seed, "Base seed");
    c->add_option("--report-out", cv.report_out, "CSV output path (default stdout)");

    SweepOptions sw;
    auto *s = app.add_subcommand("sweep", "Synthetic noise or size sweep");
    s->add_option("--mode", sw.mode, "noise or size")->check(CLI::IsMember({"noise", "size"}));
    s->add_option("--types", sw.types, "Models to run")->delimiter(',')->check(types);
    s->add_option("--trials", sw.trials, "Trials per grid point")->check(CLI::PositiveNumber);
    s->add_option("--per-class", sw.per_class, "Training samples per class")->check(CLI::PositiveNumber);
    s->add_option("--test-per-class", sw.test_per_class, "Test samples per class")->check(CLI::PositiveNumber);
    s->add_option("--a", sw.a, "Shared mixing weight a");
    s->add_option("--c", sw.c, "Per-entry standard deviation c");
    s->add_option("--n", sw.n, "Matrix size for the noise sweep")->check(CLI::Range(2, 100000));
    s->add_option("--b", sw.b, "Noise level for the size sweep");
    s->add_option("--b-grid", sw.b_grid, "Noise levels (default: 10 geometric steps 2^0.2..2)")->delimiter(',');
    s->add_option("--n-grid", sw.n_grid, "Sizes for the size sweep")->delimiter(',');
    s->add_option("--cost", sw.cost, "Fixed cost when no grid is given");
    s->add_option("--grid", sw.grid, "Cost grid; enables k-fold selection")->delimiter(',');
    s->add_option("--k", sw.k, "Folds")->check(CLI::Range(2, 1000));
    s->add_option("--epsilon", sw.epsilon, "Convergence threshold");
    s->add_option("--max-loops", sw.max_loops, "Maximum alternating loops");
    s->add_option("--kkt-tol", sw.kkt_tol, "QP optimality tolerance");
    s->add_option("--seed", sw.seed, "Base seed");
    s->add_option("--report-out", sw.report_out, "CSV output path (default stdout)");

    BoundsOptions bo;
    auto *b = app.add_subcommand("bounds", "Evaluate a generalization bound");
    b->add_option("--data", bo.data, "Dataset supplying N and the radii");
    b->add_option("--theorem", bo.theorem, "thm1, svm-ref, thm2, thm3, thm4 or thm5")
        ->check(CLI::IsMember({"thm1", "svm-ref", "thm2", "thm3", "thm4", "thm5"}));
    b->add_option("--loss", bo.in.empirical_loss, "Empirical loss L_S");
    b->add_option("--rho", bo.in.lipschitz, "Loss Lipschitz constant");
    b->add_option("--B", bo.in.b_cap, "Norm cap on w");
    b->add_option("--D", bo.in.d_cap, "Norm cap on Z");
    b->add_option("--B-prime", bo.in.b_prime, "Norm cap of the linear class");
    b->add_option("--cap-mode", bo.cap_mode, "explicit or hinge")->check(CLI::IsMember({"explicit", "hinge"}));
    b->add_option("--loss-cap", bo.in.loss_cap, "Loss cap c (explicit mode)");
    b->add_option("--delta", bo.in.delta, "Confidence parameter");
    b->add_option("--N", bo.n_samples, "Sample size (overrides the dataset)");
    b->add_option("--R", bo.r, "Radius R (overrides the dataset)");
    b->add_option("--R1", bo.r1, "Radius R1 (overrides the dataset)");
    b->add_option("--R2", bo.r2, "Radius R2 (overrides the dataset)");
    b->add_option("--mu", bo.in.mu, "Number of block pairs");
    b->add_option("--block-size", bo.in.block_size, "Block size a");
    b->add_option("--beta-a", bo.in.beta_a, "Mixing coefficient beta(a)");
    b->add_option("--beta1", bo.in.beta1, "Doeblin coefficient beta1");
    b->add_option("--t", bo.in.doeblin_t, "Doeblin step count t");
    b->add_option("--vc-dim", bo.in.vc_dim, "VC dimension d_G");
    b->add_option("--c-tilde", bo.in.c_tilde, "Noise constant c~");
    b->add_option("--rademacher-source", bo.rademacher_source, "thm4 term: cap or mc")
        ->check(CLI::IsMember({"cap", "mc"}));
    b->add_option("--rounds", bo.rounds, "Monte-Carlo rounds")->check(CLI::PositiveNumber);
    b->add_option("--seed", bo.seed, "Random seed");
    b->add_option("--report-out", bo.report_out, "CSV output path (default stdout)");

    RademacherOptions ro;
    auto *r = app.add_subcommand("rademacher", "Monte-Carlo empirical Rademacher complexity");
    r->add_option("--data", ro.data, "Dataset")->required();
    r->add_option("--rounds", ro.rounds, "Monte-Carlo rounds")->check(CLI::PositiveNumber);
    r->add_option("--hypothesis", ro.hypothesis, "mdsmm or linear")->check(CLI::IsMember({"mdsmm", "linear"}));
    r->add_option("--seed", ro.seed, "Random seed");
    r->add_option("--report-out", ro.report_out, "CSV output path (default stdout)");

    ImportOptions im;
    auto *i = app.add_subcommand("import", "Build a dataset from a list of labelled PGM files");
    i->add_option("--list", im.list, "Text file of '<pgm path> <label>' lines")->required();
    i->add_option("--rows", im.rows, "Resize to this many rows")->check(CLI::PositiveNumber);
    i->add_option("--cols", im.cols, "Resize to this many columns")->check(CLI::PositiveNumber);
    i->add_option("--out", im.out, "Output dataset path")->required();

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError &e) {
            if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
                out << app.help();
                return exit_ok;
            }
            err << "usage error: " << e.what() << '\n';
            return exit_usage;
        }

        if (g->parsed()) {
            cmd_gen(gen, out);
        } else if (t->parsed()) {
            cmd_train(train, out, err);
        } else if (p->parsed()) {
            cmd_predict(pred, out);
        } else if (c->parsed()) {
            cmd_cv(cv, out);
        } else if (s->parsed()) {
            cmd_sweep(sw, out);
        } else if (b->parsed()) {
            cmd_bounds(bo, out);
        } else if (r->parsed()) {
            cmd_rademacher(ro, out);
        } else if (i->parsed()) {
            cmd_import(im, out);
        }
        return exit_ok;
    } catch (const input_error &e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const parse_error &e) {
        err << "parse error: " << e.what() << '\n';
        return exit_io;
    } catch (const io_error &e) {
        err << "I/O error: " << e.what() << '\n';
        return exit_io;
    } catch (const dimension_error &e) {
        err << "shape error: " << e.what() << '\n';
        return exit_shape;
    } catch (const stratification_error &e) {
        err << "stratification error: " << e.what() << '\n';
        return exit_stratification;
    } catch (const infeasible_bound_error &e) {
        err << "infeasible bound: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const precondition_error &e) {
        err << "bound precondition violated: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

}  // namespace mdsmm
