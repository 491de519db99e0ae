#include "mdsmm/machine.hpp"

#include "mdsmm/errors.hpp"
#include "textio.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace mdsmm {

namespace {

constexpr double collapse_norm = 1e-12;

// Gram matrix of the feature rows, scaled by `scale`.
Mat scaled_gram(const std::vector<std::vector<double>> &features, double scale) {
    const std::size_t n = features.size();
    std::vector<double> k(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            const auto &a = features[i];
            const auto &b = features[j];
            for (std::size_t t = 0; t < a.size(); ++t) {
                acc += a[t] * b[t];
            }
            k[i * n + j] = k[j * n + i] = acc * scale;
        }
    }
    return Mat(n, n, std::move(k));
}

// (1 / norm_sq) * sum_i a_i y_i phi_i
std::vector<double> combine(const std::vector<std::vector<double>> &features, const DualSolution &sol,
                            std::span<const LabeledSample> samples, double norm_sq) {
    std::vector<double> out(features.front().size(), 0.0);
    for (std::size_t i = 0; i < features.size(); ++i) {
        const double coef = sol.alpha[i] * samples[i].label;
        if (coef == 0.0) {
            continue;
        }
        for (std::size_t t = 0; t < out.size(); ++t) {
            out[t] += coef * features[i][t];
        }
    }
    for (double &v : out) {
        v /= norm_sq;
    }
    return out;
}

std::vector<int> labels_of(std::span<const LabeledSample> samples) {
    std::vector<int> y;
    y.reserve(samples.size());
    for (const auto &s : samples) {
        y.push_back(s.label);
    }
    return y;
}

// |a'b / b'b - 1|, +inf when b'b underflows.
double relative_change(double cross, double self) {
    if (!(self > std::numeric_limits<double>::min())) {
        return std::numeric_limits<double>::infinity();
    }
    return std::abs(cross / self - 1.0);
}

}  // namespace

void validate(const TrainConfig &cfg) {
    if (!(cfg.cost > 0.0) || !std::isfinite(cfg.cost)) {
        throw input_error("train config: cost must be positive");
    }
    if (!(cfg.epsilon > 0.0)) {
        throw input_error("train config: epsilon must be positive");
    }
    if (cfg.max_loops == 0) {
        throw input_error("train config: max_loops must be positive");
    }
    if (!(cfg.kkt_tol > 0.0)) {
        throw input_error("train config: kkt_tol must be positive");
    }
    if (!(cfg.gap_tol >= 0.0)) {
        throw input_error("train config: gap_tol must be non-negative");
    }
}

double primal_objective(std::span<const LabeledSample> samples, const Vec &w, const Mat &z, double bias,
                        double cost) {
    const double ww = dot(w, w);
    const double zz = inner_product(z, z);
    double slack = 0.0;
    for (const auto &s : samples) {
        const double f = dot(w, multi_distance(s.x, z)) + bias;
        slack += std::max(0.0, 1.0 - s.label * f);
    }
    return 0.5 * ww * zz + cost * slack;
}

double primal_objective(std::span<const LabeledSample> samples, const MdsmModel &model, double cost) {
    return primal_objective(samples, model.w, model.z, model.bias, cost);
}

MdsmModel train_binary(std::span<const LabeledSample> samples, const TrainConfig &cfg) {
    validate(cfg);
    const auto [m, n] = common_shape(samples);
    require_binary_labels(samples);
    const std::vector<int> y = labels_of(samples);
    const std::size_t count = samples.size();
    const std::size_t budget = cfg.max_passes ? cfg.max_passes : 100000 * count;

    MdsmModel model{Vec(m + n, 1.0), Mat::ones(m, n), 0.0, {}, 0, false, false, false};
    model.history.push_back({0, HalfStep::init, primal_objective(samples, model, cfg.cost), {}, {}});

    std::vector<std::vector<double>> features(count);
    for (std::size_t t = 0; t < cfg.max_loops; ++t) {
        model.loops = t + 1;

        // w-step: Z fixed.
        const double zz = inner_product(model.z, model.z);
        for (std::size_t i = 0; i < count; ++i) {
            const Vec d = multi_distance(samples[i].x, model.z);
            features[i].assign(d.data().begin(), d.data().end());
        }
        DualProblem wp{scaled_gram(features, 1.0 / zz), y, cfg.cost, cfg.kkt_tol, budget, cfg.gap_tol};
        DualSolution wsol = solve_dual(wp);
        model.qp_budget_exhausted |= !wsol.converged;
        Vec w_next(combine(features, wsol, samples, zz));
        if (norm(w_next) < collapse_norm) {
            model.degenerate = true;
            break;
        }
        const double bias_w = wsol.bias;
        model.history.push_back({t + 1, HalfStep::w_step, primal_objective(samples, w_next, model.z, bias_w, cfg.cost),
                                 wsol.dual_objective, {}});
        if (cfg.observer) {
            cfg.observer({t + 1, HalfStep::w_step, model.w, model.z, w_next, model.z, bias_w, wsol});
        }

        // Z-step: w fixed at w_next.
        const double ww = dot(w_next, w_next);
        const Mat g = g_matrix(w_next, m, n);
        for (std::size_t i = 0; i < count; ++i) {
            const Mat phi = hadamard(g, samples[i].x);
            features[i].assign(phi.data().begin(), phi.data().end());
        }
        DualProblem zp{scaled_gram(features, 1.0 / ww), y, cfg.cost, cfg.kkt_tol, budget, cfg.gap_tol};
        DualSolution zsol = solve_dual(zp);
        model.qp_budget_exhausted |= !zsol.converged;
        Mat z_next(m, n, combine(features, zsol, samples, ww));
        if (frobenius_norm(z_next) < collapse_norm) {
            // keep the w-step result, which is itself a valid iterate
            model.w = std::move(w_next);
            model.bias = bias_w;
            model.degenerate = true;
            break;
        }

        const double statistic = relative_change(dot(w_next, model.w), dot(model.w, model.w)) +
                                 relative_change(inner_product(z_next, model.z), zz);
        model.history.push_back({t + 1, HalfStep::z_step,
                                 primal_objective(samples, w_next, z_next, zsol.bias, cfg.cost),
                                 zsol.dual_objective, statistic});
        if (cfg.observer) {
            cfg.observer({t + 1, HalfStep::z_step, w_next, model.z, w_next, z_next, zsol.bias, zsol});
        }
        model.w = std::move(w_next);
        model.z = std::move(z_next);
        model.bias = zsol.bias;
        if (statistic < cfg.epsilon) {
            model.converged = true;
            break;
        }
    }
    return model;
}

double decision_value(const MdsmModel &model, const Mat &x) {
    if (!x.same_shape(model.z)) {
        throw dimension_error("sample shape " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                              " does not match model shape " + std::to_string(model.z.rows()) + "x" +
                              std::to_string(model.z.cols()));
    }
    return dot(model.w, multi_distance(x, model.z)) + model.bias;
}

int predict(const MdsmModel &model, const Mat &x) { return decision_value(model, x) >= 0.0 ? 1 : -1; }

MdsmOvrModel train_ovr(std::span<const LabeledSample> samples, const TrainConfig &cfg) {
    validate(cfg);
    return mdsmm::train_ovr<MdsmModel>(samples,
                                       [&cfg](std::span<const LabeledSample> s) { return train_binary(s, cfg); });
}

int predict(const MdsmOvrModel &model, const Mat &x) { return predict_ovr(model, x); }

// ---------------------------------------------------------------------------------------------
// Text format:
//   MDSMM 1 m n
//   w <m+n reals>
//   <m lines of n reals>
//   b <real>
// One-vs-rest files repeat `LABEL <k>` followed by a binary block.

namespace {

void write_binary_block(std::ostream &out, const MdsmModel &model) {
    const std::size_t m = model.z.rows();
    const std::size_t n = model.z.cols();
    out << "MDSMM 1 " << m << ' ' << n << '\n';
    out << 'w';
    for (double v : model.w.data()) {
        out << ' ' << textio::format_real(v);
    }
    out << '\n';
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out << (j ? " " : "") << textio::format_real(model.z(i, j));
        }
        out << '\n';
    }
    out << "b " << textio::format_real(model.bias) << '\n';
}

MdsmModel read_binary_block(textio::LineReader &reader, const std::string &header) {
    const auto head = textio::split(header);
    if (head.size() != 4 || head[0] != "MDSMM" || head[1] != "1") {
        throw parse_error("expected header 'MDSMM 1 m n'", reader.line());
    }
    const auto m = textio::parse_int<std::size_t>(head[2], reader.line());
    const auto n = textio::parse_int<std::size_t>(head[3], reader.line());
    if (m == 0 || n == 0) {
        throw parse_error("model dimensions must be positive", reader.line());
    }

    std::string line = reader.expect("weight line");
    auto toks = textio::split(line);
    if (toks.empty() || toks[0] != "w") {
        throw parse_error("expected 'w' line", reader.line());
    }
    const auto pos = line.find('w');
    std::vector<double> w = textio::parse_reals(std::string_view(line).substr(pos + 1), m + n, reader.line());

    std::vector<double> z;
    z.reserve(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        line = reader.expect("Z row");
        auto row = textio::parse_reals(line, n, reader.line());
        z.insert(z.end(), row.begin(), row.end());
    }

    line = reader.expect("bias line");
    toks = textio::split(line);
    if (toks.size() != 2 || toks[0] != "b") {
        throw parse_error("expected 'b <real>'", reader.line());
    }
    MdsmModel model{Vec(std::move(w)), Mat(m, n, std::move(z)), textio::parse_real(toks[1], reader.line()),
                    {}, 0, false, false, false};
    return model;
}

}  // namespace

void write_model(std::ostream &out, const MdsmModel &model) { write_binary_block(out, model); }

MdsmModel read_model(std::istream &in) {
    textio::LineReader reader(in);
    const std::string header = reader.expect("model header");
    MdsmModel model = read_binary_block(reader, header);
    std::string rest;
    while (reader.next(rest)) {
        if (!textio::split(rest).empty()) {
            throw parse_error("trailing content after model", reader.line());
        }
    }
    return model;
}

void write_model(std::ostream &out, const MdsmOvrModel &model) {
    for (std::size_t k = 0; k < model.labels.size(); ++k) {
        out << "LABEL " << model.labels[k] << '\n';
        write_binary_block(out, model.binaries[k]);
    }
}

MdsmOvrModel read_ovr_model(std::istream &in) {
    textio::LineReader reader(in);
    MdsmOvrModel model;
    std::string line;
    while (reader.next(line)) {
        const auto toks = textio::split(line);
        if (toks.empty()) {
            continue;
        }
        if (toks.size() != 2 || toks[0] != "LABEL") {
            throw parse_error("expected 'LABEL <k>'", reader.line());
        }
        model.labels.push_back(textio::parse_int<int>(toks[1], reader.line()));
        const std::string header = reader.expect("model header");
        model.binaries.push_back(read_binary_block(reader, header));
        if (!model.binaries.back().z.same_shape(model.binaries.front().z)) {
            throw parse_error("one-vs-rest members disagree on shape", reader.line());
        }
    }
    if (model.labels.size() < 2) {
        throw parse_error("one-vs-rest model needs at least two labels", reader.line());
    }
    return model;
}

}  // namespace mdsmm
