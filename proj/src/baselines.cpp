#include "mdsmm/baselines.hpp"

#include "mdsmm/errors.hpp"
#include "textio.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace mdsmm {

LinearSvmModel train_linear_svm(std::span<const LabeledSample> samples, double cost, double kkt_tol,
                                std::size_t max_passes) {
    const auto [m, n] = common_shape(samples);
    require_binary_labels(samples);
    const std::size_t count = samples.size();

    std::vector<double> k(count * count);
    std::vector<int> y(count);
    for (std::size_t i = 0; i < count; ++i) {
        y[i] = samples[i].label;
        for (std::size_t j = i; j < count; ++j) {
            k[i * count + j] = k[j * count + i] = inner_product(samples[i].x, samples[j].x);
        }
    }
    const DualProblem problem{Mat(count, count, std::move(k)), std::move(y), cost, kkt_tol, max_passes};
    const DualSolution sol = solve_dual(problem);

    std::vector<double> w(m * n, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        const double coef = sol.alpha[i] * samples[i].label;
        if (coef == 0.0) {
            continue;
        }
        auto x = samples[i].x.data();
        for (std::size_t t = 0; t < w.size(); ++t) {
            w[t] += coef * x[t];
        }
    }
    return {Mat(m, n, std::move(w)), sol.bias, !sol.converged};
}

double decision_value(const LinearSvmModel &model, const Mat &x) {
    if (!x.same_shape(model.w)) {
        throw dimension_error("sample shape " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                              " does not match model shape " + std::to_string(model.w.rows()) + "x" +
                              std::to_string(model.w.cols()));
    }
    return inner_product(model.w, x) + model.bias;
}

int predict_linear(const LinearSvmModel &model, const Mat &x) { return decision_value(model, x) >= 0.0 ? 1 : -1; }

LinearOvrModel train_linear_ovr(std::span<const LabeledSample> samples, double cost, double kkt_tol) {
    return train_ovr<LinearSvmModel>(
        samples, [cost, kkt_tol](std::span<const LabeledSample> s) { return train_linear_svm(s, cost, kkt_tol); });
}

namespace {

void write_block(std::ostream &out, const LinearSvmModel &model) {
    out << "LSVM 1 " << model.w.rows() << ' ' << model.w.cols() << '\n';
    for (std::size_t i = 0; i < model.w.rows(); ++i) {
        for (std::size_t j = 0; j < model.w.cols(); ++j) {
            out << (j ? " " : "") << textio::format_real(model.w(i, j));
        }
        out << '\n';
    }
    out << "b " << textio::format_real(model.bias) << '\n';
}

LinearSvmModel read_block(textio::LineReader &reader, const std::string &header) {
    const auto head = textio::split(header);
    if (head.size() != 4 || head[0] != "LSVM" || head[1] != "1") {
        throw parse_error("expected header 'LSVM 1 m n'", reader.line());
    }
    const auto m = textio::parse_int<std::size_t>(head[2], reader.line());
    const auto n = textio::parse_int<std::size_t>(head[3], reader.line());
    if (m == 0 || n == 0) {
        throw parse_error("model dimensions must be positive", reader.line());
    }
    std::vector<double> w;
    w.reserve(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        const std::string line = reader.expect("W row");
        auto row = textio::parse_reals(line, n, reader.line());
        w.insert(w.end(), row.begin(), row.end());
    }
    const std::string line = reader.expect("bias line");
    const auto toks = textio::split(line);
    if (toks.size() != 2 || toks[0] != "b") {
        throw parse_error("expected 'b <real>'", reader.line());
    }
    return {Mat(m, n, std::move(w)), textio::parse_real(toks[1], reader.line()), false};
}

}  // namespace

void write_model(std::ostream &out, const LinearSvmModel &model) { write_block(out, model); }

LinearSvmModel read_linear_model(std::istream &in) {
    textio::LineReader reader(in);
    const std::string header = reader.expect("model header");
    LinearSvmModel model = read_block(reader, header);
    std::string rest;
    while (reader.next(rest)) {
        if (!textio::split(rest).empty()) {
            throw parse_error("trailing content after model", reader.line());
        }
    }
    return model;
}

void write_model(std::ostream &out, const LinearOvrModel &model) {
    for (std::size_t k = 0; k < model.labels.size(); ++k) {
        out << "LABEL " << model.labels[k] << '\n';
        write_block(out, model.binaries[k]);
    }
}

LinearOvrModel read_linear_ovr_model(std::istream &in) {
    textio::LineReader reader(in);
    LinearOvrModel model;
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
        model.binaries.push_back(read_block(reader, reader.expect("model header")));
        if (!model.binaries.back().w.same_shape(model.binaries.front().w)) {
            throw parse_error("one-vs-rest members disagree on shape", reader.line());
        }
    }
    if (model.labels.size() < 2) {
        throw parse_error("one-vs-rest model needs at least two labels", reader.line());
    }
    return model;
}

}  // namespace mdsmm
