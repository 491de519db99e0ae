#include "mdsmm/matcore.hpp"

#include "mdsmm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace mdsmm {

namespace {

void check_finite(std::span<const double> values, const char *what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw input_error(std::string(what) + " contains a non-finite entry");
        }
    }
}

void require_same_shape(const Mat &a, const Mat &b, const char *op) {
    if (!a.same_shape(b)) {
        throw dimension_error(std::string(op) + ": shape " + std::to_string(a.rows()) + "x" +
                              std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                              std::to_string(b.cols()));
    }
}

void require_same_length(const Vec &a, const Vec &b, const char *op) {
    if (a.size() != b.size()) {
        throw dimension_error(std::string(op) + ": length " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()));
    }
}

}  // namespace

Mat::Mat(std::size_t rows, std::size_t cols) : Mat(rows, cols, 0.0) {}

Mat::Mat(std::size_t rows, std::size_t cols, double fill) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) {
        throw dimension_error("matrix dimensions must be positive");
    }
    if (!std::isfinite(fill)) {
        throw input_error("matrix fill value is not finite");
    }
    data_.assign(rows * cols, fill);
}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) {
        throw dimension_error("matrix dimensions must be positive");
    }
    if (data_.size() != rows * cols) {
        throw dimension_error("matrix data length " + std::to_string(data_.size()) + " does not match " +
                              std::to_string(rows) + "x" + std::to_string(cols));
    }
    check_finite(data_, "matrix");
}

Mat Mat::identity(std::size_t n) {
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        d[i * n + i] = 1.0;
    }
    return Mat(n, n, std::move(d));
}

Vec::Vec(std::size_t len, double fill) {
    if (len == 0) {
        throw dimension_error("vector length must be positive");
    }
    if (!std::isfinite(fill)) {
        throw input_error("vector fill value is not finite");
    }
    data_.assign(len, fill);
}

Vec::Vec(std::vector<double> data) : data_(std::move(data)) {
    if (data_.empty()) {
        throw dimension_error("vector length must be positive");
    }
    check_finite(data_, "vector");
}

namespace {

template <class Op>
std::vector<double> zip(std::span<const double> a, std::span<const double> b, Op op) {
    std::vector<double> out(a.size());
    std::transform(a.begin(), a.end(), b.begin(), out.begin(), op);
    return out;
}

std::vector<double> scale(double s, std::span<const double> a) {
    std::vector<double> out(a.size());
    std::transform(a.begin(), a.end(), out.begin(), [s](double v) { return s * v; });
    return out;
}

}  // namespace

Mat operator+(const Mat &a, const Mat &b) {
    require_same_shape(a, b, "matrix add");
    return Mat(a.rows(), a.cols(), zip(a.data(), b.data(), std::plus<>{}));
}

Mat operator-(const Mat &a, const Mat &b) {
    require_same_shape(a, b, "matrix subtract");
    return Mat(a.rows(), a.cols(), zip(a.data(), b.data(), std::minus<>{}));
}

Mat operator*(double s, const Mat &a) { return Mat(a.rows(), a.cols(), scale(s, a.data())); }

Vec operator+(const Vec &a, const Vec &b) {
    require_same_length(a, b, "vector add");
    return Vec(zip(a.data(), b.data(), std::plus<>{}));
}

Vec operator-(const Vec &a, const Vec &b) {
    require_same_length(a, b, "vector subtract");
    return Vec(zip(a.data(), b.data(), std::minus<>{}));
}

Vec operator*(double s, const Vec &a) { return Vec(scale(s, a.data())); }

double dot(const Vec &a, const Vec &b) {
    require_same_length(a, b, "dot");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double norm(const Vec &a) { return std::sqrt(dot(a, a)); }

Mat transpose(const Mat &a) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[j * a.rows() + i] = a(i, j);
        }
    }
    return Mat(a.cols(), a.rows(), std::move(out));
}

Mat matmul(const Mat &a, const Mat &b) {
    if (a.cols() != b.rows()) {
        throw dimension_error("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                              std::to_string(b.rows()));
    }
    const std::size_t m = a.rows();
    const std::size_t k = a.cols();
    const std::size_t n = b.cols();
    std::vector<double> out(m * n, 0.0);
    auto bd = b.data();
    for (std::size_t i = 0; i < m; ++i) {
        double *orow = out.data() + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double aip = a(i, p);
            const double *brow = bd.data() + p * n;
            for (std::size_t j = 0; j < n; ++j) {
                orow[j] += aip * brow[j];
            }
        }
    }
    return Mat(m, n, std::move(out));
}

double frobenius_norm(const Mat &a) { return std::sqrt(inner_product(a, a)); }

double inner_product(const Mat &a, const Mat &b) {
    require_same_shape(a, b, "inner_product");
    double acc = 0.0;
    auto ad = a.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < ad.size(); ++i) {
        acc += ad[i] * bd[i];
    }
    return acc;
}

double induced_norm_1(const Mat &a) {
    std::vector<double> col(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            col[j] += std::abs(a(i, j));
        }
    }
    return *std::max_element(col.begin(), col.end());
}

double induced_norm_inf(const Mat &a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (double v : a.row(i)) {
            s += std::abs(v);
        }
        best = std::max(best, s);
    }
    return best;
}

Mat hadamard(const Mat &a, const Mat &b) {
    require_same_shape(a, b, "hadamard");
    return Mat(a.rows(), a.cols(), zip(a.data(), b.data(), std::multiplies<>{}));
}

Vec multi_distance(const Mat &x, const Mat &z) {
    require_same_shape(x, z, "multi_distance");
    const std::size_t m = x.rows();
    const std::size_t n = x.cols();
    std::vector<double> out(m + n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double row_acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double p = x(i, j) * z(i, j);
            row_acc += p;
            out[m + j] += p;
        }
        out[i] = row_acc;
    }
    return Vec(std::move(out));
}

Mat g_matrix(const Vec &w, std::size_t m, std::size_t n) {
    if (w.size() != m + n) {
        throw dimension_error("g_matrix: weight length " + std::to_string(w.size()) + " != m+n = " +
                              std::to_string(m + n));
    }
    std::vector<double> out(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[i * n + j] = w[i] + w[m + j];
        }
    }
    return Mat(m, n, std::move(out));
}

Vec stacked_operator_apply(const Mat &a, const Mat &z) { return multi_distance(a, z); }

Mat stacked_operator_adjoint(const Mat &a, const Vec &u) {
    return hadamard(g_matrix(u, a.rows(), a.cols()), a);
}

double hadamard_radius(const Mat &x) {
    const Mat sq = hadamard(x, x);
    return induced_norm_1(sq) + induced_norm_inf(sq);
}

}  // namespace mdsmm
