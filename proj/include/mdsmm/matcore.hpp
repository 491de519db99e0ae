#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mdsmm {

/// Dense real matrix, row-major. Entries are finite; construction rejects NaN and infinity.
/// Indices are 0-based throughout.
class Mat {
  public:
    /// rows x cols of zeros.
    Mat(std::size_t rows, std::size_t cols);
    Mat(std::size_t rows, std::size_t cols, double fill);
    Mat(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
    static Mat ones(std::size_t rows, std::size_t cols) { return Mat(rows, cols, 1.0); }
    static Mat identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return std::span<const double>(data_).subspan(i * cols_, cols_);
    }
    [[nodiscard]] bool same_shape(const Mat &other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    friend bool operator==(const Mat &, const Mat &) = default;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// Dense real vector with finite entries.
class Vec {
  public:
    explicit Vec(std::size_t len, double fill = 0.0);
    explicit Vec(std::vector<double> data);

    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return data_[i]; }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    friend bool operator==(const Vec &, const Vec &) = default;

  private:
    std::vector<double> data_;
};

Mat operator+(const Mat &a, const Mat &b);
Mat operator-(const Mat &a, const Mat &b);
Mat operator*(double s, const Mat &a);
Vec operator+(const Vec &a, const Vec &b);
Vec operator-(const Vec &a, const Vec &b);
Vec operator*(double s, const Vec &a);

[[nodiscard]] double dot(const Vec &a, const Vec &b);
[[nodiscard]] double norm(const Vec &a);

[[nodiscard]] Mat transpose(const Mat &a);
[[nodiscard]] Mat matmul(const Mat &a, const Mat &b);

/// sqrt of the sum of squared entries.
[[nodiscard]] double frobenius_norm(const Mat &a);
/// Sum of entrywise products; shapes must match.
[[nodiscard]] double inner_product(const Mat &a, const Mat &b);
/// Maximum absolute column sum.
[[nodiscard]] double induced_norm_1(const Mat &a);
/// Maximum absolute row sum.
[[nodiscard]] double induced_norm_inf(const Mat &a);
[[nodiscard]] Mat hadamard(const Mat &a, const Mat &b);

/// Multi-distance d2(X, Z) without intercept, length m+n.
/// Entry k < m is the dot product of row k of X with row k of Z; entry m+j is the dot product
/// of column j of X with column j of Z.
[[nodiscard]] Vec multi_distance(const Mat &x, const Mat &z);

/// G(w) with G(w)(i, j) = w[i] + w[m + j]. Satisfies dot(w, d2(X, Z)) == <G(w) o X, Z>.
[[nodiscard]] Mat g_matrix(const Vec &w, std::size_t m, std::size_t n);

/// The operator Z -> d2(A, Z) for a fixed A (typically A = sum_i sigma_i X_i).
[[nodiscard]] Vec stacked_operator_apply(const Mat &a, const Mat &z);
/// Its adjoint u -> G(u) o A, so that dot(apply(A, Z), u) == <Z, adjoint(A, u)>.
[[nodiscard]] Mat stacked_operator_adjoint(const Mat &a, const Vec &u);

/// (||X o X||_1 + ||X o X||_inf); the per-sample radius entering the multi-distance bounds.
[[nodiscard]] double hadamard_radius(const Mat &x);

}  // namespace mdsmm
