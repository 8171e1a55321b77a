#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace emoret {

// Dense row-major matrix of 64-bit floats. The training core runs in
// double precision throughout.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }

  bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
  std::size_t size() const { return data.size(); }
};

// Throws std::runtime_error naming `what` if any entry is NaN/Inf.
void check_finite(const Matrix& m, const std::string& what);
void check_finite(std::span<const double> v, const std::string& what);

// Cosine distance D(a,b) = 1 - a.b/(|a||b|), range [0,2]. A zero vector is
// treated as orthogonal to everything (distance 1); the first such case per
// run is logged to stderr.
double cosine_distance(std::span<const double> a, std::span<const double> b);

// Cosine similarity with the same zero-vector convention (value 0).
double cosine_similarity(std::span<const double> a, std::span<const double> b);

// Number of zero-vector cosine evaluations seen so far (test hook).
std::size_t cosine_zero_vector_count();
void reset_cosine_zero_vector_count();

namespace kernels {

// OpenMP kernels. Each output element is written by exactly one iteration
// and accumulated in a fixed index order, so results are bit-identical to
// the serial reference for any thread count.

Matrix matmul(const Matrix& a, const Matrix& b);     // (N,K)x(K,M) -> (N,M)
Matrix matmul_tn(const Matrix& a, const Matrix& b);  // A^T B: (N,K),(N,M) -> (K,M)
Matrix matmul_nt(const Matrix& a, const Matrix& b);  // A B^T: (N,K),(M,K) -> (N,M)

void add_bias_rows(Matrix& m, std::span<const double> bias);
std::vector<double> colsum(const Matrix& m);

void relu_inplace(Matrix& m);
// grad <- grad where pre > 0 else 0
void relu_backward_inplace(Matrix& grad, const Matrix& pre);

// Pairwise cosine similarity of rows: (N,d),(M,d) -> (N,M).
Matrix pairwise_cosine(const Matrix& a, const Matrix& b);

namespace serial {
// Reference implementations used by tests and the kernel benchmark.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_tn(const Matrix& a, const Matrix& b);
Matrix matmul_nt(const Matrix& a, const Matrix& b);
Matrix pairwise_cosine(const Matrix& a, const Matrix& b);
}  // namespace serial

}  // namespace kernels

}  // namespace emoret
