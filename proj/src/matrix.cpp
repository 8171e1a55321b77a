#include "emoret/matrix.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace emoret {

void check_finite(std::span<const double> v, const std::string& what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::runtime_error("non-finite value in " + what);
    }
  }
}

void check_finite(const Matrix& m, const std::string& what) {
  check_finite(std::span<const double>(m.data), what);
}

namespace {
std::atomic<std::size_t> g_zero_vector_count{0};
}

std::size_t cosine_zero_vector_count() { return g_zero_vector_count.load(); }
void reset_cosine_zero_vector_count() { g_zero_vector_count.store(0); }

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::runtime_error("cosine: length mismatch " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    if (g_zero_vector_count.fetch_add(1) == 0) {
      std::fprintf(stderr,
                   "warning: cosine of zero vector, treating as orthogonal\n");
    }
    return 0.0;
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  return 1.0 - cosine_similarity(a, b);
}

namespace kernels {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::runtime_error(msg);
}

std::string shape_str(const Matrix& m) {
  return std::to_string(m.rows) + "x" + std::to_string(m.cols);
}

}  // namespace

namespace serial {

Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.cols == b.rows, "matmul: " + shape_str(a) + " * " + shape_str(b));
  Matrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.cols; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  require(a.rows == b.rows, "matmul_tn: " + shape_str(a) + " , " + shape_str(b));
  Matrix out(a.cols, b.cols);
  for (std::size_t k = 0; k < a.cols; ++k) {
    for (std::size_t j = 0; j < b.cols; ++j) {
      double acc = 0.0;
      for (std::size_t n = 0; n < a.rows; ++n) acc += a(n, k) * b(n, j);
      out(k, j) = acc;
    }
  }
  return out;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  require(a.cols == b.cols, "matmul_nt: " + shape_str(a) + " , " + shape_str(b));
  Matrix out(a.rows, b.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.rows; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) acc += a(i, k) * b(j, k);
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix pairwise_cosine(const Matrix& a, const Matrix& b) {
  require(a.cols == b.cols, "pairwise_cosine: dim mismatch");
  Matrix out(a.rows, b.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.rows; ++j) {
      out(i, j) = cosine_similarity(a.row(i), b.row(j));
    }
  }
  return out;
}

}  // namespace serial

Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.cols == b.rows, "matmul: " + shape_str(a) + " * " + shape_str(b));
  Matrix out(a.rows, b.cols);
  const std::int64_t n = static_cast<std::int64_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < b.cols; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  require(a.rows == b.rows, "matmul_tn: " + shape_str(a) + " , " + shape_str(b));
  Matrix out(a.cols, b.cols);
  const std::int64_t kk = static_cast<std::int64_t>(a.cols);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < kk; ++k) {
    for (std::size_t j = 0; j < b.cols; ++j) {
      double acc = 0.0;
      for (std::size_t n = 0; n < a.rows; ++n) acc += a(n, k) * b(n, j);
      out(k, j) = acc;
    }
  }
  return out;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  require(a.cols == b.cols, "matmul_nt: " + shape_str(a) + " , " + shape_str(b));
  Matrix out(a.rows, b.rows);
  const std::int64_t n = static_cast<std::int64_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < b.rows; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) acc += a(i, k) * b(j, k);
      out(i, j) = acc;
    }
  }
  return out;
}

void add_bias_rows(Matrix& m, std::span<const double> bias) {
  require(m.cols == bias.size(), "add_bias_rows: width mismatch");
  const std::int64_t n = static_cast<std::int64_t>(m.rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) += bias[j];
  }
}

std::vector<double> colsum(const Matrix& m) {
  std::vector<double> out(m.cols, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out[j] += m(i, j);
  }
  return out;
}

void relu_inplace(Matrix& m) {
  const std::int64_t n = static_cast<std::int64_t>(m.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    if (m.data[i] < 0.0) m.data[i] = 0.0;
  }
}

void relu_backward_inplace(Matrix& grad, const Matrix& pre) {
  require(grad.same_shape(pre), "relu_backward: shape mismatch");
  const std::int64_t n = static_cast<std::int64_t>(grad.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    if (pre.data[i] <= 0.0) grad.data[i] = 0.0;
  }
}

Matrix pairwise_cosine(const Matrix& a, const Matrix& b) {
  require(a.cols == b.cols, "pairwise_cosine: dim mismatch");
  Matrix out(a.rows, b.rows);
  const std::int64_t n = static_cast<std::int64_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < b.rows; ++j) {
      out(i, j) = cosine_similarity(a.row(i), b.row(j));
    }
  }
  return out;
}

}  // namespace kernels

}  // namespace emoret
