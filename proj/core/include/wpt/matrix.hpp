#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wpt {

using Complex = std::complex<double>;

// Small dense row-major square matrix. Systems here have at most a few tens
// of coils, so no expression templates or blocking.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < n_ && c < n_);
    return data_[r * n_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < n_ && c < n_);
    return data_[r * n_ + c];
  }

  std::span<T> row(std::size_t r) { return {data_.data() + r * n_, n_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

// Solves A x = b by Gaussian elimination with partial pivoting.
// Throws SingularMatrixError when a pivot underflows relative to the
// matrix scale.
std::vector<Complex> solve_dense(ComplexMatrix a, std::vector<Complex> b);

std::vector<Complex> multiply(const ComplexMatrix& a, std::span<const Complex> x);

}  // namespace wpt
