#include "wpt/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "wpt/error.hpp"

namespace wpt {

std::vector<Complex> solve_dense(ComplexMatrix a, std::vector<Complex> b) {
  const std::size_t n = a.size();
  if (b.size() != n) {
    throw ValidationError("solve_dense: right-hand side has " + std::to_string(b.size()) +
                          " entries for a " + std::to_string(n) + "x" + std::to_string(n) +
                          " matrix");
  }

  double scale = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (const auto& v : a.row(r)) scale = std::max(scale, std::abs(v));
  }
  const double tiny = scale * static_cast<double>(n) * std::numeric_limits<double>::epsilon();

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > best) {
        best = std::abs(a(r, col));
        pivot = r;
      }
    }
    if (!(best > tiny)) {
      throw SingularMatrixError("impedance matrix is singular at column " + std::to_string(col));
    }
    if (pivot != col) {
      std::swap_ranges(a.row(col).begin(), a.row(col).end(), a.row(pivot).begin());
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = a(r, col) / a(col, col);
      if (factor == Complex{}) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
      b[r] -= factor * b[col];
    }
  }

  std::vector<Complex> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a(i, c) * x[c];
    x[i] = acc / a(i, i);
  }
  return x;
}

std::vector<Complex> multiply(const ComplexMatrix& a, std::span<const Complex> x) {
  std::vector<Complex> y(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    Complex acc{};
    const auto row = a.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
  return y;
}

}  // namespace wpt
