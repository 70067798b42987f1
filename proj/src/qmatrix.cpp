#include "emsym/qmatrix.hpp"

#include <stdexcept>

namespace emsym {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool QMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (e != 0) return false;
  return true;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  QMatrix out(a.rows(), b.cols());
  Rational acc;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Rational& bkj = b.at(k, j);
        if (bkj == 0) continue;
        out.at(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
  QMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out.at(i, j) = a.at(i, j) + b.at(i, j);
  return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
  QMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out.at(i, j) = a.at(i, j) - b.at(i, j);
  return out;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
  QMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = s * a.at(i, j);
  return out;
}

RrefResult rref(const QMatrix& m) {
  RrefResult res;
  res.reduced = m;
  QMatrix& a = res.reduced;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows; ++col) {
    std::size_t pivot = lead;
    while (pivot < rows && a.at(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != lead)
      for (std::size_t j = col; j < cols; ++j) std::swap(a.at(pivot, j), a.at(lead, j));
    Rational inv = 1 / a.at(lead, col);
    for (std::size_t j = col; j < cols; ++j) a.at(lead, j) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead) continue;
      const Rational f = a.at(r, col);
      if (f == 0) continue;
      for (std::size_t j = col; j < cols; ++j) a.at(r, j) -= f * a.at(lead, j);
    }
    res.pivot_cols.push_back(col);
    ++lead;
  }
  res.rank = res.pivot_cols.size();
  return res;
}

QMatrix kernel_basis(const QMatrix& m) {
  RrefResult r = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  QMatrix k(cols, free_cols.size());
  for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
    const std::size_t fc = free_cols[fi];
    k.at(fc, fi) = 1;
    for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
      k.at(r.pivot_cols[pi], fi) = -r.reduced.at(pi, fc);
  }
  return k;
}

QMatrix hconcat(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat shape mismatch");
  QMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
  }
  return out;
}

QMatrix solve_in_column_space(const QMatrix& b, const QMatrix& y) {
  if (b.rows() != y.rows()) throw std::invalid_argument("solve shape mismatch");
  RrefResult r = rref(hconcat(b, y));
  if (r.rank != b.cols())
    throw std::invalid_argument("solve: basis not of full column rank");
  for (auto c : r.pivot_cols)
    if (c >= b.cols())
      throw std::invalid_argument("solve: column outside span of basis");
  QMatrix x(b.cols(), y.cols());
  for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
    for (std::size_t j = 0; j < y.cols(); ++j)
      x.at(r.pivot_cols[pi], j) = r.reduced.at(pi, b.cols() + j);
  return x;
}

std::size_t rank(const QMatrix& m) { return rref(m).rank; }

} // namespace emsym
