#ifndef EMSYM_QMATRIX_HPP
#define EMSYM_QMATRIX_HPP

#include <cstddef>
#include <vector>

#include "emsym/rational.hpp"

namespace emsym {

// Dense rational matrix, row-major, dimensions fixed at construction.
class QMatrix {
public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  bool operator==(const QMatrix& o) const = default;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  QMatrix transpose() const;

private:
  std::size_t rows_, cols_;
  std::vector<Rational> entries_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const Rational& s, const QMatrix& a);

struct RrefResult {
  std::size_t rank = 0;
  QMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};

// Unique reduced row-echelon form; pivot choice is the first nonzero entry
// scanning columns left to right, so output is bit-stable.
RrefResult rref(const QMatrix& m);

// Columns form a basis of the right nullspace (free-variable convention,
// deterministic order by free column index).
QMatrix kernel_basis(const QMatrix& m);

// Horizontal concatenation [a | b].
QMatrix hconcat(const QMatrix& a, const QMatrix& b);

// Solves b * x = y for x, where the columns of y lie in the column space of
// b and b has full column rank. Used to restrict operators to invariant
// subspaces; aborts via exception if the system is inconsistent.
QMatrix solve_in_column_space(const QMatrix& b, const QMatrix& y);

std::size_t rank(const QMatrix& m);

} // namespace emsym

#endif
