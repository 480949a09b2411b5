#pragma once

// Exact dense linear algebra over the rationals and integer lattices.
// Small matrices only (dimensions bounded by algebra dimensions), so
// plain fraction-free-ish Gaussian elimination is plenty.

#include "nilfill/rational.hpp"

#include <optional>
#include <vector>

namespace nilfill {

struct QMatrix {
  size_t rows = 0, cols = 0;
  QVec a;  // row major

  QMatrix() = default;
  QMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
  Rational& at(size_t r, size_t c) { return a[r * cols + c]; }
  const Rational& at(size_t r, size_t c) const { return a[r * cols + c]; }

  static QMatrix identity(size_t n);
  QMatrix operator*(const QMatrix& o) const;
  bool operator==(const QMatrix& o) const = default;
};

// Reduced row echelon form in place; returns pivot column per row.
std::vector<size_t> rref(QMatrix& m);

size_t rank(QMatrix m);

// Solves M x = b. Empty optional if inconsistent. If underdetermined,
// free variables are set to zero.
std::optional<QVec> solve(const QMatrix& m, const QVec& b);

std::optional<QMatrix> inverse(const QMatrix& m);

// Rational kernel basis (columns of m as coordinates).
std::vector<QVec> kernel(const QMatrix& m);

using ZVec = std::vector<Int>;

struct ZMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Int> a;

  ZMatrix() = default;
  ZMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
  Int& at(size_t r, size_t c) { return a[r * cols + c]; }
  const Int& at(size_t r, size_t c) const { return a[r * cols + c]; }
  bool operator==(const ZMatrix& o) const = default;
};

// Row-style Hermite normal form of the lattice spanned by the rows:
// zero rows dropped, pivots positive, entries above a pivot reduced into
// [0, pivot). Row operations are unimodular, so the row lattice is kept.
ZMatrix hermite_normal_form(ZMatrix m);

// Scales rational rows by the common denominator so lattice questions can
// be answered with integer arithmetic; returns the scale used.
ZMatrix scale_to_integer(const std::vector<QVec>& rows, Int& denom_out);

}  // namespace nilfill
