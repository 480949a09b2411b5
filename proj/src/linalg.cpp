#include "nilfill/linalg.hpp"

#include <stdexcept>

namespace nilfill {

QMatrix QMatrix::identity(size_t n) {
  QMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols != o.rows) throw std::invalid_argument("matrix shape mismatch");
  QMatrix out(rows, o.cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k) {
      const Rational& v = at(i, k);
      if (v == 0) continue;
      for (size_t j = 0; j < o.cols; ++j) out.at(i, j) += v * o.at(k, j);
    }
  return out;
}

std::vector<size_t> rref(QMatrix& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t p = row;
    while (p < m.rows && m.at(p, col) == 0) ++p;
    if (p == m.rows) continue;
    for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(row, j));
    Rational inv = 1 / m.at(row, col);
    for (size_t j = col; j < m.cols; ++j) m.at(row, j) *= inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      Rational f = m.at(i, col);
      for (size_t j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

size_t rank(QMatrix m) { return rref(m).size(); }

std::optional<QVec> solve(const QMatrix& m, const QVec& b) {
  if (b.size() != m.rows) throw std::invalid_argument("solve: rhs size");
  QMatrix aug(m.rows, m.cols + 1);
  for (size_t i = 0; i < m.rows; ++i) {
    for (size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  auto pivots = rref(aug);
  for (size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] == m.cols) return std::nullopt;  // row (0 ... 0 | 1)
  QVec x(m.cols, Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, m.cols);
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows != m.cols) return std::nullopt;
  size_t n = m.rows;
  QMatrix aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  QMatrix out(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

std::vector<QVec> kernel(const QMatrix& m) {
  QMatrix r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(m.cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (size_t c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    QVec v(m.cols, Rational(0));
    v[c] = 1;
    for (size_t r2 = 0; r2 < pivots.size(); ++r2) v[pivots[r2]] = -r.at(r2, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

ZMatrix hermite_normal_form(ZMatrix m) {
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    // gcd sweep: make a single nonzero entry in this column at `row`
    while (true) {
      size_t best = m.rows;
      for (size_t i = row; i < m.rows; ++i) {
        if (m.at(i, col) == 0) continue;
        if (best == m.rows || abs(m.at(i, col)) < abs(m.at(best, col))) best = i;
      }
      if (best == m.rows) break;  // column clear
      if (best != row)
        for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(best, j), m.at(row, j));
      if (m.at(row, col) < 0)
        for (size_t j = 0; j < m.cols; ++j) m.at(row, j) = -m.at(row, j);
      bool done = true;
      for (size_t i = row + 1; i < m.rows; ++i) {
        if (m.at(i, col) == 0) continue;
        Int q = floor_div(m.at(i, col), m.at(row, col));
        for (size_t j = 0; j < m.cols; ++j) m.at(i, j) -= q * m.at(row, j);
        if (m.at(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (m.at(row, col) == 0) continue;
    // reduce entries above the pivot into [0, pivot)
    for (size_t i = 0; i < row; ++i) {
      Int q = floor_div(m.at(i, col), m.at(row, col));
      if (q == 0) continue;
      for (size_t j = 0; j < m.cols; ++j) m.at(i, j) -= q * m.at(row, j);
    }
    ++row;
  }
  ZMatrix out(row, m.cols);
  for (size_t i = 0; i < row; ++i)
    for (size_t j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

ZMatrix scale_to_integer(const std::vector<QVec>& rows, Int& denom_out) {
  denom_out = 1;
  for (const auto& r : rows)
    for (const auto& q : r)
      denom_out = lcm(denom_out, q.get_den());
  ZMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols) throw std::invalid_argument("ragged rows");
    for (size_t j = 0; j < m.cols; ++j) {
      Rational v = rows[i][j] * Rational(denom_out);
      m.at(i, j) = v.get_num();  // exact by construction
    }
  }
  return m;
}

}  // namespace nilfill
