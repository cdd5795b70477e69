#include "tame/coeff.hpp"

namespace tame::coeff {

Matrix::Matrix(std::size_t rows, std::size_t cols, RingTag tag)
    : rows_(rows), cols_(cols), tag_(tag), data_(rows * cols, Scalar(tag)) {}

Matrix Matrix::identity(std::size_t n, RingTag tag) {
  Matrix m(n, n, tag);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::from_int(1, tag);
  return m;
}

Matrix Matrix::from_ints(const std::vector<std::vector<long>>& rows, RingTag tag) {
  std::size_t r = rows.size(), c = rows.empty() ? 0 : rows.front().size();
  Matrix m(r, c, tag);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) fail(ErrorCode::InvalidArgument, "ragged matrix literal");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar::from_int(rows[i][j], tag);
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) fail(ErrorCode::InvalidArgument, "matrix shape mismatch in product");
  if (!(tag_ == o.tag_)) fail(ErrorCode::TagMismatch, "matrix product over different rings");
  Matrix out(rows_, o.cols_, tag_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o.at(k, j).is_zero()) out.at(i, j) += a * o.at(k, j);
    }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_, tag_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.tag_ == b.tag_ && a.data_ == b.data_;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void Matrix::add_row_multiple(std::size_t dst, std::size_t src, const Scalar& c) {
  if (c.is_zero()) return;
  for (std::size_t j = 0; j < cols_; ++j)
    if (!at(src, j).is_zero()) at(dst, j) += c * at(src, j);
}

void Matrix::add_col_multiple(std::size_t dst, std::size_t src, const Scalar& c) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < rows_; ++i)
    if (!at(i, src).is_zero()) at(i, dst) += c * at(i, src);
}

void Matrix::scale_row(std::size_t r, const Scalar& c) {
  for (std::size_t j = 0; j < cols_; ++j) at(r, j) *= c;
}

}  // namespace tame::coeff
