#include <optional>

#include "tame/coeff.hpp"

namespace tame::coeff {

namespace {

struct Pos {
  std::size_t i, j;
};

// Entry of least Euclidean norm in the trailing block; ties go to the first
// in row-major order so the output is deterministic.
std::optional<Pos> min_norm_entry(const Matrix& a, std::size_t t) {
  std::optional<Pos> best;
  Integer best_norm;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a.at(i, j).is_zero()) continue;
      Integer n = euclidean_norm(a.at(i, j));
      if (!best || n < best_norm) {
        best = Pos{i, j};
        best_norm = n;
        if (n == 1) return best;
      }
    }
  return best;
}

class Reducer {
 public:
  Reducer(const Matrix& m, bool track)
      : a_(m), track_(track) {
    if (track_) {
      u_ = Matrix::identity(m.rows(), m.tag());
      v_ = Matrix::identity(m.cols(), m.tag());
    }
  }

  SmithForm run() {
    const std::size_t steps = std::min(a_.rows(), a_.cols());
    for (std::size_t t = 0; t < steps; ++t) {
      auto p = min_norm_entry(a_, t);
      if (!p) break;
      swap_rows(t, p->i);
      swap_cols(t, p->j);
      while (!settle(t)) {
      }
      const Scalar& piv = a_.at(t, t);
      Scalar unit = Scalar::from_rational(piv.rational() / canonical_associate(piv).rational(), piv.tag());
      scale_row(t, unit.inverse());
    }
    SmithForm out{a_, u_, v_};
    return out;
  }

 private:
  // One sweep over row and column t. Returns true once the pivot divides
  // everything in its row, column and trailing block.
  bool settle(std::size_t t) {
    for (std::size_t i = t + 1; i < a_.rows(); ++i) {
      if (a_.at(i, t).is_zero()) continue;
      DivMod qr = divmod(a_.at(i, t), a_.at(t, t));
      add_row(i, t, -qr.quotient);
      if (!a_.at(i, t).is_zero()) {
        swap_rows(t, i);
        return false;
      }
    }
    for (std::size_t j = t + 1; j < a_.cols(); ++j) {
      if (a_.at(t, j).is_zero()) continue;
      DivMod qr = divmod(a_.at(t, j), a_.at(t, t));
      add_col(j, t, -qr.quotient);
      if (!a_.at(t, j).is_zero()) {
        swap_cols(t, j);
        return false;
      }
    }
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      for (std::size_t j = t + 1; j < a_.cols(); ++j)
        if (!divides(a_.at(t, t), a_.at(i, j))) {
          add_row(t, i, Scalar::from_int(1, a_.tag()));
          return false;
        }
    return true;
  }

  void swap_rows(std::size_t x, std::size_t y) {
    a_.swap_rows(x, y);
    if (track_) u_.swap_rows(x, y);
  }
  void swap_cols(std::size_t x, std::size_t y) {
    a_.swap_cols(x, y);
    if (track_) v_.swap_cols(x, y);
  }
  void add_row(std::size_t dst, std::size_t src, const Scalar& c) {
    a_.add_row_multiple(dst, src, c);
    if (track_) u_.add_row_multiple(dst, src, c);
  }
  void add_col(std::size_t dst, std::size_t src, const Scalar& c) {
    a_.add_col_multiple(dst, src, c);
    if (track_) v_.add_col_multiple(dst, src, c);
  }
  void scale_row(std::size_t r, const Scalar& c) {
    a_.scale_row(r, c);
    if (track_) u_.scale_row(r, c);
  }

  Matrix a_, u_, v_;
  bool track_;
};

}  // namespace

std::vector<Scalar> SmithForm::diagonal() const {
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d.at(i, i));
  return out;
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (const auto& s : diagonal())
    if (!s.is_zero()) ++r;
  return r;
}

SmithForm smith_normal_form(const Matrix& m) { return Reducer(m, true).run(); }

std::vector<Scalar> invariant_factors(const Matrix& m) {
  SmithForm f = Reducer(m, false).run();
  std::vector<Scalar> out;
  for (const auto& s : f.diagonal())
    if (!s.is_zero()) out.push_back(s);
  return out;
}

}  // namespace tame::coeff
