#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bt/localfield.hpp"

namespace bt {

/// Additive and multiplicative identities built from a sample scalar, so the
/// matrix template works for scalars that carry a context (field precision,
/// jet shape).
template <class S>
struct ScalarOps {
  static S zero_like(const S& proto) { return proto - proto; }
  static S one_like(const S& proto) { return S::one_like(proto); }
};

template <>
struct ScalarOps<FieldElem> {
  static FieldElem zero_like(const FieldElem& p) { return FieldElem(p.config()); }
  static FieldElem one_like(const FieldElem& p) { return FieldElem::from_int(p.config(), 1); }
};

/// Small dense matrix over a commutative scalar type.
template <class S>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols, const S& fill) : r_(rows), c_(cols), a_(rows * cols, fill) {}

  static BasicMatrix identity(std::size_t n, const S& proto) {
    BasicMatrix m(n, n, ScalarOps<S>::zero_like(proto));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarOps<S>::one_like(proto);
    return m;
  }
  static BasicMatrix diagonal(const std::vector<S>& d) {
    if (d.empty()) throw std::invalid_argument("empty diagonal");
    BasicMatrix m(d.size(), d.size(), ScalarOps<S>::zero_like(d[0]));
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  S& operator()(std::size_t i, std::size_t j) { return a_.at(i * c_ + j); }
  const S& operator()(std::size_t i, std::size_t j) const { return a_.at(i * c_ + j); }

  BasicMatrix operator*(const BasicMatrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix shapes do not match");
    BasicMatrix m(r_, o.c_, ScalarOps<S>::zero_like(a_.at(0)));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k)
        for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += (*this)(i, k) * o(k, j);
    return m;
  }
  BasicMatrix operator+(const BasicMatrix& o) const { return zip(o, [](const S& x, const S& y) { return x + y; }); }
  BasicMatrix operator-(const BasicMatrix& o) const { return zip(o, [](const S& x, const S& y) { return x - y; }); }
  BasicMatrix scaled(const S& s) const {
    BasicMatrix m = *this;
    for (auto& x : m.a_) x = x * s;
    return m;
  }

  BasicMatrix transpose() const {
    BasicMatrix m(c_, r_, a_.at(0));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  /// Determinant of the submatrix on the given rows and columns (Laplace
  /// expansion; sizes here are at most 4).
  S minor(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    if (rows.size() != cols.size()) throw std::invalid_argument("minor needs a square selection");
    if (rows.empty()) return ScalarOps<S>::one_like(a_.at(0));
    if (rows.size() == 1) return (*this)(rows[0], cols[0]);
    S acc = ScalarOps<S>::zero_like(a_.at(0));
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::vector<std::size_t> sub_cols;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (j != k) sub_cols.push_back(cols[j]);
      S term = (*this)(rows[0], cols[k]) * minor(sub_rows, sub_cols);
      if (k % 2) acc -= term;
      else acc += term;
    }
    return acc;
  }
  /// Top-left k x k minor.
  S leading_minor(std::size_t k) const {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    return minor(idx, idx);
  }
  S det() const {
    if (r_ != c_) throw std::invalid_argument("determinant of a non-square matrix");
    return leading_minor(r_);
  }
  /// det * inverse.
  BasicMatrix adjugate() const {
    if (r_ != c_) throw std::invalid_argument("adjugate of a non-square matrix");
    BasicMatrix m(r_, c_, a_.at(0));
    if (r_ == 1) {
      m(0, 0) = ScalarOps<S>::one_like(a_.at(0));
      return m;
    }
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t j = 0; j < c_; ++j) {
        std::vector<std::size_t> rr, cc;
        for (std::size_t k = 0; k < r_; ++k)
          if (k != j) rr.push_back(k);
        for (std::size_t k = 0; k < c_; ++k)
          if (k != i) cc.push_back(k);
        S x = minor(rr, cc);
        m(i, j) = (i + j) % 2 ? ScalarOps<S>::zero_like(x) - x : x;
      }
    }
    return m;
  }

  const std::vector<S>& data() const { return a_; }

 private:
  template <class F>
  BasicMatrix zip(const BasicMatrix& o, F f) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shapes do not match");
    BasicMatrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f(a_[i], o.a_[i]);
    return m;
  }

  std::size_t r_ = 0, c_ = 0;
  std::vector<S> a_;
};

using Matrix = BasicMatrix<FieldElem>;

Matrix matrix_from_rows(const FieldConfigPtr& cfg, const std::vector<std::vector<FieldElem>>& rows);
Matrix matrix_inverse(const Matrix& m);
/// Entrywise equality to the carried precision.
bool equal_within_precision(const Matrix& a, const Matrix& b);
/// a and b agree up to a nonzero scalar (PGL equality).
bool projectively_equal(const Matrix& a, const Matrix& b);
/// Entrywise sigma.
Matrix sigma(const Matrix& m);
std::string to_string(const Matrix& m);

}  // namespace bt
