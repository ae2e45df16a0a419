#include "bt/matrix.hpp"

#include <sstream>

namespace bt {

Matrix matrix_from_rows(const FieldConfigPtr& cfg, const std::vector<std::vector<FieldElem>>& rows) {
  if (rows.empty() || rows[0].empty()) throw std::invalid_argument("empty matrix");
  Matrix m(rows.size(), rows[0].size(), FieldElem(cfg));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix matrix_inverse(const Matrix& m) {
  FieldElem d = m.det();
  if (d.is_indistinguishable_from_zero()) throw PrecisionError("matrix is not invertible to precision");
  return m.adjugate().scaled(d.inverse());
}

bool equal_within_precision(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    if (!equal_within_precision(a.data()[i], b.data()[i])) return false;
  return true;
}

bool projectively_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  // Scale both by a common pivot: the first entry of a with a known digit.
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    if (a.data()[k].is_indistinguishable_from_zero()) continue;
    if (b.data()[k].is_indistinguishable_from_zero()) return false;
    return equal_within_precision(a.scaled(b.data()[k]), b.scaled(a.data()[k]));
  }
  for (const auto& x : b.data())
    if (!x.is_indistinguishable_from_zero()) return false;
  return true;
}

Matrix sigma(const Matrix& m) {
  Matrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = sigma(m(i, j));
  return r;
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace bt
