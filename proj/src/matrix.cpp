#include "dwmod/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dwmod/error.hpp"

namespace dwmod {

namespace {

void require_finite(std::span<const cplx> entries) {
  for (const cplx& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(Errc::NonFinite, "matrix entry is NaN or Inf");
    }
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::DimensionMismatch,
                std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw Error(Errc::DimensionMismatch, "matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw Error(Errc::DimensionMismatch, "matrix dimensions must be positive");
  if (entries_.size() != rows * cols) {
    throw Error(Errc::DimensionMismatch, "entry count " + std::to_string(entries_.size()) +
                                             " does not match " + std::to_string(rows) + "x" +
                                             std::to_string(cols));
  }
  require_finite(entries_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw Error(Errc::DimensionMismatch, "matrix dimensions must be positive");
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged initializer list");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  require_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m.entries());
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<cplx> diag) {
  return diagonal(std::span<const cplx>(diag.begin(), diag.size()));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "add");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "subtract");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : entries_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(Errc::DimensionMismatch, "multiply: inner dimensions " + std::to_string(a.cols()) +
                                             " and " + std::to_string(b.rows()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) {
    throw Error(Errc::DimensionMismatch, "adjoint_times: row counts " + std::to_string(a.rows()) +
                                             " and " + std::to_string(b.rows()));
  }
  ComplexMatrix out(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const cplx aki = std::conj(a(k, i));
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aki * b(k, j);
    }
  }
  return out;
}

cplx trace(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "trace of non-square matrix");
  cplx t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const cplx& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double hermitian_defect(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "hermitian check on non-square matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "hermitian part of non-square matrix");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return out;
}

}  // namespace dwmod
