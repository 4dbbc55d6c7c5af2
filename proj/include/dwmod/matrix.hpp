#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dwmod {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. All entries are finite; the constructors
/// reject NaN/Inf so every downstream norm and eigen computation is defined.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const cplx> diag);
  static ComplexMatrix diagonal(std::initializer_list<cplx> diag);
  static ComplexMatrix scalar(cplx value) { return ComplexMatrix(1, 1, {value}); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  std::span<const cplx> entries() const noexcept { return entries_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

/// a* b without materializing a*.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);

cplx trace(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);

/// Largest entrywise |a_ij - conj(a_ji)|; requires a square matrix.
double hermitian_defect(const ComplexMatrix& a);

/// (a + a*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

}  // namespace dwmod
