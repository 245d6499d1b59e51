#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bellq {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. All entries are finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const noexcept {
    return entries_[r * cols_ + c];
  }

  std::span<const cplx> entries() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  cplx trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entry-wise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m);

/// Max entry of |m - m^dagger|; used for the Hermiticity precondition.
double hermiticity_defect(const ComplexMatrix& m);

inline constexpr double kHermitianTolerance = 1e-10;

/// Ascending eigenvalues of a Hermitian matrix. The input is symmetrized
/// to (m + m^dagger)/2 before decomposition.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Smallest eigenvalue of a Hermitian matrix.
double hermitian_min_eigenvalue(const ComplexMatrix& m);

/// Eigenvalues of a general square matrix, in no particular order.
std::vector<cplx> eigenvalues(const ComplexMatrix& m);

/// Descending singular values; min(rows, cols) of them.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

cplx determinant(const ComplexMatrix& m);

/// Unitary DFT matrix F_{i,j} = omega^{-ij} / sqrt(d), omega = exp(2 pi i / d).
ComplexMatrix dft_matrix(std::size_t d);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Principal d-th root of unity raised to the given power, exponent taken mod d.
cplx root_of_unity(std::size_t d, long long power);

}  // namespace bellq
