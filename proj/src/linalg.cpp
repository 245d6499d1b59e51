#include "bellq/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bellq/error.hpp"

namespace bellq {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::NonPrimeDimension: return "NonPrimeDimension";
    case ErrorCode::InvalidCoefficients: return "InvalidCoefficients";
    case ErrorCode::InvalidBloch: return "InvalidBloch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

using EigenMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMat> as_eigen(const ComplexMatrix& m) {
  return {m.entries().data(), static_cast<Eigen::Index>(m.rows()),
          static_cast<Eigen::Index>(m.cols())};
}

void require_square(const ComplexMatrix& m, const char* op) {
  if (!m.is_square()) {
    std::ostringstream msg;
    msg << op << " needs a square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorCode::NonSquare, msg.str());
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << "shape " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

EigenMat symmetrized(const ComplexMatrix& m) {
  require_square(m, "hermitian eigendecomposition");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "max |m - m^dagger| = " << defect << " exceeds " << kHermitianTolerance;
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
  auto e = as_eigen(m);
  return (e + e.adjoint()) * 0.5;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    std::ostringstream msg;
    msg << "expected " << rows_ * cols_ << " entries, got " << entries_.size();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  for (const cplx& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::NonFinite, "matrix entry is NaN or infinite");
    }
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  std::vector<cplx> entries;
  entries.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  *this = ComplexMatrix(rows_, cols_, std::move(entries));
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (cplx& z : out.entries_) z = std::conj(z);
  return out;
}

cplx ComplexMatrix::trace() const {
  require_square(*this, "trace");
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : entries_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "cannot multiply " << a.rows() << "x" << a.cols() << " by " << b.rows() << "x"
        << b.cols();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const cplx& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double hermiticity_defect(const ComplexMatrix& m) {
  require_square(m, "hermiticity check");
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const EigenMat h = symmetrized(m);
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<EigenMat> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double hermitian_min_eigenvalue(const ComplexMatrix& m) {
  const auto ev = hermitian_eigenvalues(m);
  if (ev.empty()) throw Error(ErrorCode::DimensionTooSmall, "empty matrix has no eigenvalues");
  return ev.front();
}

std::vector<cplx> eigenvalues(const ComplexMatrix& m) {
  require_square(m, "eigenvalues");
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(as_eigen(m)), false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(as_eigen(m)));
  const auto& sv = svd.singularValues();
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double trace_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (double v : singular_values(m)) s += v;
  return s;
}

cplx determinant(const ComplexMatrix& m) {
  require_square(m, "determinant");
  if (m.rows() == 0) return 1.0;
  return Eigen::MatrixXcd(as_eigen(m)).partialPivLu().determinant();
}

cplx root_of_unity(std::size_t d, long long power) {
  const long long n = static_cast<long long>(d);
  const long long p = ((power % n) + n) % n;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(d);
  return {std::cos(angle), std::sin(angle)};
}

ComplexMatrix dft_matrix(std::size_t d) {
  if (d < 2) throw Error(ErrorCode::DimensionTooSmall, "DFT needs d >= 2");
  ComplexMatrix f(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      f(i, j) = root_of_unity(d, -static_cast<long long>(i * j)) * scale;
  return f;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

}  // namespace bellq
