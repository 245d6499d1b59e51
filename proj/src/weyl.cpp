#include "bellq/weyl.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "bellq/error.hpp"

namespace bellq {

namespace {

void require_dim(std::size_t d) {
  if (d < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "dimension must be >= 2, got " + std::to_string(d));
  }
}

void require_bipartite(const ComplexMatrix& rho, std::size_t dA, std::size_t dB) {
  if (rho.rows() != dA * dB || rho.cols() != dA * dB) {
    std::ostringstream msg;
    msg << "expected " << dA * dB << "x" << dA * dB << " operator for dims (" << dA << ", " << dB
        << "), got " << rho.rows() << "x" << rho.cols();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

}  // namespace

PhaseIndex add_mod(PhaseIndex a, PhaseIndex b, std::size_t d) noexcept {
  return {(a.k + b.k) % d, (a.l + b.l) % d};
}

CoefficientMatrix::CoefficientMatrix(std::size_t d, std::vector<double> row_major)
    : d_(d), c_(std::move(row_major)) {
  require_dim(d_);
  if (c_.size() != d_ * d_) {
    std::ostringstream msg;
    msg << "coefficient matrix for d=" << d_ << " needs " << d_ * d_ << " entries, got "
        << c_.size();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  bool clamped = false;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    double& v = c_[i];
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "coefficient is NaN or infinite");
    if (v < -kNegativeClamp) {
      std::ostringstream msg;
      msg << "c[" << i / d_ << "][" << i % d_ << "] = " << v << " is negative (c >= 0 violated)";
      throw Error(ErrorCode::InvalidCoefficients, msg.str());
    }
    if (v < 0.0) {
      v = 0.0;
      clamped = true;
    }
  }
  const double total = std::accumulate(c_.begin(), c_.end(), 0.0);
  if (std::abs(total - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "coefficients sum to " << total << " (sum c = 1 violated)";
    throw Error(ErrorCode::InvalidCoefficients, msg.str());
  }
  if (clamped) {
    for (double& v : c_) v /= total;
  }
}

CoefficientMatrix CoefficientMatrix::point_mass(std::size_t d, PhaseIndex at) {
  std::vector<double> c(d * d, 0.0);
  c[(at.k % d) * d + at.l % d] = 1.0;
  return {d, std::move(c)};
}

CoefficientMatrix CoefficientMatrix::maximally_mixed(std::size_t d) {
  return {d, std::vector<double>(d * d, 1.0 / static_cast<double>(d * d))};
}

ComplexMatrix weyl_operator(std::size_t d, PhaseIndex idx) {
  require_dim(d);
  ComplexMatrix w(d, d);
  for (std::size_t j = 0; j < d; ++j)
    w(j, (j + idx.l) % d) = root_of_unity(d, static_cast<long long>(j * idx.k));
  return w;
}

std::vector<cplx> bell_state(std::size_t d, PhaseIndex idx) {
  require_dim(d);
  // W_{k,l}|i> = omega^{(i-l)k} |i-l>, so the amplitude sits at |i-l>|i>.
  std::vector<cplx> psi(d * d, cplx{0.0, 0.0});
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t a = (i + d - idx.l % d) % d;
    psi[a * d + i] = root_of_unity(d, static_cast<long long>(a * idx.k)) * scale;
  }
  return psi;
}

ComplexMatrix bell_projector(std::size_t d, PhaseIndex idx) {
  const auto psi = bell_state(d, idx);
  ComplexMatrix p(d * d, d * d);
  for (std::size_t r = 0; r < psi.size(); ++r) {
    if (psi[r] == cplx{0.0, 0.0}) continue;
    for (std::size_t c = 0; c < psi.size(); ++c) p(r, c) = psi[r] * std::conj(psi[c]);
  }
  return p;
}

ComplexMatrix density_from_coefficients(const CoefficientMatrix& c) {
  const std::size_t d = c.dim();
  std::vector<cplx> omega(d);
  for (std::size_t p = 0; p < d; ++p) omega[p] = root_of_unity(d, static_cast<long long>(p));

  // rho = (1/d) sum c_{k,l} omega^{k(i-j)} |i-l><j-l| (x) |i><j|
  ComplexMatrix rho(d * d, d * d);
  const double inv_d = 1.0 / static_cast<double>(d);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        cplx s{0.0, 0.0};
        const std::size_t diff = (i + d - j) % d;
        for (std::size_t k = 0; k < d; ++k) s += c(k, l) * omega[(k * diff) % d];
        const std::size_t a = (i + d - l) % d;
        const std::size_t b = (j + d - l) % d;
        rho(a * d + i, b * d + j) = s * inv_d;
      }
  return rho;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t dA, std::size_t dB) {
  require_bipartite(rho, dA, dB);
  ComplexMatrix out(dA * dB, dA * dB);
  for (std::size_t i = 0; i < dA; ++i)
    for (std::size_t j = 0; j < dA; ++j)
      for (std::size_t k = 0; k < dB; ++k)
        for (std::size_t l = 0; l < dB; ++l) out(i * dB + l, j * dB + k) = rho(i * dB + k, j * dB + l);
  return out;
}

ComplexMatrix realign(const ComplexMatrix& rho, std::size_t dA, std::size_t dB) {
  require_bipartite(rho, dA, dB);
  ComplexMatrix out(dA * dA, dB * dB);
  for (std::size_t i = 0; i < dA; ++i)
    for (std::size_t j = 0; j < dA; ++j)
      for (std::size_t k = 0; k < dB; ++k)
        for (std::size_t l = 0; l < dB; ++l) out(i * dA + j, k * dB + l) = rho(i * dB + k, j * dB + l);
  return out;
}

ComplexMatrix flip_operator(std::size_t d) {
  require_dim(d);
  ComplexMatrix f(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return f;
}

}  // namespace bellq
