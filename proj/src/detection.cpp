#include "bellq/detection.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "bellq/error.hpp"
#include "bellq/phase_space.hpp"

namespace bellq {

namespace {

void require_qutrit(const CoefficientMatrix& c, const char* op) {
  if (c.dim() != 3) {
    throw Error(ErrorCode::WrongDimension,
                std::string(op) + " is only defined for d = 3, got d = " + std::to_string(c.dim()));
  }
}

std::vector<cplx> roots_table(std::size_t d) {
  std::vector<cplx> omega(d);
  for (std::size_t p = 0; p < d; ++p) omega[p] = root_of_unity(d, static_cast<long long>(p));
  return omega;
}

// The 12 lines of Z_3^2, as flat point indices k*3 + l. Built once.
const std::vector<std::array<std::size_t, 3>>& qutrit_lines() {
  static const std::vector<std::array<std::size_t, 3>> lines = [] {
    std::vector<std::array<std::size_t, 3>> out;
    for (const Coset& ell : all_cosets(3)) {
      std::array<std::size_t, 3> pts{};
      for (std::size_t n = 0; n < 3; ++n) pts[n] = ell.elements[n].k * 3 + ell.elements[n].l;
      out.push_back(pts);
    }
    return out;
  }();
  return lines;
}

ComplexMatrix partial_trace_b(const ComplexMatrix& m, std::size_t dA, std::size_t dB) {
  ComplexMatrix out(dA, dA);
  for (std::size_t a = 0; a < dA; ++a)
    for (std::size_t a2 = 0; a2 < dA; ++a2)
      for (std::size_t b = 0; b < dB; ++b) out(a, a2) += m(a * dB + b, a2 * dB + b);
  return out;
}

}  // namespace

BlochMatrix bloch_from_coefficients(const CoefficientMatrix& c) {
  const std::size_t d = c.dim();
  const auto omega = roots_table(d);
  // B_{j,i} = sum_{k,l} c_{k,l} omega^{il - jk}, evaluated as two 1-D passes:
  // T_{k,i} = sum_l c_{k,l} omega^{il}, then B_{j,i} = sum_k omega^{-jk} T_{k,i}.
  std::vector<cplx> t(d * d, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) {
      cplx s{0.0, 0.0};
      for (std::size_t l = 0; l < d; ++l) s += c(k, l) * omega[(i * l) % d];
      t[k * d + i] = s;
    }
  BlochMatrix b{d, std::vector<cplx>(d * d, cplx{0.0, 0.0})};
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      cplx s{0.0, 0.0};
      for (std::size_t k = 0; k < d; ++k) s += std::conj(omega[(j * k) % d]) * t[k * d + i];
      b(j, i) = s;
    }
  return b;
}

CoefficientMatrix coefficients_from_bloch(const BlochMatrix& b) {
  const std::size_t d = b.d;
  if (d < 2 || b.values.size() != d * d) {
    throw Error(ErrorCode::InvalidBloch, "Bloch matrix shape does not match d");
  }
  if (std::abs(b(0, 0) - cplx{1.0, 0.0}) > CoefficientMatrix::kSumTolerance) {
    throw Error(ErrorCode::InvalidBloch, "b_{0,0} must be 1 (sum c = 1 violated)");
  }
  const auto omega = roots_table(d);
  // c_{k,l} = (1/d^2) sum_{j,i} B_{j,i} omega^{jk - il}
  std::vector<double> c(d * d);
  const double norm = 1.0 / static_cast<double>(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      cplx s{0.0, 0.0};
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i)
          s += b(j, i) * omega[(j * k) % d] * std::conj(omega[(i * l) % d]);
      s *= norm;
      if (std::abs(s.imag()) > CoefficientMatrix::kSumTolerance) {
        throw Error(ErrorCode::InvalidBloch, "inverse transform has a non-real coefficient");
      }
      c[k * d + l] = s.real();
    }
  try {
    return {d, std::move(c)};
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidBloch, e.what());
  }
}

RealignmentResult realignment_fast(const CoefficientMatrix& c) {
  const BlochMatrix b = bloch_from_coefficients(c);
  double value = 0.0;
  for (const cplx& z : b.values) value += std::abs(z);
  return {value, value > static_cast<double>(c.dim()) + kDetectionGuard};
}

double realignment_oracle(const CoefficientMatrix& c) {
  const std::size_t d = c.dim();
  return trace_norm(realign(density_from_coefficients(c), d, d));
}

std::vector<cplx> realigned_spectrum(const CoefficientMatrix& c) {
  const BlochMatrix b = bloch_from_coefficients(c);
  std::vector<cplx> out;
  out.reserve(b.values.size());
  const double inv_d = 1.0 / static_cast<double>(c.dim());
  for (const cplx& z : b.values) out.push_back(z * inv_d);
  std::sort(out.begin(), out.end(), [](const cplx& x, const cplx& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

RealignmentResult realignment_qutrit_subgroup_form(const CoefficientMatrix& c) {
  require_qutrit(c, "qutrit subgroup-form realignment");
  double value = 0.0;
  for (const Subgroup& s : enumerate_subgroups(3)) {
    double squares = 0.0;
    for (const Coset& ell : striation(s).cosets) {
      double mass = 0.0;
      for (const PhaseIndex& p : ell.elements) mass += c(p);
      squares += mass * mass;
    }
    // sum of squared masses is >= 1/3; clamp round-off below that.
    value += std::sqrt(std::max(0.0, 6.0 * squares - 2.0));
  }
  return {value, value > 2.0 + kDetectionGuard};
}

std::vector<ComplexMatrix> ppt_blocks(const CoefficientMatrix& c) {
  require_qutrit(c, "ppt_blocks");
  constexpr std::size_t d = 3;
  const auto omega = roots_table(d);
  std::array<ComplexMatrix, d * d> weyl;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) weyl[i * d + j] = weyl_operator(d, {i, j});

  // A_m = (1/9) sum_{i,j,k,l} omega^{j(m-k) - i(l+j)} c_{k,l} W_{i,j}
  std::vector<ComplexMatrix> blocks;
  for (std::size_t m = 0; m < d; ++m) {
    ComplexMatrix a(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        cplx coeff{0.0, 0.0};
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l) {
            const std::size_t phase = (j * (m + d - k) + 2 * d * d - i * ((l + j) % d)) % d;
            coeff += c(k, l) * omega[phase];
          }
        a += weyl[i * d + j] * (coeff / 9.0);
      }
    blocks.push_back(std::move(a));
  }
  return blocks;
}

QutritDetResult ppt_det_qutrit(const CoefficientMatrix& c) {
  require_qutrit(c, "ppt_det_qutrit");
  const auto v = c.values();
  double lhs = 0.0;
  for (const auto& line : qutrit_lines()) lhs += v[line[0]] * v[line[1]] * v[line[2]];
  lhs *= 3.0;
  double rhs = 0.0;
  for (double x : v) rhs += x * x * x;
  return {lhs, rhs, lhs < rhs - kDetectionGuard};
}

PptOracleResult ppt_oracle(const CoefficientMatrix& c) {
  const std::size_t d = c.dim();
  const double lo = hermitian_min_eigenvalue(partial_transpose(density_from_coefficients(c), d, d));
  return {lo, lo < -kPsdTolerance};
}

bool WitnessMatrix::is_zero(double tol) const {
  return std::all_of(kappa.begin(), kappa.end(), [tol](double k) { return std::abs(k) <= tol; });
}

bool WitnessMatrix::is_nonnegative() const {
  return std::all_of(kappa.begin(), kappa.end(), [](double k) { return k >= 0.0; });
}

WitnessMatrix witness_kappa(const CoefficientMatrix& c) {
  require_qutrit(c, "witness_kappa");
  const auto v = c.values();
  WitnessMatrix w;
  for (std::size_t p = 0; p < 9; ++p) w.kappa[p] = -v[p] * v[p];
  for (const auto& line : qutrit_lines()) {
    w.kappa[line[0]] += v[line[1]] * v[line[2]];
    w.kappa[line[1]] += v[line[0]] * v[line[2]];
    w.kappa[line[2]] += v[line[0]] * v[line[1]];
  }
  return w;
}

double witness_value(const CoefficientMatrix& state, const WitnessMatrix& w) {
  require_qutrit(state, "witness_value");
  double s = 0.0;
  for (std::size_t p = 0; p < 9; ++p) s += w.kappa[p] * state.values()[p];
  return s;
}

ComplexMatrix witness_operator(const WitnessMatrix& w) {
  ComplexMatrix op(9, 9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) op += bell_projector(3, {i, j}) * cplx{w(i, j), 0.0};
  return op;
}

ComplexMatrix choi_map_apply(const WitnessMatrix& w, const ComplexMatrix& sigma) {
  if (sigma.rows() != 3 || sigma.cols() != 3) {
    throw Error(ErrorCode::DimensionMismatch, "Choi map acts on 3x3 operators");
  }
  ComplexMatrix out(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const ComplexMatrix u = weyl_operator(3, {i, j});
      out += (u * sigma * u.adjoint()) * cplx{w(i, j), 0.0};
    }
  return out;
}

ComplexMatrix choi_map_apply_partial_trace(const WitnessMatrix& w, const ComplexMatrix& sigma) {
  if (sigma.rows() != 3 || sigma.cols() != 3) {
    throw Error(ErrorCode::DimensionMismatch, "Choi map acts on 3x3 operators");
  }
  const ComplexMatrix lifted = kron(ComplexMatrix::identity(3), sigma.transpose());
  return partial_trace_b(witness_operator(w) * lifted, 3, 3) * cplx{3.0, 0.0};
}

std::string_view label_name(Label label) noexcept {
  switch (label) {
    case Label::NptEntangled: return "NPT-entangled";
    case Label::PptEntangledDetected: return "PPT-entangled (detected)";
    case Label::Undetected: return "undetected";
    case Label::Separable: return "separable";
  }
  return "undetected";
}

std::optional<Label> label_from_name(std::string_view name) noexcept {
  for (Label l : {Label::NptEntangled, Label::PptEntangledDetected, Label::Undetected,
                  Label::Separable}) {
    if (label_name(l) == name) return l;
  }
  return std::nullopt;
}

ClassificationRecord classify(const CoefficientMatrix& c) {
  ClassificationRecord rec;
  rec.d = c.dim();
  const RealignmentResult r = realignment_fast(c);
  rec.realignment_value = r.value;
  rec.realignment_normalized = r.value / static_cast<double>(rec.d);
  rec.realignment_detected = r.detected;
  if (rec.d == 3) {
    const QutritDetResult det = ppt_det_qutrit(c);
    rec.ppt_value = det.rhs - det.lhs;
    rec.is_ppt = !det.is_npt;
  } else {
    const PptOracleResult ppt = ppt_oracle(c);
    rec.ppt_min_eigenvalue = ppt.min_eigenvalue;
    rec.is_ppt = !ppt.is_npt;
  }
  if (!rec.is_ppt) {
    rec.label = Label::NptEntangled;
  } else if (rec.realignment_detected) {
    rec.label = Label::PptEntangledDetected;
  } else if (rec.d == 2) {
    rec.label = Label::Separable;
  } else {
    rec.label = Label::Undetected;
  }
  return rec;
}

}  // namespace bellq
