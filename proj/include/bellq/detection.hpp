#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "bellq/linalg.hpp"
#include "bellq/weyl.hpp"

namespace bellq {

/// Guard band for the strict-inequality criteria. States within it of the
/// threshold (e.g. subgroup states) are reported as not detected.
inline constexpr double kDetectionGuard = 1e-12;

/// Minimum-eigenvalue threshold below which the dense partial transpose is
/// called non-positive.
inline constexpr double kPsdTolerance = 1e-10;

/// Bloch matrix B = d F C F^dagger, stored row-major as B(j, i).
struct BlochMatrix {
  std::size_t d = 0;
  std::vector<cplx> values;

  const cplx& operator()(std::size_t j, std::size_t i) const { return values[j * d + i]; }
  cplx& operator()(std::size_t j, std::size_t i) { return values[j * d + i]; }
};

BlochMatrix bloch_from_coefficients(const CoefficientMatrix& c);

/// Inverse DFT C = F^dagger B F / d. Throws InvalidBloch when B is not the
/// image of a point of the simplex.
CoefficientMatrix coefficients_from_bloch(const BlochMatrix& b);

struct RealignmentResult {
  double value = 0.0;  ///< entry-wise 1-norm of B
  bool detected = false;
};

/// Fast realignment test: sum |B_{j,i}| > d.
RealignmentResult realignment_fast(const CoefficientMatrix& c);

/// Trace norm of the dense realigned density matrix.
double realignment_oracle(const CoefficientMatrix& c);

/// Eigenvalues B_{j,i}/d of the realigned matrix, sorted by (real, imag).
std::vector<cplx> realigned_spectrum(const CoefficientMatrix& c);

/// Qutrit realignment in striation form:
/// sum_S sqrt(6 sum_{ell in C(S)} mass(ell)^2 - 2) > 2.
RealignmentResult realignment_qutrit_subgroup_form(const CoefficientMatrix& c);

/// The three 3x3 blocks A_m of the Bell-basis block diagonalization of the
/// partial transpose (qutrits only).
std::vector<ComplexMatrix> ppt_blocks(const CoefficientMatrix& c);

struct QutritDetResult {
  double lhs = 0.0;  ///< 3 * sum over the 12 cosets of the product of their coefficients
  double rhs = 0.0;  ///< sum of c^3
  bool is_npt = false;
};

/// Determinant form of the PPT criterion for qutrits: NPT iff lhs < rhs.
QutritDetResult ppt_det_qutrit(const CoefficientMatrix& c);

struct PptOracleResult {
  double min_eigenvalue = 0.0;
  bool is_npt = false;
};

/// Dense check: smallest eigenvalue of the partial transpose, any d.
PptOracleResult ppt_oracle(const CoefficientMatrix& c);

/// Coefficients kappa_{i,j} of W_NPT = sum kappa_{i,j} P_{i,j} (qutrits).
struct WitnessMatrix {
  std::array<double, 9> kappa{};

  double operator()(std::size_t i, std::size_t j) const { return kappa[i * 3 + j]; }
  bool is_zero(double tol = 1e-15) const;
  bool is_nonnegative() const;
};

/// kappa_{i,j} = -c_{i,j}^2 + sum over the four lines through (i,j) of the
/// product of the other two coefficients on that line.
WitnessMatrix witness_kappa(const CoefficientMatrix& c);

/// tr(rho W) = sum kappa_{i,j} c_{i,j}.
double witness_value(const CoefficientMatrix& state, const WitnessMatrix& w);

/// Dense 9x9 witness operator sum kappa_{i,j} P_{i,j}.
ComplexMatrix witness_operator(const WitnessMatrix& w);

/// Lambda(sigma) = sum kappa_{i,j} W_{i,j} sigma W_{i,j}^dagger.
ComplexMatrix choi_map_apply(const WitnessMatrix& w, const ComplexMatrix& sigma);

/// Same map through the Choi-Jamiolkowski form 3 tr_B(W (1 (x) sigma^T)).
ComplexMatrix choi_map_apply_partial_trace(const WitnessMatrix& w, const ComplexMatrix& sigma);

enum class Label { NptEntangled, PptEntangledDetected, Undetected, Separable };

std::string_view label_name(Label label) noexcept;
std::optional<Label> label_from_name(std::string_view name) noexcept;

struct ClassificationRecord {
  std::size_t d = 0;
  double realignment_value = 0.0;       ///< ||B||_1
  double realignment_normalized = 0.0;  ///< ||B||_1 / d, the realigned trace norm
  bool realignment_detected = false;
  /// d = 3: rhs - lhs of the determinant criterion (positive means NPT).
  std::optional<double> ppt_value;
  /// d != 3: smallest eigenvalue of the dense partial transpose.
  std::optional<double> ppt_min_eigenvalue;
  bool is_ppt = true;
  Label label = Label::Undetected;

  friend bool operator==(const ClassificationRecord&, const ClassificationRecord&) = default;
};

/// Realignment always; for d = 3 the determinant criterion, otherwise the
/// dense PPT check. Separability is only asserted for d = 2.
ClassificationRecord classify(const CoefficientMatrix& c);

}  // namespace bellq
