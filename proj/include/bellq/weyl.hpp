#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bellq/linalg.hpp"

namespace bellq {

/// A point (k, l) of the discrete phase space Z_d x Z_d. k is the phase
/// index, l the shift index of the Weyl operator W_{k,l}.
struct PhaseIndex {
  std::size_t k = 0;
  std::size_t l = 0;

  friend auto operator<=>(const PhaseIndex&, const PhaseIndex&) = default;
};

/// (a + b) mod d, componentwise.
PhaseIndex add_mod(PhaseIndex a, PhaseIndex b, std::size_t d) noexcept;

/// Probability weights c_{k,l} of a Bell-diagonal state over the Weyl Bell basis.
///
/// Construction enforces the simplex invariants: entries in [-1e-12, 0) are
/// clamped to zero (then the matrix is renormalized), anything more negative
/// is rejected, and the total must be 1 within 1e-10.
class CoefficientMatrix {
 public:
  static constexpr double kNegativeClamp = 1e-12;
  static constexpr double kSumTolerance = 1e-10;

  CoefficientMatrix(std::size_t d, std::vector<double> row_major);

  static CoefficientMatrix point_mass(std::size_t d, PhaseIndex at);
  static CoefficientMatrix maximally_mixed(std::size_t d);

  std::size_t dim() const noexcept { return d_; }
  double operator()(std::size_t k, std::size_t l) const noexcept { return c_[k * d_ + l]; }
  double operator()(PhaseIndex p) const noexcept { return c_[p.k * d_ + p.l]; }
  std::span<const double> values() const noexcept { return c_; }

 private:
  std::size_t d_;
  std::vector<double> c_;
};

/// W_{k,l} = sum_j omega^{jk} |j><j+l|.
ComplexMatrix weyl_operator(std::size_t d, PhaseIndex idx);

/// |Omega_{k,l}> = (W_{k,l} (x) 1)|Omega_{0,0}>, length d^2, index a*d + b for |a>|b>.
std::vector<cplx> bell_state(std::size_t d, PhaseIndex idx);

/// P_{k,l} = |Omega_{k,l}><Omega_{k,l}|.
ComplexMatrix bell_projector(std::size_t d, PhaseIndex idx);

/// rho = sum c_{k,l} P_{k,l} as a dense d^2 x d^2 matrix.
ComplexMatrix density_from_coefficients(const CoefficientMatrix& c);

/// Transpose on the second tensor factor.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t dA, std::size_t dB);

/// Realignment |i><j| (x) |k><l|  ->  |i><k| (x) |j><l|. Result is dA^2 x dB^2.
ComplexMatrix realign(const ComplexMatrix& rho, std::size_t dA, std::size_t dB);

/// Swap operator sum_{i,j} |i><j| (x) |j><i| on C^d (x) C^d.
ComplexMatrix flip_operator(std::size_t d);

}  // namespace bellq
