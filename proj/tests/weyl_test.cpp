#include "bellq/weyl.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bellq/error.hpp"
#include "test_util.hpp"

using namespace bellq;
using bellq::testing::multiset_distance;
using bellq::testing::random_coefficients;
using bellq::testing::random_matrix;

namespace {

ComplexMatrix w(std::size_t d, long long k, long long l) {
  const auto n = static_cast<long long>(d);
  return weyl_operator(d, {static_cast<std::size_t>(((k % n) + n) % n),
                           static_cast<std::size_t>(((l % n) + n) % n)});
}

}  // namespace

TEST(WeylOperator, QubitPaulis) {
  EXPECT_EQ(max_abs_diff(weyl_operator(2, {0, 1}), ComplexMatrix{{0, 1}, {1, 0}}), 0.0);
  EXPECT_LT(max_abs_diff(weyl_operator(2, {1, 0}), ComplexMatrix{{1, 0}, {0, -1}}), 1e-15);
  EXPECT_THROW(weyl_operator(1, {0, 0}), Error);
}

TEST(WeylOperator, QutritSquare) {
  const ComplexMatrix w11 = weyl_operator(3, {1, 1});
  EXPECT_LT(max_abs_diff(w11 * w11, weyl_operator(3, {2, 2}) * root_of_unity(3, 1)), 1e-12);
}

TEST(WeylOperator, AllFourRelations) {
  for (std::size_t d = 2; d <= 8; ++d) {
    const auto n = static_cast<long long>(d);
    double worst = 0.0;
    for (long long i = 0; i < n; ++i)
      for (long long j = 0; j < n; ++j) {
        const ComplexMatrix wij = w(d, i, j);
        worst = std::max(worst, max_abs_diff(wij.adjoint(), w(d, -i, -j) * root_of_unity(d, i * j)));
        worst = std::max(worst, max_abs_diff(wij.adjoint() * wij, ComplexMatrix::identity(d)));
        worst = std::max(worst, max_abs_diff(wij.conjugate(), w(d, -i, j)));
        worst = std::max(worst, max_abs_diff(wij.transpose(), w(d, i, -j) * root_of_unity(d, -i * j)));
        for (long long k = 0; k < n; ++k)
          for (long long l = 0; l < n; ++l)
            worst = std::max(worst, max_abs_diff(wij * w(d, k, l),
                                                 w(d, i + k, j + l) * root_of_unity(d, j * k)));
      }
    EXPECT_LT(worst, 1e-12) << "d=" << d;
  }
}

TEST(WeylOperator, HilbertSchmidtOrthogonality) {
  for (std::size_t d : {2u, 3u, 5u}) {
    for (std::size_t a = 0; a < d * d; ++a)
      for (std::size_t b = 0; b < d * d; ++b) {
        const cplx t = (weyl_operator(d, {a / d, a % d}) * weyl_operator(d, {b / d, b % d}).adjoint()).trace();
        EXPECT_LT(std::abs(t - cplx(a == b ? static_cast<double>(d) : 0.0)), 1e-12);
      }
  }
}

TEST(BellState, Examples) {
  const auto phi = bell_state(2, {0, 0});
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<cplx> expected2{s, 0, 0, s};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(std::abs(phi[i] - expected2[i]), 1e-15);

  const auto omega = bell_state(3, {0, 0});
  const double t = 1.0 / std::sqrt(3.0);
  for (std::size_t i = 0; i < 9; ++i)
    EXPECT_LT(std::abs(omega[i] - cplx(i % 4 == 0 ? t : 0.0)), 1e-15) << i;
}

TEST(BellState, IsVectorizedWeylOperator) {
  for (std::size_t d : {2u, 3u, 4u}) {
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) {
        const auto psi = bell_state(d, {k, l});
        const ComplexMatrix wk = weyl_operator(d, {k, l});
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c)
            EXPECT_LT(std::abs(psi[r * d + c] - wk(r, c) / std::sqrt(static_cast<double>(d))), 1e-15);
      }
  }
}

TEST(BellState, OrthonormalBasisForQutrits) {
  const std::size_t d = 3;
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b) {
      const auto x = bell_state(d, {a / 3, a % 3});
      const auto y = bell_state(d, {b / 3, b % 3});
      cplx ip{0.0, 0.0};
      for (std::size_t i = 0; i < x.size(); ++i) ip += std::conj(x[i]) * y[i];
      EXPECT_LT(std::abs(ip - cplx(a == b ? 1.0 : 0.0)), 1e-12);
    }
}

TEST(BellState, WeylCovariance) {
  const std::size_t d = 3;
  const ComplexMatrix id = ComplexMatrix::identity(d);
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b) {
      const PhaseIndex p{a / 3, a % 3};
      const PhaseIndex q{b / 3, b % 3};
      const ComplexMatrix u = kron(weyl_operator(d, q), id);
      EXPECT_LT(max_abs_diff(u * bell_projector(d, p) * u.adjoint(),
                             bell_projector(d, add_mod(p, q, d))),
                1e-12);
    }
}

TEST(CoefficientMatrix, ClampsTinyNegativesAndRejectsOthers) {
  const CoefficientMatrix c(2, {0.5 + 5e-13, -5e-13, 0.25, 0.25});
  EXPECT_EQ(c(0, 1), 0.0);
  double total = 0.0;
  for (double v : c.values()) total += v;
  EXPECT_NEAR(total, 1.0, 1e-15);

  EXPECT_THROW(CoefficientMatrix(2, {0.6, -1e-6, 0.2, 0.2 + 1e-6}), Error);
  EXPECT_THROW(CoefficientMatrix(2, {0.5, 0.5, 0.5, 0.5}), Error);
  EXPECT_THROW(CoefficientMatrix(2, {1.0, 0.0, 0.0}), Error);
  EXPECT_THROW(CoefficientMatrix(1, {1.0}), Error);
}

TEST(DensityFromCoefficients, PointMassIsBellProjector) {
  const ComplexMatrix rho = density_from_coefficients(CoefficientMatrix::point_mass(2, {0, 0}));
  const ComplexMatrix expected{{0.5, 0, 0, 0.5}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0.5, 0, 0, 0.5}};
  EXPECT_LT(max_abs_diff(rho, expected), 1e-15);
}

TEST(DensityFromCoefficients, UniformIsMaximallyMixed) {
  for (std::size_t d : {2u, 3u, 5u}) {
    const ComplexMatrix rho = density_from_coefficients(CoefficientMatrix::maximally_mixed(d));
    EXPECT_LT(max_abs_diff(rho, ComplexMatrix::identity(d * d) * cplx(1.0 / (d * d))), 1e-14);
  }
}

TEST(DensityFromCoefficients, MatchesProjectorSumAndSpectrum) {
  std::mt19937_64 rng(23);
  for (std::size_t d : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 5; ++trial) {
      const CoefficientMatrix c = random_coefficients(d, rng);
      const ComplexMatrix rho = density_from_coefficients(c);

      ComplexMatrix sum(d * d, d * d);
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) sum += bell_projector(d, {k, l}) * cplx(c(k, l));
      EXPECT_LT(max_abs_diff(rho, sum), 1e-14);

      EXPECT_LT(hermiticity_defect(rho), 1e-15);
      EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
      const auto ev = hermitian_eigenvalues(rho);
      EXPECT_GE(ev.front(), -1e-10);
      const std::vector<double> cs(c.values().begin(), c.values().end());
      EXPECT_LT(multiset_distance(ev, cs), 1e-12);

      // Bell states diagonalize rho: <Omega_{k,l}|rho|Omega_{k,l}> = c_{k,l}.
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          const auto psi = bell_state(d, {k, l});
          cplx e{0.0, 0.0};
          for (std::size_t r = 0; r < d * d; ++r)
            for (std::size_t s = 0; s < d * d; ++s) e += std::conj(psi[r]) * rho(r, s) * psi[s];
          EXPECT_NEAR(e.real(), c(k, l), 1e-12);
          EXPECT_NEAR(e.imag(), 0.0, 1e-12);
        }
    }
  }
}

TEST(PartialTranspose, InvolutionAndTrace) {
  std::mt19937_64 rng(29);
  const ComplexMatrix m = random_matrix(9, 9, rng);
  EXPECT_EQ(max_abs_diff(partial_transpose(partial_transpose(m, 3, 3), 3, 3), m), 0.0);
  EXPECT_LT(std::abs(partial_transpose(m, 3, 3).trace() - m.trace()), 1e-12);
  EXPECT_THROW(partial_transpose(m, 2, 3), Error);
}

TEST(PartialTranspose, ProductState) {
  std::mt19937_64 rng(31);
  const ComplexMatrix sigma = random_matrix(2, 2, rng);
  const ComplexMatrix tau = random_matrix(3, 3, rng);
  EXPECT_EQ(max_abs_diff(partial_transpose(kron(sigma, tau), 2, 3), kron(sigma, tau.transpose())), 0.0);
}

TEST(PartialTranspose, QutritBellProjectorMinimum) {
  const auto ev = hermitian_eigenvalues(partial_transpose(bell_projector(3, {0, 0}), 3, 3));
  EXPECT_NEAR(ev.front(), -1.0 / 3.0, 1e-12);
  EXPECT_NEAR(ev.back(), 1.0 / 3.0, 1e-12);
}

TEST(Realign, BellDiagonalClosedForm) {
  std::mt19937_64 rng(37);
  for (std::size_t d : {2u, 3u, 4u}) {
    const CoefficientMatrix c = random_coefficients(d, rng);
    ComplexMatrix expected(d * d, d * d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) {
        const ComplexMatrix wkl = weyl_operator(d, {k, l});
        expected += kron(wkl, wkl.conjugate()) * cplx(c(k, l) / d);
      }
    EXPECT_LT(max_abs_diff(realign(density_from_coefficients(c), d, d), expected), 1e-14);
  }
}

TEST(Realign, MaximallyMixedTraceNorm) {
  // R(1/d^2) = |vec 1><vec 1| / d^2: a single singular value d / d^2.
  for (std::size_t d : {2u, 3u, 4u}) {
    const auto sv = singular_values(
        realign(density_from_coefficients(CoefficientMatrix::maximally_mixed(d)), d, d));
    EXPECT_NEAR(sv[0], 1.0 / d, 1e-12);
    for (std::size_t i = 1; i < sv.size(); ++i) EXPECT_NEAR(sv[i], 0.0, 1e-12);
  }
}

TEST(Realign, InvolutionForEqualDimensions) {
  std::mt19937_64 rng(41);
  const ComplexMatrix m = random_matrix(4, 4, rng);
  EXPECT_EQ(max_abs_diff(realign(realign(m, 2, 2), 2, 2), m), 0.0);
  const ComplexMatrix r = realign(random_matrix(6, 6, rng), 2, 3);
  EXPECT_EQ(r.rows(), 4u);
  EXPECT_EQ(r.cols(), 9u);
}

TEST(FlipOperator, SwapAndSelfInverse) {
  const ComplexMatrix swap{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
  EXPECT_EQ(max_abs_diff(flip_operator(2), swap), 0.0);
  for (std::size_t d : {2u, 3u, 4u}) {
    const ComplexMatrix f = flip_operator(d);
    EXPECT_EQ(max_abs_diff(f * f, ComplexMatrix::identity(d * d)), 0.0);
    EXPECT_EQ(hermiticity_defect(f), 0.0);
  }
}

TEST(FlipOperator, RealignmentPermutationsShareSingularValues) {
  std::mt19937_64 rng(43);
  const std::size_t d = 3;
  const ComplexMatrix f = flip_operator(d);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix r = realign(density_from_coefficients(random_coefficients(d, rng)), d, d);
    const auto base = singular_values(r);
    for (const ComplexMatrix& v : {f * r, r * f, f * r * f, r.transpose(), f * r.transpose(),
                                   r.transpose() * f, f * r.transpose() * f}) {
      const auto sv = singular_values(v);
      for (std::size_t i = 0; i < base.size(); ++i) EXPECT_NEAR(sv[i], base[i], 1e-9);
    }
  }
}
