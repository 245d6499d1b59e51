#pragma once

#include <cstddef>
#include <vector>

#include "bellq/linalg.hpp"
#include "bellq/weyl.hpp"

namespace bellq {

/// An order-d subgroup of Z_d x Z_d. Elements are kept sorted; (0,0) is first.
struct Subgroup {
  std::size_t d = 0;
  std::vector<PhaseIndex> elements;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

/// A translate S + shift of a subgroup. `shift` is the lexicographically
/// smallest element, so two cosets compare equal iff they are the same set.
struct Coset {
  Subgroup base;
  PhaseIndex shift;
  std::vector<PhaseIndex> elements;

  bool contains(PhaseIndex p) const;
  friend bool operator==(const Coset&, const Coset&) = default;
};

/// The d parallel cosets of one subgroup; together they partition Z_d x Z_d.
struct Striation {
  Subgroup generator;
  std::vector<Coset> cosets;
};

/// Permutation of the d^2 phase-space points, indexed by k*d + l.
using PointPermutation = std::vector<std::size_t>;

/// All order-d subgroups, sorted by their sorted element lists.
///
/// Composite d is handled by brute force over one- and two-generator spans,
/// so non-cyclic subgroups (e.g. {0,2} x {0,2} for d = 4) are included.
std::vector<Subgroup> enumerate_subgroups(std::size_t d);

Striation striation(const Subgroup& s);

/// Coset of `s` through `point`, canonicalized.
Coset make_coset(const Subgroup& s, PhaseIndex point);

/// Every coset of every order-d subgroup, in canonical order: subgroups as
/// returned by enumerate_subgroups, cosets of one subgroup by representative.
/// CLI coset indices address this list.
std::vector<Coset> all_cosets(std::size_t d);

/// Subgroup state: c = 1/d on the coset, 0 elsewhere.
CoefficientMatrix subgroup_state(const Coset& ell);

/// Coset projectors sum_{(i,j) in ell} P_{i,j} for each coset of the striation.
std::vector<ComplexMatrix> striation_projectors(const Subgroup& s);

/// All affine maps x -> A x + b on Z_d^2 with A in GL(2, d), as point
/// permutations. Only defined for prime d.
std::vector<PointPermutation> coset_preserving_maps(std::size_t d);

/// c'[pi(x)] = c[x].
CoefficientMatrix permute_coefficients(const CoefficientMatrix& c, const PointPermutation& pi);

bool is_prime(std::size_t n) noexcept;

}  // namespace bellq
