#include "bellq/phase_space.hpp"

#include <algorithm>
#include <set>

#include "bellq/error.hpp"

namespace bellq {

namespace {

void require_dim(std::size_t d) {
  if (d < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "dimension must be >= 2, got " + std::to_string(d));
  }
}

// Closure of {0, g1, g2} under addition mod d.
std::vector<PhaseIndex> span(PhaseIndex g1, PhaseIndex g2, std::size_t d) {
  std::set<PhaseIndex> seen{{0, 0}};
  std::vector<PhaseIndex> frontier{{0, 0}};
  while (!frontier.empty()) {
    const PhaseIndex p = frontier.back();
    frontier.pop_back();
    for (const PhaseIndex g : {g1, g2}) {
      const PhaseIndex q = add_mod(p, g, d);
      if (seen.insert(q).second) frontier.push_back(q);
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

bool Coset::contains(PhaseIndex p) const {
  return std::binary_search(elements.begin(), elements.end(), p);
}

bool is_prime(std::size_t n) noexcept {
  if (n < 2) return false;
  for (std::size_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::vector<Subgroup> enumerate_subgroups(std::size_t d) {
  require_dim(d);
  std::set<std::vector<PhaseIndex>> found;
  for (std::size_t a = 0; a < d * d; ++a)
    for (std::size_t b = a; b < d * d; ++b) {
      auto elems = span({a / d, a % d}, {b / d, b % d}, d);
      if (elems.size() == d) found.insert(std::move(elems));
    }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& elems : found) out.push_back({d, elems});
  return out;
}

Coset make_coset(const Subgroup& s, PhaseIndex point) {
  std::vector<PhaseIndex> elems;
  elems.reserve(s.elements.size());
  for (const PhaseIndex& e : s.elements) elems.push_back(add_mod(e, point, s.d));
  std::sort(elems.begin(), elems.end());
  const PhaseIndex rep = elems.front();
  return {s, rep, std::move(elems)};
}

Striation striation(const Subgroup& s) {
  Striation out{s, {}};
  std::set<PhaseIndex> covered;
  for (std::size_t k = 0; k < s.d; ++k)
    for (std::size_t l = 0; l < s.d; ++l) {
      if (covered.contains({k, l})) continue;
      Coset c = make_coset(s, {k, l});
      covered.insert(c.elements.begin(), c.elements.end());
      out.cosets.push_back(std::move(c));
    }
  // Row-major scan meets each coset first at its smallest element, so the
  // list is already ordered by representative.
  return out;
}

std::vector<Coset> all_cosets(std::size_t d) {
  std::vector<Coset> out;
  for (const Subgroup& s : enumerate_subgroups(d)) {
    for (Coset& c : striation(s).cosets) {
      const bool dup = std::any_of(out.begin(), out.end(),
                                   [&](const Coset& o) { return o.elements == c.elements; });
      if (!dup) out.push_back(std::move(c));
    }
  }
  return out;
}

CoefficientMatrix subgroup_state(const Coset& ell) {
  const std::size_t d = ell.base.d;
  std::vector<double> c(d * d, 0.0);
  for (const PhaseIndex& p : ell.elements) c[p.k * d + p.l] = 1.0 / static_cast<double>(d);
  return {d, std::move(c)};
}

std::vector<ComplexMatrix> striation_projectors(const Subgroup& s) {
  std::vector<ComplexMatrix> out;
  for (const Coset& ell : striation(s).cosets) {
    ComplexMatrix proj(s.d * s.d, s.d * s.d);
    for (const PhaseIndex& p : ell.elements) proj += bell_projector(s.d, p);
    out.push_back(std::move(proj));
  }
  return out;
}

std::vector<PointPermutation> coset_preserving_maps(std::size_t d) {
  require_dim(d);
  if (!is_prime(d)) {
    throw Error(ErrorCode::NonPrimeDimension,
                "affine symmetries are only defined for prime d, got " + std::to_string(d));
  }
  std::vector<PointPermutation> maps;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t e = 0; e < d; ++e) {
          if ((a * e + d * d - (b * c) % d) % d == 0) continue;  // singular over Z_d
          for (std::size_t sk = 0; sk < d; ++sk)
            for (std::size_t sl = 0; sl < d; ++sl) {
              PointPermutation pi(d * d);
              for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l) {
                  const std::size_t nk = (a * k + b * l + sk) % d;
                  const std::size_t nl = (c * k + e * l + sl) % d;
                  pi[k * d + l] = nk * d + nl;
                }
              maps.push_back(std::move(pi));
            }
        }
  return maps;
}

CoefficientMatrix permute_coefficients(const CoefficientMatrix& c, const PointPermutation& pi) {
  const std::size_t n = c.dim() * c.dim();
  if (pi.size() != n) throw Error(ErrorCode::DimensionMismatch, "permutation size mismatch");
  std::vector<double> out(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) out[pi[x]] = c.values()[x];
  return {c.dim(), std::move(out)};
}

}  // namespace bellq
