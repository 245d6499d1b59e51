#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "bellq/phase_space.hpp"
#include "bellq/weyl.hpp"

namespace bellq {

struct SamplerConfig {
  std::size_t d = 3;
  std::size_t n_samples = 1;
  std::uint64_t seed = 0;
  /// Coefficients on this coset are pinned to zero.
  std::optional<Coset> zero_coset;
};

/// Throws InvalidConfig if n_samples == 0, d < 2, or zero_coset is not one of all_cosets(d).
void validate(const SamplerConfig& cfg);

using Rng = std::mt19937_64;

/// Name and version of the generator pipeline, recorded in every report.
inline constexpr std::string_view kRngName = "mt19937_64/splitmix64-chunk-v1";

/// Samples are produced in chunks of this size; chunk i draws from
/// Rng(chunk_seed(seed, i)) so the stream does not depend on scheduling.
inline constexpr std::size_t kChunkSize = 4096;

/// splitmix64(seed ^ splitmix64(chunk + 0x9e3779b97f4a7c15)).
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) noexcept;

/// Flat draws on the coefficient simplex: i.i.d. unit exponentials
/// (inverse CDF on 53-bit uniforms) normalized by their sum.
class SimplexSampler {
 public:
  explicit SimplexSampler(const SamplerConfig& cfg);

  CoefficientMatrix draw(Rng& rng) const;

 private:
  std::size_t d_;
  std::vector<std::size_t> free_slots_;
};

/// Deterministic serial walk over all n samples in stream order.
void for_each_sample(const SamplerConfig& cfg,
                     const std::function<void(std::size_t, const CoefficientMatrix&)>& fn);

std::vector<CoefficientMatrix> sample_uniform(const SamplerConfig& cfg);

struct ShareReport {
  std::size_t d = 0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::size_t n_npt = 0;
  std::size_t n_realignment = 0;
  std::size_t n_ppt_ent_detected = 0;  ///< PPT and realignment-detected
  std::size_t n_undetected = 0;        ///< PPT and not detected (includes d = 2 separable)
  double npt_share = 0.0;
  double realignment_share = 0.0;
  double ppt_ent_share = 0.0;
  double undetected_share = 0.0;
  double wall_time = 0.0;  ///< seconds
  std::string_view rng = kRngName;
};

/// Classifies every sample and aggregates the shares. `workers` = 0 picks
/// the hardware concurrency. Counts are identical for any worker count.
ShareReport estimate_shares(const SamplerConfig& cfg, unsigned workers = 0);

struct Proposition1Counts {
  std::size_t ppt_entangled_detected = 0;
  std::size_t npt = 0;
  std::size_t other = 0;
};

/// Classifies qutrit samples with one coset of coefficients pinned to zero.
Proposition1Counts proposition1_check(const SamplerConfig& cfg);

}  // namespace bellq
