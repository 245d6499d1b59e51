#include "bellq/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "bellq/detection.hpp"
#include "bellq/error.hpp"

namespace bellq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_exponential(Rng& rng) {
  // u in [0, 1) with 53 random bits; -log(1 - u) is finite.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return -std::log1p(-u);
}

std::size_t chunk_count(std::size_t n) { return (n + kChunkSize - 1) / kChunkSize; }

template <typename Fn>
void for_chunk(const SamplerConfig& cfg, const SimplexSampler& sampler, std::size_t chunk,
               Fn&& fn) {
  Rng rng(chunk_seed(cfg.seed, chunk));
  const std::size_t begin = chunk * kChunkSize;
  const std::size_t end = std::min(cfg.n_samples, begin + kChunkSize);
  for (std::size_t i = begin; i < end; ++i) fn(i, sampler.draw(rng));
}

}  // namespace

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) noexcept {
  return splitmix64(seed ^ splitmix64(chunk + 0x9e3779b97f4a7c15ULL));
}

void validate(const SamplerConfig& cfg) {
  if (cfg.d < 2) throw Error(ErrorCode::InvalidConfig, "d must be >= 2");
  if (cfg.n_samples == 0) throw Error(ErrorCode::InvalidConfig, "n_samples must be >= 1");
  if (cfg.zero_coset) {
    const auto cosets = all_cosets(cfg.d);
    const bool known = std::any_of(cosets.begin(), cosets.end(), [&](const Coset& c) {
      return c.elements == cfg.zero_coset->elements;
    });
    if (!known || cfg.zero_coset->base.d != cfg.d) {
      throw Error(ErrorCode::InvalidConfig, "zero_coset is not a coset of Z_d^2 for this d");
    }
  }
}

SimplexSampler::SimplexSampler(const SamplerConfig& cfg) : d_(cfg.d) {
  validate(cfg);
  for (std::size_t p = 0; p < d_ * d_; ++p) {
    const PhaseIndex idx{p / d_, p % d_};
    if (!cfg.zero_coset || !cfg.zero_coset->contains(idx)) free_slots_.push_back(p);
  }
}

CoefficientMatrix SimplexSampler::draw(Rng& rng) const {
  std::vector<double> c(d_ * d_, 0.0);
  double total = 0.0;
  for (std::size_t p : free_slots_) {
    c[p] = unit_exponential(rng);
    total += c[p];
  }
  for (std::size_t p : free_slots_) c[p] /= total;
  return {d_, std::move(c)};
}

void for_each_sample(const SamplerConfig& cfg,
                     const std::function<void(std::size_t, const CoefficientMatrix&)>& fn) {
  const SimplexSampler sampler(cfg);
  for (std::size_t chunk = 0; chunk < chunk_count(cfg.n_samples); ++chunk)
    for_chunk(cfg, sampler, chunk, fn);
}

std::vector<CoefficientMatrix> sample_uniform(const SamplerConfig& cfg) {
  std::vector<CoefficientMatrix> out;
  out.reserve(cfg.n_samples);
  for_each_sample(cfg, [&](std::size_t, const CoefficientMatrix& c) { out.push_back(c); });
  return out;
}

ShareReport estimate_shares(const SamplerConfig& cfg, unsigned workers) {
  if (cfg.zero_coset) {
    throw Error(ErrorCode::InvalidConfig, "share estimation samples the full simplex");
  }
  const SimplexSampler sampler(cfg);
  const auto start = std::chrono::steady_clock::now();

  struct Counts {
    std::size_t npt = 0, realignment = 0, ppt_ent = 0, undetected = 0;
  };
  const std::size_t chunks = chunk_count(cfg.n_samples);
  std::vector<Counts> per_chunk(chunks);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t chunk = next++; chunk < chunks; chunk = next++) {
      Counts& counts = per_chunk[chunk];
      for_chunk(cfg, sampler, chunk, [&](std::size_t, const CoefficientMatrix& c) {
        const ClassificationRecord rec = classify(c);
        counts.realignment += rec.realignment_detected;
        switch (rec.label) {
          case Label::NptEntangled: ++counts.npt; break;
          case Label::PptEntangledDetected: ++counts.ppt_ent; break;
          case Label::Undetected:
          case Label::Separable: ++counts.undetected; break;
        }
      });
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  ShareReport rep;
  rep.d = cfg.d;
  rep.n_samples = cfg.n_samples;
  rep.seed = cfg.seed;
  for (const Counts& c : per_chunk) {
    rep.n_npt += c.npt;
    rep.n_realignment += c.realignment;
    rep.n_ppt_ent_detected += c.ppt_ent;
    rep.n_undetected += c.undetected;
  }
  const double n = static_cast<double>(cfg.n_samples);
  rep.npt_share = static_cast<double>(rep.n_npt) / n;
  rep.realignment_share = static_cast<double>(rep.n_realignment) / n;
  rep.ppt_ent_share = static_cast<double>(rep.n_ppt_ent_detected) / n;
  rep.undetected_share = static_cast<double>(rep.n_undetected) / n;
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Proposition1Counts proposition1_check(const SamplerConfig& cfg) {
  if (cfg.d != 3) throw Error(ErrorCode::WrongDimension, "zero-coset check is for d = 3");
  if (!cfg.zero_coset) throw Error(ErrorCode::InvalidConfig, "zero_coset is required");
  Proposition1Counts counts;
  for_each_sample(cfg, [&](std::size_t, const CoefficientMatrix& c) {
    switch (classify(c).label) {
      case Label::PptEntangledDetected: ++counts.ppt_entangled_detected; break;
      case Label::NptEntangled: ++counts.npt; break;
      default: ++counts.other; break;
    }
  });
  return counts;
}

}  // namespace bellq
