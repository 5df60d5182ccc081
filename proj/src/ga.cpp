// Copyright 2026 The Pedscan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pedscan/ga.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pedscan {

namespace {

// Cumulative histogram; fitness for any threshold becomes O(1).
struct Prefix {
  std::array<std::int64_t, 256> count{};
  std::array<std::int64_t, 256> sum{};
  std::int64_t total_count = 0;
  std::int64_t total_sum = 0;
};

Prefix build_prefix(const ThermalImage& image) {
  std::array<std::int64_t, 256> hist{};
  for (std::uint8_t v : image.intensities) ++hist[v];
  Prefix p;
  std::int64_t c = 0, s = 0;
  for (int v = 0; v < 256; ++v) {
    c += hist[v];
    s += hist[v] * v;
    p.count[v] = c;
    p.sum[v] = s;
  }
  p.total_count = c;
  p.total_sum = s;
  return p;
}

FitnessStats stats_at(const Prefix& p, int threshold) {
  FitnessStats st;
  st.num_b = p.count[threshold];
  st.sum_b = p.sum[threshold];
  st.num_f = p.total_count - st.num_b;
  st.sum_f = p.total_sum - st.sum_b;
  st.m_f = st.num_f > 0 ? static_cast<double>(st.sum_f) / static_cast<double>(st.num_f) : 0.0;
  st.m_b = st.num_b > 0 ? static_cast<double>(st.sum_b) / static_cast<double>(st.num_b) : 0.0;
  if (st.num_f == 0 || st.num_b == 0) {
    st.fitness = 0.0;
  } else {
    double diff = st.m_f - st.m_b;
    // The count product can exceed 32 bits long before the double product does.
    std::uint64_t pairs = static_cast<std::uint64_t>(st.num_f) * static_cast<std::uint64_t>(st.num_b);
    st.fitness = static_cast<double>(pairs) * diff * diff;
  }
  return st;
}

// Better fitness wins; equal fitness resolves to the smaller threshold.
bool improves(double fit, int thr, double best_fit, int best_thr) {
  return fit > best_fit || (fit == best_fit && thr < best_thr);
}

int roulette_pick(const std::vector<double>& fits, double total, SplitMix64& rng) {
  int n = static_cast<int>(fits.size());
  if (total <= 0.0) return static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n)));
  double r = rng.next_unit() * total;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += fits[i];
    if (r < acc) return i;
  }
  return n - 1;
}

std::uint8_t mutate(std::uint8_t v, double rate, SplitMix64& rng) {
  for (int bit = 0; bit < 8; ++bit) {
    if (rng.next_unit() < rate) v = static_cast<std::uint8_t>(v ^ (1u << bit));
  }
  return v;
}

}  // namespace

void GaConfig::validate() const {
  if (population_size < 2) throw ConfigError("population_size must be at least 2");
  if (max_generations < 1) throw ConfigError("max_generations must be at least 1");
  if (cross_rate < 0.0 || cross_rate > 1.0) throw ConfigError("cross_rate must be in [0, 1]");
  if (mutation_rate < 0.0 || mutation_rate > 1.0)
    throw ConfigError("mutation_rate must be in [0, 1]");
  if (rate_reduction_factor <= 0.0 || rate_reduction_factor >= 1.0)
    throw ConfigError("rate_reduction_factor must be in (0, 1)");
  if (chromosome_bits != 8) throw ConfigError("chromosome_bits must be 8");
}

FitnessStats fitness(const ThermalImage& image, int threshold) {
  if (threshold < 0 || threshold > 255) throw ConfigError("threshold must be in [0, 255]");
  return stats_at(build_prefix(image), threshold);
}

GaResult exhaustive_best_threshold(const ThermalImage& image) {
  Prefix p = build_prefix(image);
  GaResult best;
  best.threshold = 0;
  best.stats = stats_at(p, 0);
  for (int t = 1; t < 256; ++t) {
    FitnessStats st = stats_at(p, t);
    if (st.fitness > best.stats.fitness) {
      best.threshold = t;
      best.stats = st;
    }
  }
  best.generations_run = 0;
  return best;
}

GaResult evolve(const ThermalImage& image, const GaConfig& config) {
  config.validate();
  Prefix prefix = build_prefix(image);
  SplitMix64 rng(config.rng_seed);

  const int pop_size = config.population_size;
  std::vector<std::uint8_t> pop(pop_size);
  for (auto& c : pop) c = static_cast<std::uint8_t>(rng.next_below(256));

  double cross = config.cross_rate;
  double mut = config.mutation_rate;
  const int half = (config.max_generations + 1) / 2;

  GaResult result;
  double best_fit = -1.0;
  int best_thr = 256;
  std::vector<double> fits(pop_size);

  for (int gen = 1; gen <= config.max_generations; ++gen) {
    double total = 0.0;
    for (int i = 0; i < pop_size; ++i) {
      FitnessStats st = stats_at(prefix, pop[i]);
      fits[i] = st.fitness;
      total += st.fitness;
      if (improves(st.fitness, pop[i], best_fit, best_thr)) {
        best_fit = st.fitness;
        best_thr = pop[i];
      }
    }
    result.best_fitness_history.push_back(best_fit);

    if (gen == half) {
      cross *= config.rate_reduction_factor;
      mut *= config.rate_reduction_factor;
    }
    if (gen == config.max_generations) break;

    std::vector<std::uint8_t> next;
    next.reserve(pop_size);
    next.push_back(static_cast<std::uint8_t>(best_thr));  // elitism
    while (static_cast<int>(next.size()) < pop_size) {
      std::uint8_t a = pop[roulette_pick(fits, total, rng)];
      std::uint8_t b = pop[roulette_pick(fits, total, rng)];
      if (rng.next_unit() < cross) {
        int cut = 1 + static_cast<int>(rng.next_below(7));
        std::uint8_t lo = static_cast<std::uint8_t>((1u << cut) - 1);
        std::uint8_t c1 = static_cast<std::uint8_t>((a & ~lo) | (b & lo));
        std::uint8_t c2 = static_cast<std::uint8_t>((b & ~lo) | (a & lo));
        a = c1;
        b = c2;
      }
      next.push_back(mutate(a, mut, rng));
      if (static_cast<int>(next.size()) < pop_size) next.push_back(mutate(b, mut, rng));
    }
    pop = std::move(next);
  }

  result.threshold = best_thr;
  result.stats = stats_at(prefix, best_thr);
  result.generations_run = config.max_generations;
  return result;
}

BinaryMask segment(const ThermalImage& image, int threshold) {
  if (threshold < 0 || threshold > 255) throw ConfigError("threshold must be in [0, 255]");
  BinaryMask mask = make_mask(image.width, image.height);
  for (std::size_t i = 0; i < image.pixel_count(); ++i)
    mask.bits[i] = image.intensities[i] > threshold ? 1 : 0;
  return mask;
}

}  // namespace pedscan
