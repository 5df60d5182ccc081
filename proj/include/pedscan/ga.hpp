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

#ifndef PEDSCAN_GA_HPP_
#define PEDSCAN_GA_HPP_

#include <cstdint>
#include <vector>

#include "pedscan/image.hpp"

namespace pedscan {

// Genetic threshold search. A chromosome is one 8-bit threshold; fitness is
// the between-class separation num_f * num_b * (m_f - m_b)^2, where the
// foreground class is every pixel with intensity strictly above the threshold.
struct GaConfig {
  int population_size = 30;
  double cross_rate = 0.8;
  double mutation_rate = 0.02;
  int max_generations = 50;
  double rate_reduction_factor = 0.5;  // applied to both rates once, halfway
  int chromosome_bits = 8;
  std::uint64_t rng_seed = 0;

  void validate() const;  // throws ConfigError
};

struct FitnessStats {
  std::int64_t num_f = 0;
  std::int64_t num_b = 0;
  std::int64_t sum_f = 0;
  std::int64_t sum_b = 0;
  double m_f = 0.0;  // 0 when the class is empty
  double m_b = 0.0;
  double fitness = 0.0;
};

struct GaResult {
  int threshold = 0;
  FitnessStats stats;
  int generations_run = 0;
  std::vector<double> best_fitness_history;  // best-so-far per generation, non-decreasing
};

FitnessStats fitness(const ThermalImage& image, int threshold);

// Scans all 256 thresholds; ties resolve to the smallest threshold.
GaResult exhaustive_best_threshold(const ThermalImage& image);

// Full GA: random init, roulette-wheel selection, single-point crossover,
// per-bit mutation, elitism, and a one-time rate reduction at generation
// ceil(max_generations / 2). Deterministic for a fixed rng_seed.
GaResult evolve(const ThermalImage& image, const GaConfig& config);

// Foreground = intensity strictly greater than threshold.
BinaryMask segment(const ThermalImage& image, int threshold);

}  // namespace pedscan

#endif  // PEDSCAN_GA_HPP_
