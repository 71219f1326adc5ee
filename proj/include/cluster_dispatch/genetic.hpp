#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cluster_dispatch {

// Serial is the reference path; Parallel evaluates the population with
// OpenMP. Both produce bit-identical results for one seed: all randomness
// lives in the serial part of the generation loop and fitness values are
// written into per-individual slots.
enum class EvalMode { Serial, Parallel };

struct GAParams {
    int population = 100;
    int generations = 300;
    double crossover_prob = 0.9;  // per child, uniform crossover
    double mutation_prob = 0.05;  // per gene
    double mutation_scale = 0.10; // Gaussian sigma as a fraction of the box width
    int tournament = 3;
    int elitism = 1;
    std::uint64_t seed = 1;
    double penalty_weight = -1.0; // currency per kWh of violation; < 0 = 10x buy price
    EvalMode eval_mode = EvalMode::Parallel;

    void validate() const;
};

struct GeneBox {
    double lo = 0.0;
    double hi = 0.0;
};

using FitnessFn = std::function<double(std::span<const double>)>;

struct GAResult {
    std::vector<double> best;
    double best_fitness = 0.0;
    long evaluations = 0;
};

// Elitist real-valued GA: tournament selection, uniform crossover, Gaussian
// mutation clamped to the box. The fitness callback must be pure.
GAResult run_ga(const std::vector<GeneBox>& boxes, const FitnessFn& fitness,
                const GAParams& params,
                const std::vector<std::vector<double>>& seeded_individuals = {});

} // namespace cluster_dispatch
