#include "cluster_dispatch/genetic.hpp"

#include <algorithm>
#include <cmath>

#include "cluster_dispatch/errors.hpp"
#include "cluster_dispatch/rng.hpp"

namespace cluster_dispatch {

void GAParams::validate() const {
    if (population < 2)
        throw ConfigError("GA population must be >= 2, got " + std::to_string(population));
    if (generations < 1)
        throw ConfigError("GA generation count must be >= 1");
    if (crossover_prob < 0.0 || crossover_prob > 1.0 || mutation_prob < 0.0 || mutation_prob > 1.0)
        throw ConfigError("GA probabilities must be in [0,1]");
    if (tournament < 1 || tournament > population)
        throw ConfigError("GA tournament size must be in [1, population]");
    if (elitism < 0 || elitism >= population)
        throw ConfigError("GA elitism must be in [0, population)");
}

namespace {

double clamp_gene(double v, const GeneBox& box) {
    return std::clamp(v, box.lo, box.hi);
}

void evaluate_population(const std::vector<std::vector<double>>& pop, const FitnessFn& fitness,
                         std::vector<double>& out, EvalMode mode) {
    const long n = static_cast<long>(pop.size());
    if (mode == EvalMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i)
            out[i] = fitness(pop[i]);
    } else {
        for (long i = 0; i < n; ++i)
            out[i] = fitness(pop[i]);
    }
}

std::size_t best_index(const std::vector<double>& fitness) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < fitness.size(); ++i)
        if (fitness[i] < fitness[best]) best = i;
    return best;
}

} // namespace

GAResult run_ga(const std::vector<GeneBox>& boxes, const FitnessFn& fitness,
                const GAParams& params, const std::vector<std::vector<double>>& seeded_individuals) {
    params.validate();
    const std::size_t genes = boxes.size();
    const std::size_t pop_size = static_cast<std::size_t>(params.population);
    Rng rng(derive_seed(params.seed, 0x6741));

    std::vector<std::vector<double>> pop(pop_size, std::vector<double>(genes));
    for (std::size_t i = 0; i < pop_size; ++i) {
        if (i < seeded_individuals.size()) {
            const auto& seed_ind = seeded_individuals[i];
            for (std::size_t g = 0; g < genes; ++g)
                pop[i][g] = clamp_gene(g < seed_ind.size() ? seed_ind[g] : 0.0, boxes[g]);
        } else {
            for (std::size_t g = 0; g < genes; ++g)
                pop[i][g] = rng.uniform(boxes[g].lo, boxes[g].hi);
        }
    }

    std::vector<double> fit(pop_size);
    std::vector<std::vector<double>> next(pop_size, std::vector<double>(genes));
    GAResult result;
    result.best_fitness = 0.0;

    if (genes == 0) {
        result.best_fitness = fitness(std::span<const double>{});
        result.evaluations = 1;
        return result;
    }

    auto tournament_pick = [&]() -> std::size_t {
        std::size_t winner = rng.uniform_index(pop_size);
        for (int t = 1; t < params.tournament; ++t) {
            const std::size_t challenger = rng.uniform_index(pop_size);
            if (fit[challenger] < fit[winner]) winner = challenger;
        }
        return winner;
    };

    for (int gen = 0; gen < params.generations; ++gen) {
        evaluate_population(pop, fitness, fit, params.eval_mode);
        result.evaluations += static_cast<long>(pop_size);

        const std::size_t elite = best_index(fit);
        if (gen == 0 || fit[elite] < result.best_fitness) {
            result.best_fitness = fit[elite];
            result.best = pop[elite];
        }
        if (gen + 1 == params.generations) break;

        std::size_t produced = 0;
        for (int e = 0; e < params.elitism && produced < pop_size; ++e)
            next[produced++] = pop[elite];
        while (produced < pop_size) {
            const auto& pa = pop[tournament_pick()];
            const auto& pb = pop[tournament_pick()];
            auto& child = next[produced];
            if (rng.bernoulli(params.crossover_prob)) {
                for (std::size_t g = 0; g < genes; ++g)
                    child[g] = rng.bernoulli(0.5) ? pa[g] : pb[g];
            } else {
                child = pa;
            }
            for (std::size_t g = 0; g < genes; ++g) {
                if (rng.bernoulli(params.mutation_prob)) {
                    const double sigma = params.mutation_scale * (boxes[g].hi - boxes[g].lo);
                    child[g] = clamp_gene(child[g] + rng.normal(0.0, sigma), boxes[g]);
                }
            }
            ++produced;
        }
        pop.swap(next);
    }

    return result;
}

} // namespace cluster_dispatch
