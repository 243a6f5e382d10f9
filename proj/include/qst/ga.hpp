#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "qst/chain.hpp"
#include "qst/spectra.hpp"

namespace qst {

/// Genetic-algorithm settings.
struct GAConfig {
    int n = 5;
    int p = 3;
    int generations = 200;
    int population = 1024;
    double mu_initial = 0.20;
    double mu_final = 0.01;
    double window = 50.0;           // t * J_max
    double weight_fidelity = 10.0;  // A
    double weight_spectral = 1.0;   // B
    std::uint64_t seed = 1;
    double onsite_min = 0.0;
    double onsite_max = 5.0;
    double coupling = 1.0;          // uniform |J|
    double mutation_width = 0.05;   // fraction of the on-site range at mu = mu_initial
    bool parabolic_seed = false;

    std::size_t samples() const;
    /// Throws ContractError on an inconsistent configuration.
    void validate() const;
};

/// The ceil(N/2) free on-site energies of a mirror-symmetric profile.
using Genome = std::vector<double>;

std::vector<double> expand_genome(const Genome& genome, int n);
ChainSpec genome_chain(const Genome& genome, const GAConfig& cfg);

struct FitnessReport {
    double fitness = -std::numeric_limits<double>::infinity();
    double f_max = 0.0;
    double penalty = 0.0;  // upsilon
    double q = 0.0;
    double sigma = 0.0;
    double best_time = 0.0;  // t * J_max at F_max

    bool viable() const { return fitness > -std::numeric_limits<double>::infinity(); }
};

struct GAIndividual {
    Genome genome;
    FitnessReport report;
};

/// Top gap over the geometric mean of the remaining gaps.
double q_factor(const Spectrum& s);

/// Population standard deviation of the N-2 gaps below the top level pair.
double sigma_lambda(const Spectrum& s);

/// Linear schedule mu(g) = mu_i - g (mu_i - mu_f) / G.
double mutation_rate(int generation, const GAConfig& cfg);

/// Normalised score f = (A F - B u) / (A F + B u) with u = |Q - 1/p| + sigma.
/// Numerical failure yields a non-viable report (fitness = -inf).
FitnessReport fitness(const Genome& genome, const GAConfig& cfg);

/// Score from precomputed ingredients; 0 when A F + B u vanishes.
double combine_fitness(double f_max, double penalty, const GAConfig& cfg);

struct GenerationRecord {
    int generation = 0;
    double best_f = 0.0;
    double best_fmax = 0.0;
    double best_q = 0.0;
    double best_sigma = 0.0;
};

struct PopulationSummary {
    std::size_t size = 0;
    std::size_t viable = 0;
    double mean_fitness = 0.0;
    double worst_fitness = 0.0;
    double best_fitness = 0.0;
};

struct GAReport {
    GAIndividual best;
    std::vector<GenerationRecord> history;  // generation 0 (initial) .. G
    PopulationSummary final_population;
    bool symmetry_held = true;  // every expanded genome palindromic
};

/// Rank selection from the top half, 50/50 uniform crossover, per-gene
/// Gaussian mutation with probability mu(g), single elite. Deterministic in
/// cfg.seed regardless of how many threads evaluate fitness.
GAReport evolve(const GAConfig& cfg);

/// Same, starting from a caller-supplied population (size must equal
/// cfg.population).
GAReport evolve(const GAConfig& cfg, std::vector<Genome> initial);

}  // namespace qst
