#include "qst/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "qst/dynamics.hpp"
#include "qst/errors.hpp"
#include "qst/tridiagonal_eigen.hpp"

namespace qst {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream per (generation, slot) so evaluation order never
// touches the random sequence.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t generation, std::uint64_t slot) {
    return std::mt19937_64(splitmix64(splitmix64(splitmix64(seed) ^ generation) ^ slot));
}

void evaluate_all(std::vector<GAIndividual>& pop, const GAConfig& cfg, std::size_t first) {
    const std::size_t count = pop.size() - first;
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), std::max<std::size_t>(count, 1));
    auto work = [&](std::size_t w) {
        for (std::size_t i = first + w; i < pop.size(); i += workers) pop[i].report = fitness(pop[i].genome, cfg);
    };
    if (workers <= 1) {
        work(0);
        return;
    }
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
}

bool palindromic(const Genome& g, int n) {
    const auto e = expand_genome(g, n);
    return std::equal(e.begin(), e.end(), e.rbegin());
}

std::vector<std::size_t> ranking(const std::vector<GAIndividual>& pop) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pop[a].report.fitness > pop[b].report.fitness;
    });
    return order;
}

GenerationRecord record(int g, const GAIndividual& best) {
    return {g, best.report.fitness, best.report.f_max, best.report.q, best.report.sigma};
}

}  // namespace

std::size_t GAConfig::samples() const {
    return static_cast<std::size_t>(std::llround(window * kSamplesPerUnit)) + 1;
}

void GAConfig::validate() const {
    if (n < 3) throw ContractError("GA needs N >= 3 for the Q-factor");
    if (p < 1 || p % 2 == 0) throw ContractError("pinch p must be odd and positive");
    if (generations < 0) throw ContractError("generations must be non-negative");
    if (population < 2 || population % 2 != 0) throw ContractError("population must be even and >= 2");
    if (!(mu_initial >= mu_final && mu_final >= 0.0 && mu_initial <= 1.0)) {
        throw ContractError("mutation rates need 1 >= mu_initial >= mu_final >= 0");
    }
    if (!(weight_fidelity >= 0.0 && weight_spectral >= 0.0)) throw ContractError("weights A, B must be >= 0");
    if (!(window > 0.0)) throw ContractError("fidelity window must be positive");
    if (!(onsite_max > onsite_min)) throw ContractError("on-site bounds must satisfy min < max");
    if (!(coupling > 0.0)) throw ContractError("uniform coupling must be positive");
    if (!(mutation_width >= 0.0)) throw ContractError("mutation width must be >= 0");
}

std::vector<double> expand_genome(const Genome& genome, int n) {
    const auto half = static_cast<std::size_t>((n + 1) / 2);
    if (genome.size() != half) {
        throw StructuralError("genome for N=" + std::to_string(n) + " needs " + std::to_string(half) + " genes");
    }
    std::vector<double> onsite(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < half; ++i) {
        onsite[i] = genome[i];
        onsite[static_cast<std::size_t>(n) - 1 - i] = genome[i];
    }
    return onsite;
}

ChainSpec genome_chain(const Genome& genome, const GAConfig& cfg) {
    return ChainSpec(expand_genome(genome, cfg.n), std::vector<double>(static_cast<std::size_t>(cfg.n - 1), -cfg.coupling),
                     SignConvention::negative_offdiag);
}

double q_factor(const Spectrum& s) {
    const Eigen::Index n = s.size();
    if (n < 3) throw ContractError("Q-factor needs at least 3 levels");
    const Eigen::VectorXd gaps = s.gaps();
    double log_sum = 0.0;
    for (Eigen::Index k = 0; k + 1 < gaps.size(); ++k) {
        if (!(gaps(k) > 0.0)) throw ContractError("Q-factor undefined for a zero gap");
        log_sum += std::log(gaps(k));
    }
    if (!(gaps(n - 2) > 0.0)) throw ContractError("Q-factor undefined for a zero gap");
    return gaps(n - 2) / std::exp(log_sum / static_cast<double>(n - 2));
}

double sigma_lambda(const Spectrum& s) {
    if (s.size() < 3) throw ContractError("sigma_lambda needs at least 3 levels");
    const Eigen::VectorXd lower = s.gaps().head(s.size() - 2);
    const double mean = lower.mean();
    return std::sqrt((lower.array() - mean).square().mean());
}

double mutation_rate(int generation, const GAConfig& cfg) {
    if (generation < 0 || generation > cfg.generations) {
        throw ContractError("generation " + std::to_string(generation) + " outside [0, G]");
    }
    if (cfg.generations == 0) return cfg.mu_initial;
    return cfg.mu_initial - generation * (cfg.mu_initial - cfg.mu_final) / cfg.generations;
}

double combine_fitness(double f_max, double penalty, const GAConfig& cfg) {
    const double num = cfg.weight_fidelity * f_max - cfg.weight_spectral * penalty;
    const double den = cfg.weight_fidelity * f_max + cfg.weight_spectral * penalty;
    return den > 0.0 ? num / den : 0.0;
}

FitnessReport fitness(const Genome& genome, const GAConfig& cfg) {
    FitnessReport rep;
    try {
        const auto es = eigendecompose(genome_chain(genome, cfg));
        const Spectrum spec(es.values);
        rep.q = q_factor(spec);
        rep.sigma = sigma_lambda(spec);
        rep.penalty = std::abs(rep.q - 1.0 / cfg.p) + rep.sigma;
        const Peak best = max_fidelity(es, cfg.coupling, cfg.window, cfg.samples());
        rep.f_max = best.fidelity;
        rep.best_time = best.time;
        rep.fitness = combine_fitness(rep.f_max, rep.penalty, cfg);
        if (!std::isfinite(rep.fitness)) rep.fitness = -std::numeric_limits<double>::infinity();
    } catch (const Error&) {
        rep.fitness = -std::numeric_limits<double>::infinity();
    }
    return rep;
}

GAReport evolve(const GAConfig& cfg) {
    cfg.validate();
    const int half = (cfg.n + 1) / 2;
    std::vector<Genome> initial(static_cast<std::size_t>(cfg.population), Genome(static_cast<std::size_t>(half)));
    for (std::size_t i = 0; i < initial.size(); ++i) {
        auto rng = stream(cfg.seed, 0, i);
        std::uniform_real_distribution<double> uni(cfg.onsite_min, cfg.onsite_max);
        for (double& gene : initial[i]) gene = uni(rng);
    }
    if (cfg.parabolic_seed) {
        const double centre = 0.5 * (cfg.n - 1);
        for (int i = 0; i < half; ++i) {
            const double x = centre > 0 ? (i - centre) / centre : 0.0;
            initial[0][static_cast<std::size_t>(i)] = cfg.onsite_min + 0.5 * (cfg.onsite_max - cfg.onsite_min) * x * x;
        }
    }
    return evolve(cfg, std::move(initial));
}

GAReport evolve(const GAConfig& cfg, std::vector<Genome> initial) {
    cfg.validate();
    if (initial.size() != static_cast<std::size_t>(cfg.population)) {
        throw StructuralError("initial population size differs from config");
    }
    const std::size_t pop_size = initial.size();
    std::vector<GAIndividual> pop(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
        expand_genome(initial[i], cfg.n);
        pop[i].genome = std::move(initial[i]);
    }
    evaluate_all(pop, cfg, 0);

    GAReport report;
    auto order = ranking(pop);
    report.history.push_back(record(0, pop[order[0]]));
    const double range = cfg.onsite_max - cfg.onsite_min;

    for (int g = 1; g <= cfg.generations; ++g) {
        std::size_t viable = 0;
        for (std::size_t idx : order) viable += pop[idx].report.viable() ? 1 : 0;
        const std::size_t pool = std::max<std::size_t>(1, std::min(pop_size / 2, viable));

        const double mu = mutation_rate(g, cfg);
        const double width = cfg.mu_initial > 0.0 ? cfg.mutation_width * range * mu / cfg.mu_initial : 0.0;

        std::vector<GAIndividual> next(pop_size);
        next[0] = pop[order[0]];
        for (std::size_t slot = 1; slot < pop_size; slot += 2) {
            auto rng = stream(cfg.seed, static_cast<std::uint64_t>(g), slot);
            std::uniform_int_distribution<std::size_t> pick(0, pool - 1);
            const std::size_t a = pick(rng);
            std::size_t b = pick(rng);
            if (pool > 1) {
                while (b == a) b = pick(rng);
            }
            const Genome& pa = pop[order[a]].genome;
            const Genome& pb = pop[order[b]].genome;
            Genome c1(pa.size()), c2(pa.size());
            std::bernoulli_distribution coin(0.5);
            for (std::size_t k = 0; k < pa.size(); ++k) {
                const bool from_a = coin(rng);
                c1[k] = from_a ? pa[k] : pb[k];
                c2[k] = from_a ? pb[k] : pa[k];
            }
            std::bernoulli_distribution mutate(mu);
            std::normal_distribution<double> kick(0.0, 1.0);
            for (Genome* c : {&c1, &c2}) {
                for (double& gene : *c) {
                    if (mutate(rng)) gene = std::clamp(gene + width * kick(rng), cfg.onsite_min, cfg.onsite_max);
                }
            }
            next[slot].genome = std::move(c1);
            if (slot + 1 < pop_size) next[slot + 1].genome = std::move(c2);
        }
        evaluate_all(next, cfg, 1);
        pop = std::move(next);
        for (const auto& ind : pop) report.symmetry_held = report.symmetry_held && palindromic(ind.genome, cfg.n);
        order = ranking(pop);
        report.history.push_back(record(g, pop[order[0]]));
    }

    report.best = pop[order[0]];
    auto& summary = report.final_population;
    summary.size = pop_size;
    summary.best_fitness = pop[order[0]].report.fitness;
    summary.worst_fitness = pop[order.back()].report.fitness;
    double sum = 0.0;
    for (const auto& ind : pop) {
        if (ind.report.viable()) {
            ++summary.viable;
            sum += ind.report.fitness;
        }
    }
    summary.mean_fitness = summary.viable ? sum / static_cast<double>(summary.viable) : 0.0;
    return report;
}

}  // namespace qst
