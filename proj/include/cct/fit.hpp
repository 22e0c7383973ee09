#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "cct/predictions.hpp"

namespace cct {

// Stateless counter-based generator: the k-th value depends only on
// (seed, stream, k), so parallel streams are reproducible regardless of
// scheduling.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double uniform();  // [0, 1)

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

struct FitConfig {
    int seeds = 16;        // multi-start count
    int iterations = 200;  // simplex iterations per start

    enum class Objective : unsigned char { count, soft_margin };
    Objective objective = Objective::soft_margin;

    double eta_min = 1.0;  // hard lower bound (exclusive); option 2
    bool require_eq15 = false;
    std::uint64_t rng_seed = 0;

    // Log-uniform search box.
    struct Range {
        double lo, hi;
    };
    Range alpha_range{1e-2, 1e2};
    Range beta_range{1e-2, 1e2};
    Range gamma_range{1e-2, 1e2};
    double eta_max = 10.0;

    std::uint64_t max_evaluations = 0;  // 0 = unlimited

    StrengthFunction strength;  // defaults to exp:lambda=0.01
    ChargeSource charge = ChargeSource::table;

    void validate() const;  // throws Error("fit") on bad ranges
};

// count mode: number of strictly satisfied claims. soft-margin mode:
// sum over claims of min(0, (rhs - lhs)/(rhs + lhs + eps)), i.e. 0 when all
// claims hold; an eq15 violation subtracts its own normalized margins when
// require_eq15 is set.
double fit_objective(const ModelParams& p, const FitConfig& cfg, const CodonUsage& usage,
                     const ExperimentalDataset& data);

struct FitResult {
    // False when require_eq15 is set and no evaluated point satisfied the
    // strict chain within budget; `best` is absent in that case.
    bool found = false;
    std::optional<ModelParams> best;

    double soft_margin = 0.0;  // at best
    int satisfied_count = 0;
    int total_claims = 0;
    std::vector<std::string> violated;  // labels of unsatisfied claims at best
    Eq15Result eq15;                    // at best

    std::uint64_t evaluations = 0;
    // (evaluation index, violation penalty of best-so-far); nonincreasing.
    std::vector<std::pair<std::uint64_t, double>> trace;
};

FitResult search(const FitConfig& cfg, const CodonUsage& usage,
                 const ExperimentalDataset& data);

}  // namespace cct
