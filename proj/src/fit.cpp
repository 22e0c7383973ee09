#include "cct/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "cct/errors.hpp"

namespace cct {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream))) {}

std::uint64_t CounterRng::next_u64() {
    return mix64(key_ + counter_++ * 0x9e3779b97f4a7c15ULL);
}

double CounterRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

void FitConfig::validate() const {
    if (seeds < 1) throw Error("fit", "seeds must be positive");
    if (iterations < 0) throw Error("fit", "iterations must be nonnegative");
    if (eta_min < 1.0) throw Error("fit", "eta_min must be >= 1");
    if (!(eta_max > eta_min)) throw Error("fit", "eta range is empty");
    for (const Range& r : {alpha_range, beta_range, gamma_range})
        if (!(r.lo > 0.0) || !(r.hi >= r.lo))
            throw Error("fit", "search ranges must be positive and ordered");
}

namespace {

constexpr double kMarginEps = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

using LogPoint = std::array<double, 4>;  // ln alpha, ln beta, ln gamma, ln eta

struct SearchSpace {
    LogPoint lo, hi;  // eta lower bound is exclusive

    explicit SearchSpace(const FitConfig& cfg)
        : lo{std::log(cfg.alpha_range.lo), std::log(cfg.beta_range.lo),
             std::log(cfg.gamma_range.lo), std::log(cfg.eta_min)},
          hi{std::log(cfg.alpha_range.hi), std::log(cfg.beta_range.hi),
             std::log(cfg.gamma_range.hi), std::log(cfg.eta_max)} {}

    bool contains(const LogPoint& x) const {
        for (int k = 0; k < 3; ++k)
            if (x[static_cast<std::size_t>(k)] < lo[static_cast<std::size_t>(k)] ||
                x[static_cast<std::size_t>(k)] > hi[static_cast<std::size_t>(k)])
                return false;
        return x[3] > lo[3] && x[3] <= hi[3];
    }

    LogPoint sample(CounterRng& rng) const {
        LogPoint x;
        for (int k = 0; k < 3; ++k)
            x[static_cast<std::size_t>(k)] =
                lo[static_cast<std::size_t>(k)] +
                rng.uniform() * (hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)]);
        // (0,1] keeps eta strictly above its open lower bound.
        x[3] = lo[3] + (1.0 - rng.uniform()) * (hi[3] - lo[3]);
        return x;
    }
};

ModelParams params_of(const LogPoint& x) {
    return ModelParams{std::exp(x[0]), std::exp(x[1]), std::exp(x[2]), std::exp(x[3])};
}

// The claims part of the violation penalty plus eq15 margins when required.
struct Evaluation {
    double penalty = kInf;  // minimized by the simplex
    double soft_margin = 0.0;
    int satisfied = 0;
    bool eq15_ok = false;
    bool hard_feasible = false;
};

class ObjectiveFn {
public:
    ObjectiveFn(const FitConfig& cfg, const CodonUsage& usage, const ExperimentalDataset& data)
        : cfg_(cfg), usage_(usage), data_(data) {}

    Evaluation evaluate(const LogPoint& x, const SearchSpace& space) {
        ++evaluations_;
        Evaluation ev;
        if (!space.contains(x)) return ev;  // out of box: infinite penalty
        ev.hard_feasible = true;

        ModelParams p = params_of(x);
        AminoAcidMatrix am = aggregate(build_generator(p, cfg_.strength, cfg_.charge), usage_);

        double violation = 0.0;
        for (const InequalityClaim& claim : data_.claims) {
            double lhs = pair_rate(am, claim.lhs_a, claim.lhs_b);
            double rhs = pair_rate(am, claim.rhs_a, claim.rhs_b);
            double margin = (rhs - lhs) / (rhs + lhs + kMarginEps);
            if (lhs < rhs) ++ev.satisfied;
            violation += std::max(0.0, -margin);
        }
        ev.soft_margin = -violation;

        Eq15Result eq = check_eq15(p.alpha, p.beta, p.gamma);
        ev.eq15_ok = eq.ok;
        double eq_penalty = 0.0;
        if (cfg_.require_eq15) {
            eq_penalty += std::max(0.0, (eq.terms[1] - eq.terms[0]) /
                                            (eq.terms[0] + eq.terms[1] + kMarginEps));
            eq_penalty += std::max(0.0, (eq.terms[2] - eq.terms[1]) /
                                            (eq.terms[1] + eq.terms[2] + kMarginEps));
        }
        ev.penalty = violation + eq_penalty;
        return ev;
    }

    std::uint64_t evaluations() const { return evaluations_; }

private:
    const FitConfig& cfg_;
    const CodonUsage& usage_;
    const ExperimentalDataset& data_;
    std::uint64_t evaluations_ = 0;
};

}  // namespace

double fit_objective(const ModelParams& p, const FitConfig& cfg, const CodonUsage& usage,
                     const ExperimentalDataset& data) {
    cfg.validate();
    AminoAcidMatrix am = aggregate(build_generator(p, cfg.strength, cfg.charge), usage);
    int satisfied = 0;
    double violation = 0.0;
    for (const InequalityClaim& claim : data.claims) {
        double lhs = pair_rate(am, claim.lhs_a, claim.lhs_b);
        double rhs = pair_rate(am, claim.rhs_a, claim.rhs_b);
        if (lhs < rhs) ++satisfied;
        violation += std::max(0.0, -(rhs - lhs) / (rhs + lhs + kMarginEps));
    }
    if (cfg.objective == FitConfig::Objective::count) return satisfied;
    double margin = -violation;
    if (cfg.require_eq15) {
        Eq15Result eq = check_eq15(p.alpha, p.beta, p.gamma);
        margin -= std::max(0.0, (eq.terms[1] - eq.terms[0]) /
                                    (eq.terms[0] + eq.terms[1] + kMarginEps));
        margin -= std::max(0.0, (eq.terms[2] - eq.terms[1]) /
                                    (eq.terms[1] + eq.terms[2] + kMarginEps));
    }
    return margin;
}

FitResult search(const FitConfig& cfg, const CodonUsage& usage,
                 const ExperimentalDataset& data) {
    cfg.validate();
    SearchSpace space(cfg);
    ObjectiveFn fn(cfg, usage, data);

    FitResult result;
    result.total_claims = static_cast<int>(data.claims.size());

    bool have_best = false;
    LogPoint best_x{};
    Evaluation best_ev;

    auto eligible = [&](const Evaluation& ev) {
        return ev.hard_feasible && (!cfg.require_eq15 || ev.eq15_ok);
    };

    // Strictly-better comparison; ties keep the earlier start.
    auto better = [&](const Evaluation& a, const Evaluation& b) {
        if (cfg.objective == FitConfig::Objective::count) {
            if (a.satisfied != b.satisfied) return a.satisfied > b.satisfied;
            return a.penalty < b.penalty;
        }
        return a.penalty < b.penalty;
    };

    auto budget_left = [&] {
        return cfg.max_evaluations == 0 || fn.evaluations() < cfg.max_evaluations;
    };

    auto consider = [&](const LogPoint& x, const Evaluation& ev) {
        if (!eligible(ev)) return;
        if (!have_best || better(ev, best_ev)) {
            have_best = true;
            best_x = x;
            best_ev = ev;
            result.trace.emplace_back(fn.evaluations(), ev.penalty);
        }
    };

    for (int start = 0; start < cfg.seeds && budget_left(); ++start) {
        CounterRng rng(cfg.rng_seed, static_cast<std::uint64_t>(start));

        LogPoint x0 = space.sample(rng);
        Evaluation ev0 = fn.evaluate(x0, space);
        consider(x0, ev0);
        if (cfg.iterations == 0) continue;  // unrefined start

        // Initial simplex: the start plus one step per log coordinate.
        std::vector<LogPoint> simplex{x0};
        std::vector<Evaluation> values{ev0};
        for (int k = 0; k < 4; ++k) {
            LogPoint xk = x0;
            double step = 0.25;
            std::size_t ks = static_cast<std::size_t>(k);
            xk[ks] += (xk[ks] + step <= space.hi[ks]) ? step : -step;
            simplex.push_back(xk);
        }
        for (std::size_t k = 1; k < simplex.size() && budget_left(); ++k) {
            Evaluation ev = fn.evaluate(simplex[k], space);
            consider(simplex[k], ev);
            values.push_back(ev);
        }
        if (values.size() < simplex.size()) break;  // budget ran out mid-init

        const int n = 4;
        for (int iter = 0; iter < cfg.iterations && budget_left(); ++iter) {
            std::array<int, 5> order{0, 1, 2, 3, 4};
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return values[static_cast<std::size_t>(a)].penalty <
                       values[static_cast<std::size_t>(b)].penalty;
            });
            int worst = order[static_cast<std::size_t>(n)];
            int second_worst = order[static_cast<std::size_t>(n - 1)];
            int best = order[0];

            LogPoint centroid{};
            for (int k = 0; k < n; ++k) {
                for (int d = 0; d < n; ++d)
                    centroid[static_cast<std::size_t>(d)] +=
                        simplex[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])]
                               [static_cast<std::size_t>(d)];
            }
            for (int d = 0; d < n; ++d) centroid[static_cast<std::size_t>(d)] /= n;

            auto blend = [&](double coef) {
                LogPoint x;
                for (int d = 0; d < n; ++d) {
                    std::size_t ds = static_cast<std::size_t>(d);
                    x[ds] = centroid[ds] +
                            coef * (centroid[ds] - simplex[static_cast<std::size_t>(worst)][ds]);
                }
                return x;
            };

            LogPoint xr = blend(1.0);  // reflection
            Evaluation fr = fn.evaluate(xr, space);
            consider(xr, fr);

            if (fr.penalty < values[static_cast<std::size_t>(best)].penalty && budget_left()) {
                LogPoint xe = blend(2.0);  // expansion
                Evaluation fe = fn.evaluate(xe, space);
                consider(xe, fe);
                if (fe.penalty < fr.penalty) {
                    simplex[static_cast<std::size_t>(worst)] = xe;
                    values[static_cast<std::size_t>(worst)] = fe;
                } else {
                    simplex[static_cast<std::size_t>(worst)] = xr;
                    values[static_cast<std::size_t>(worst)] = fr;
                }
            } else if (fr.penalty < values[static_cast<std::size_t>(second_worst)].penalty) {
                simplex[static_cast<std::size_t>(worst)] = xr;
                values[static_cast<std::size_t>(worst)] = fr;
            } else if (budget_left()) {
                bool outside = fr.penalty < values[static_cast<std::size_t>(worst)].penalty;
                LogPoint xc = blend(outside ? 0.5 : -0.5);
                Evaluation fc = fn.evaluate(xc, space);
                consider(xc, fc);
                double bar = outside ? fr.penalty : values[static_cast<std::size_t>(worst)].penalty;
                if (fc.penalty < bar) {
                    simplex[static_cast<std::size_t>(worst)] = xc;
                    values[static_cast<std::size_t>(worst)] = fc;
                } else {
                    // Shrink toward the best vertex.
                    for (int k = 1; k <= n && budget_left(); ++k) {
                        int idx = order[static_cast<std::size_t>(k)];
                        std::size_t is = static_cast<std::size_t>(idx);
                        for (int d = 0; d < n; ++d) {
                            std::size_t ds = static_cast<std::size_t>(d);
                            simplex[is][ds] =
                                simplex[static_cast<std::size_t>(best)][ds] +
                                0.5 * (simplex[is][ds] -
                                       simplex[static_cast<std::size_t>(best)][ds]);
                        }
                        values[is] = fn.evaluate(simplex[is], space);
                        consider(simplex[is], values[is]);
                    }
                }
            }
        }
    }

    result.evaluations = fn.evaluations();
    if (!have_best) {
        result.found = false;
        return result;
    }

    result.found = true;
    ModelParams best_params = params_of(best_x);
    result.best = best_params;
    result.soft_margin = best_ev.soft_margin;
    result.satisfied_count = best_ev.satisfied;
    result.eq15 = check_eq15(best_params.alpha, best_params.beta, best_params.gamma);

    AminoAcidMatrix am =
        aggregate(build_generator(best_params, cfg.strength, cfg.charge), usage);
    for (const InequalityClaim& claim : data.claims) {
        double lhs = pair_rate(am, claim.lhs_a, claim.lhs_b);
        double rhs = pair_rate(am, claim.rhs_a, claim.rhs_b);
        if (!(lhs < rhs)) result.violated.push_back(claim.label());
    }
    return result;
}

}  // namespace cct
