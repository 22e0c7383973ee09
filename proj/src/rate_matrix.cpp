#include "cct/rate_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "cct/errors.hpp"

namespace cct {

namespace {

std::string format_num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void require_positive(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw Error("strength", std::string(name) + " must be a positive real");
}

}  // namespace

double StrengthFunction::operator()(double d) const {
    switch (kind) {
        case Kind::exponential: return std::exp(-lambda * d);
        case Kind::power_law: return std::pow(1.0 + d / scale, -p);
        case Kind::constant: return c;
    }
    return 0.0;  // unreachable
}

StrengthFunction StrengthFunction::exponential(double lambda) {
    require_positive(lambda, "lambda");
    StrengthFunction f;
    f.kind = Kind::exponential;
    f.lambda = lambda;
    return f;
}

StrengthFunction StrengthFunction::power_law(double p, double scale) {
    require_positive(p, "p");
    require_positive(scale, "scale");
    StrengthFunction f;
    f.kind = Kind::power_law;
    f.p = p;
    f.scale = scale;
    return f;
}

StrengthFunction StrengthFunction::constant(double c) {
    require_positive(c, "c");
    StrengthFunction f;
    f.kind = Kind::constant;
    f.c = c;
    return f;
}

std::string StrengthFunction::str() const {
    switch (kind) {
        case Kind::exponential: return "exp:lambda=" + format_num(lambda);
        case Kind::power_law: return "pow:p=" + format_num(p) + ",scale=" + format_num(scale);
        case Kind::constant: return "const:c=" + format_num(c);
    }
    return {};
}

StrengthFunction StrengthFunction::parse(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::map<std::string, double> kv;
    if (colon != std::string::npos) {
        std::string rest = spec.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            std::string item = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw Error("strength", "expected key=value in \"" + spec + "\"");
            try {
                std::size_t used = 0;
                double v = std::stod(item.substr(eq + 1), &used);
                if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
                kv[item.substr(0, eq)] = v;
            } catch (const std::exception&) {
                throw Error("strength", "bad numeric value in \"" + spec + "\"");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    auto take = [&](const char* key, double fallback, bool required) {
        auto it = kv.find(key);
        if (it == kv.end()) {
            if (required)
                throw Error("strength", std::string("missing ") + key + " in \"" + spec + "\"");
            return fallback;
        }
        double v = it->second;
        kv.erase(it);
        return v;
    };
    StrengthFunction out;
    if (head == "exp") {
        out = exponential(take("lambda", 0.01, false));
    } else if (head == "pow") {
        out = power_law(take("p", 1.0, true), take("scale", 1.0, true));
    } else if (head == "const") {
        out = constant(take("c", 1.0, false));
    } else {
        throw Error("strength", "unknown strength \"" + head + "\" (want exp, pow or const)");
    }
    if (!kv.empty())
        throw Error("strength", "unexpected key \"" + kv.begin()->first + "\" in \"" + spec + "\"");
    return out;
}

std::string_view matrix_kind_name(CodonMatrix::Kind k) {
    switch (k) {
        case CodonMatrix::Kind::generator: return "generator";
        case CodonMatrix::Kind::evolution: return "evolution";
        case CodonMatrix::Kind::stochastic: return "stochastic";
    }
    return {};
}

CodonMatrix::Kind parse_matrix_kind(std::string_view s) {
    if (s == "generator") return CodonMatrix::Kind::generator;
    if (s == "evolution") return CodonMatrix::Kind::evolution;
    if (s == "stochastic") return CodonMatrix::Kind::stochastic;
    throw Error("matrix-format", "unknown matrix kind \"" + std::string(s) + "\"");
}

CodonMatrix build_generator(const ModelParams& p, const StrengthFunction& f,
                            ChargeSource source) {
    auto codons = sense_codons();
    const int n = static_cast<int>(codons.size());

    CodonMatrix out;
    out.kind = CodonMatrix::Kind::generator;
    out.params = p;
    out.strength = f;
    out.charge_source = source;
    out.m = Eigen::MatrixXd::Zero(n, n);

    for (int i = 0; i < n; ++i) {
        double column_sum = 0.0;
        for (Codon target : sense_neighbors(codons[static_cast<std::size_t>(i)])) {
            int j = sense_index(target);
            double rate = f(distance(codons[static_cast<std::size_t>(i)], target, p, source));
            out.m(j, i) = rate;
            column_sum += rate;
        }
        out.m(i, i) = -column_sum;
    }
    return out;
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a) {
    const auto one_norm = [](const Eigen::MatrixXd& x) {
        return x.cwiseAbs().colwise().sum().maxCoeff();
    };

    int squarings = 0;
    double norm = one_norm(a);
    while (norm > 0.5) {
        norm /= 2.0;
        ++squarings;
    }
    Eigen::MatrixXd scaled = a / std::exp2(squarings);

    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    Eigen::MatrixXd term = sum;
    // With the scaled norm <= 0.5 the series contracts by at least half per
    // term, so the 1e-16 relative cutoff is reached in a few dozen terms.
    for (int k = 1; k <= 64; ++k) {
        term = (term * scaled) / k;
        sum += term;
        if (one_norm(term) <= 1e-16 * one_norm(sum)) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

CodonMatrix evolve(const CodonMatrix& generator, double t) {
    if (generator.kind != CodonMatrix::Kind::generator)
        throw Error("matrix", "evolve needs a generator matrix");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw Error("matrix", "time must be a nonnegative real");
    CodonMatrix out = generator;
    out.kind = CodonMatrix::Kind::evolution;
    out.m = matrix_exponential(generator.m * t);
    return out;
}

CodonMatrix discrete_step(const CodonMatrix& generator, double tau) {
    if (generator.kind != CodonMatrix::Kind::generator)
        throw Error("matrix", "discrete_step needs a generator matrix");
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw Error("matrix", "tau must be a nonnegative real");
    double max_exit = generator.m.diagonal().cwiseAbs().maxCoeff();
    if (tau * max_exit > 1.0 + 1e-12)
        throw Error("matrix", "tau*max|Q_ii| = " + format_num(tau * max_exit) +
                                  " exceeds 1; step would go negative");
    CodonMatrix out = generator;
    out.kind = CodonMatrix::Kind::stochastic;
    out.m = Eigen::MatrixXd::Identity(generator.m.rows(), generator.m.cols()) +
            tau * generator.m;
    return out;
}

CodonMatrix pam_matrix(const CodonMatrix& generator) {
    return discrete_step(generator, 0.1);
}

}  // namespace cct
