#include "cct/distance.hpp"

#include <cmath>
#include <string>

#include "cct/errors.hpp"

namespace cct {

ModelParams ModelParams::create(double alpha, double beta, double gamma, double eta,
                                bool strict_eta) {
    auto positive = [](double x, const char* name) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw Error("params", std::string(name) + " must be a positive real");
    };
    positive(alpha, "alpha");
    positive(beta, "beta");
    positive(gamma, "gamma");
    if (!std::isfinite(eta) || !(eta > 1.0))
        throw Error("params", "eta must be > 1");
    if (strict_eta && !(eta > 2.0))
        throw Error("params", "eta must be > 2 in strict mode");
    return ModelParams{alpha, beta, gamma, eta};
}

double r_value(Codon c, const ModelParams& p, ChargeSource source) {
    const CodonRecord& rec = codon_record(c);
    const DimerRecord& dim = dimer_record(c[0], c[1]);

    int q1 = charge(c[0], c[1], source);
    int j1v = dim.two_j3_v / 2;  // dimer J3V is an integer: -1, 0 or 1
    // 4*(C_H + C_V) in doubled spins: 2j(2j+2) summed over the two axes.
    int four_casimir = rec.irrep.two_j_h * (rec.irrep.two_j_h + 2) +
                       rec.irrep.two_j_v * (rec.irrep.two_j_v + 2);

    double bracket = p.alpha * q1 - p.beta * (j1v * (j1v - 1)) + p.gamma * four_casimir;
    double factor = rec.weight.two_j3_h + p.eta * rec.weight.two_j3_v;
    return bracket * factor;
}

double distance(Codon c1, Codon c2, const ModelParams& p, ChargeSource source) {
    return std::abs(r_value(c2, p, source) - r_value(c1, p, source));
}

bool is_nearest(Codon c1, Codon c2) {
    int diff = 0;
    for (int i = 0; i < 3; ++i)
        if (c1[i] != c2[i]) ++diff;
    return diff == 1;
}

std::vector<Codon> sense_neighbors(Codon c) {
    if (is_stop(c)) throw Error("codon", codon_str(c) + " is a stop codon");
    std::vector<Codon> out;
    out.reserve(9);
    for (int pos = 0; pos < 3; ++pos) {
        for (int n = 0; n < kNumNucs; ++n) {
            Nuc repl = static_cast<Nuc>(n);
            if (repl == c[pos]) continue;
            Codon cand = c;
            cand.nt[static_cast<std::size_t>(pos)] = repl;
            if (!is_stop(cand)) out.push_back(cand);
        }
    }
    return out;
}

ChangeClass classify_change(Codon c1, Codon c2) {
    if (!is_nearest(c1, c2))
        throw Error("codon", codon_str(c1) + " and " + codon_str(c2) +
                                 " do not differ in exactly one position");
    for (int i = 0; i < 3; ++i) {
        if (c1[i] == c2[i]) continue;
        return ChangeClass{i + 1, h_sign(c1[i]) != h_sign(c2[i]),
                           v_sign(c1[i]) != v_sign(c2[i])};
    }
    throw Error("codon", "unreachable");  // is_nearest guarantees a difference
}

}  // namespace cct
