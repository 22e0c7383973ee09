#include "cct/aggregate.hpp"

#include <cmath>

#include "cct/errors.hpp"

namespace cct {

CodonUsage CodonUsage::uniform() {
    CodonUsage u;
    for (int a = 0; a < kNumAminoAcids; ++a) {
        const auto& fam = multiplet(static_cast<AminoAcid>(a));
        for (Codon c : fam)
            u.freq_[static_cast<std::size_t>(sense_index(c))] = 1.0 / static_cast<double>(fam.size());
    }
    return u;
}

CodonUsage CodonUsage::from_weights(const std::map<Codon, double>& weights) {
    CodonUsage u;
    for (int a = 0; a < kNumAminoAcids; ++a) {
        const auto& fam = multiplet(static_cast<AminoAcid>(a));
        double total = 0.0;
        for (Codon c : fam) {
            auto it = weights.find(c);
            if (it == weights.end())
                throw Error("usage", "missing sense codon " + codon_str(c));
            if (!(it->second >= 0.0) || !std::isfinite(it->second))
                throw Error("usage", "negative or non-finite frequency for " + codon_str(c));
            total += it->second;
        }
        if (total <= 0.0)
            throw Error("usage", std::string("all-zero frequencies for ") +
                                     std::string(three_letter(static_cast<AminoAcid>(a))));
        for (Codon c : fam)
            u.freq_[static_cast<std::size_t>(sense_index(c))] = weights.at(c) / total;
    }
    return u;
}

double CodonUsage::freq(Codon c) const {
    return freq_[static_cast<std::size_t>(sense_index(c))];
}

namespace {

void check_normalized(const CodonUsage& usage) {
    for (int a = 0; a < kNumAminoAcids; ++a) {
        double sum = 0.0;
        for (Codon c : multiplet(static_cast<AminoAcid>(a))) sum += usage.freq(c);
        if (std::abs(sum - 1.0) > 1e-12)
            throw Error("usage", std::string("family ") +
                                     std::string(three_letter(static_cast<AminoAcid>(a))) +
                                     " not normalized");
    }
}

}  // namespace

AminoAcidMatrix aggregate(const CodonMatrix& cm, const CodonUsage& usage) {
    if (cm.m.rows() != 61 || cm.m.cols() != 61)
        throw Error("matrix", "aggregate expects a 61x61 codon matrix");
    check_normalized(usage);

    AminoAcidMatrix out;
    out.m = Eigen::MatrixXd::Zero(kNumAminoAcids, kNumAminoAcids);
    out.source_kind = cm.kind;
    out.params = cm.params;
    out.strength = cm.strength;
    out.charge_source = cm.charge_source;

    // Nearest-pair filter keeps only single-nucleotide flows; the codon
    // matrix diagonal never enters (a codon is not its own nearest).
    for (Codon src : sense_codons()) {
        AminoAcid a = *translate(src);
        double f = usage.freq(src);
        for (Codon dst : sense_neighbors(src)) {
            AminoAcid b = *translate(dst);
            out.m(static_cast<int>(b), static_cast<int>(a)) +=
                f * cm.m(sense_index(dst), sense_index(src));
        }
    }
    return out;
}

double pair_rate(const AminoAcidMatrix& am, AminoAcid a, AminoAcid b) {
    return 0.5 * (am.rate(a, b) + am.rate(b, a));
}

double mutability(const AminoAcidMatrix& am, AminoAcid a) {
    double total = 0.0;
    for (int b = 0; b < kNumAminoAcids; ++b)
        if (static_cast<AminoAcid>(b) != a) total += am.rate(a, static_cast<AminoAcid>(b));
    return total;
}

double pair_rate(AminoAcid a, AminoAcid b, const ModelParams& p, const StrengthFunction& f,
                 const CodonUsage& usage, ChargeSource source) {
    if (a == b) throw Error("amino-acid", "pair_rate needs two distinct amino acids");
    return pair_rate(aggregate(build_generator(p, f, source), usage), a, b);
}

double mutability(AminoAcid a, const ModelParams& p, const StrengthFunction& f,
                  const CodonUsage& usage, ChargeSource source) {
    double total = 0.0;
    for (Codon c : multiplet(a)) {
        double outflow = 0.0;
        for (Codon n : sense_neighbors(c))
            if (translate(n) != a) outflow += f(distance(c, n, p, source));
        total += usage.freq(c) * outflow;
    }
    return total;
}

}  // namespace cct
