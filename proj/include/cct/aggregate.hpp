#pragma once

#include <Eigen/Dense>
#include <map>

#include "cct/rate_matrix.hpp"

namespace cct {

// Codon frequencies normalized within each synonym family:
// sum over the multiplet of every amino acid is 1. Stop codons excluded.
class CodonUsage {
public:
    // f = 1/|multiplet| for every sense codon.
    static CodonUsage uniform();

    // Accepts arbitrary nonnegative weights (e.g. global frequencies) and
    // normalizes within each family; throws if a family has zero total.
    static CodonUsage from_weights(const std::map<Codon, double>& weights);

    double freq(Codon c) const;  // f_i^a for a sense codon

private:
    CodonUsage() = default;
    std::array<double, 61> freq_{};
};

// 20x20 matrix over amino acids, alphabetical three-letter order.
// Entry (b, a) = sum_{i in a} sum_{j in b, nearest} f_i^a * cm(j, i):
// the column indexes the source amino acid, as in CodonMatrix.
struct AminoAcidMatrix {
    Eigen::MatrixXd m;  // 20x20

    CodonMatrix::Kind source_kind = CodonMatrix::Kind::generator;
    ModelParams params;
    StrengthFunction strength;
    ChargeSource charge_source = ChargeSource::table;

    double rate(AminoAcid from, AminoAcid to) const {
        return m(static_cast<int>(to), static_cast<int>(from));
    }
};

AminoAcidMatrix aggregate(const CodonMatrix& cm, const CodonUsage& usage);

// Symmetrized model rate (M_ab + M_ba)/2 used for all inequality
// comparisons; the experimental matrices are symmetric by construction.
double pair_rate(AminoAcid a, AminoAcid b, const ModelParams& p, const StrengthFunction& f,
                 const CodonUsage& usage, ChargeSource source = ChargeSource::table);

// Expected non-synonymous outflow: sum over the multiplet of
// f_i^a * sum of F(d) to non-synonymous sense neighbors. Higher value =
// less stable. Silent flows are excluded (unobservable in substitution data).
double mutability(AminoAcid a, const ModelParams& p, const StrengthFunction& f,
                  const CodonUsage& usage, ChargeSource source = ChargeSource::table);

// Same quantities computed from a prebuilt aggregate, for callers that
// evaluate many pairs against one model configuration.
double pair_rate(const AminoAcidMatrix& am, AminoAcid a, AminoAcid b);
double mutability(const AminoAcidMatrix& am, AminoAcid a);

}  // namespace cct
