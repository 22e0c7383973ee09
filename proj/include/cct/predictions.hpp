#pragma once

#include <array>
#include <string>
#include <vector>

#include "cct/aggregate.hpp"

namespace cct {

// One transcribed inequality between two amino-acid pair rates, with the
// experimental values printed next to it in the source.
struct InequalityClaim {
    AminoAcid lhs_a, lhs_b;
    AminoAcid rhs_a, rhs_b;
    bool approx = false;  // "less than or approximately equal" rows
    double exp_lhs = 0.0, exp_rhs = 0.0;
    std::string source;  // "table" or "text"

    std::string label() const;  // "Asp<->Ala < Glu<->Ala"
};

// A single experimental pair rate quoted outside the inequality rows.
struct ExperimentalPairRate {
    AminoAcid a, b;
    double value;
    std::string source;
};

struct MutabilityRow {
    double pet91 = 0.0;
    double dayhoff = 0.0;
};

struct ExperimentalDataset {
    std::vector<InequalityClaim> claims;
    std::vector<ExperimentalPairRate> rates;
    std::array<MutabilityRow, kNumAminoAcids> mutability{};

    const MutabilityRow& mutability_of(AminoAcid a) const {
        return mutability[static_cast<std::size_t>(a)];
    }
    // Unordered lookup in `rates`; throws if the pair is absent.
    double rate_for(AminoAcid a, AminoAcid b) const;
};

// |60g - 4b - 10a| > |12g - 2a| > |36g - 4b - 2a|, the strict chain implied
// by the ordering of the three third-position doublet rates. Homogeneous of
// degree 1 in (alpha, beta, gamma).
struct Eq15Result {
    bool ok = false;
    std::array<double, 3> terms{};
};

Eq15Result check_eq15(double alpha, double beta, double gamma);

struct EvalOptions {
    double approx_slack = 0.1;  // relative slack for approx rows
    ChargeSource charge = ChargeSource::table;
};

struct ClaimResult {
    InequalityClaim claim;
    double model_lhs = 0.0, model_rhs = 0.0;
    bool satisfied = false;  // strict: model_lhs < model_rhs
    double margin = 0.0;     // (rhs - lhs)/(rhs + lhs + eps), negative when violated
    bool approx_ok = false;  // satisfied, or within slack for approx rows
};

// Model rates for the three doublet mutations with middle nucleotide A;
// they share a third-position Y<->R change, so a neighbor-blind model would
// make them equal while this one predicts distinct values.
struct DoubletTriple {
    double asn_lys = 0.0, asp_glu = 0.0, his_gln = 0.0;
    bool pairwise_distinct = false;
};

struct EtaBoundReport {
    double eta = 0.0;
    bool exceeds_two = false;
    double model_phe_leu = 0.0, model_phe_tyr = 0.0;
    double exp_phe_leu = 0.0, exp_phe_tyr = 0.0;
};

enum class ChainRelation : unsigned char { greater, much_greater, approx_equal };

struct HierarchyEntry {
    AminoAcid aa;
    int multiplet_size = 0;
    double model = 0.0;  // model mutability; lower = more stable
    double pet91 = 0.0, dayhoff = 0.0;
};

struct HierarchyLink {
    AminoAcid more_stable, less_stable;
    ChainRelation rel = ChainRelation::greater;
    bool starred = false;  // involves a sextet/triplet; lower confidence
    double model_stable = 0.0, model_unstable = 0.0;
    bool model_ok = false;
    bool exp_ok = false;  // same comparison on the PET91 column
};

struct HierarchyReport {
    std::vector<HierarchyEntry> entries;  // grouped by multiplet size, stable first
    std::vector<HierarchyLink> links;
};

struct PredictionReport {
    ModelParams params;
    StrengthFunction strength;
    ChargeSource charge = ChargeSource::table;
    double approx_slack = 0.1;

    std::vector<ClaimResult> claims;
    int satisfied_count = 0;
    int approx_ok_count = 0;

    DoubletTriple doublets;
    Eq15Result eq15;
    EtaBoundReport eta;
    HierarchyReport hierarchy;
};

PredictionReport evaluate_claims(const ModelParams& p, const StrengthFunction& f,
                                 const CodonUsage& usage, const ExperimentalDataset& data,
                                 const EvalOptions& opts = {});

HierarchyReport hierarchy_report(const ModelParams& p, const StrengthFunction& f,
                                 const CodonUsage& usage, const ExperimentalDataset& data,
                                 const EvalOptions& opts = {});

EtaBoundReport eta_bound(const ModelParams& p, const StrengthFunction& f,
                         const CodonUsage& usage, const ExperimentalDataset& data,
                         const EvalOptions& opts = {});

std::string report_to_text(const PredictionReport& r);
std::string report_to_json(const PredictionReport& r);  // serialized, 2-space indent

}  // namespace cct
