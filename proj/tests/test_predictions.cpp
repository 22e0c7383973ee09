#include <doctest.h>

#include <cmath>
#include <set>

#include "cct/errors.hpp"
#include "cct/fit.hpp"
#include "cct/io.hpp"
#include "cct/predictions.hpp"

using namespace cct;

namespace {

const ExperimentalDataset& dataset() {
    static const ExperimentalDataset data = io::load_dataset(io::default_data_dir());
    return data;
}

}  // namespace

TEST_SUITE_BEGIN("predictions");

TEST_CASE("eq15 chain evaluation") {
    Eq15Result good = check_eq15(0.1, 5.0, 0.5);
    CHECK(good.ok);
    CHECK(good.terms[0] == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(good.terms[1] == doctest::Approx(5.8).epsilon(1e-12));
    CHECK(good.terms[2] == doctest::Approx(2.2).epsilon(1e-12));

    Eq15Result bad = check_eq15(1.0, 10.0, 1.0);
    CHECK_FALSE(bad.ok);  // first comparison is non-strict: 10 > 10 fails
    CHECK(bad.terms[0] == doctest::Approx(10.0));
    CHECK(bad.terms[1] == doctest::Approx(10.0));
    CHECK(bad.terms[2] == doctest::Approx(6.0));

    SUBCASE("invariant under positive rescaling") {
        for (double k : {0.123, 1.0, 3.0, 41.7}) {
            CHECK(check_eq15(0.1 * k, 5.0 * k, 0.5 * k).ok == good.ok);
            CHECK(check_eq15(1.0 * k, 10.0 * k, 1.0 * k).ok == bad.ok);
            CHECK(check_eq15(2.0 * k, 1.0 * k, 0.3 * k).ok == check_eq15(2.0, 1.0, 0.3).ok);
        }
    }

    SUBCASE("rejects nonpositive parameters") {
        CHECK_THROWS_AS(check_eq15(0.0, 1.0, 1.0), Error);
    }
}

TEST_CASE("eq15 chain equals the doublet distance ordering") {
    // The three terms are the codon distances of AAY<->AAR, CAY<->CAR and
    // GAY<->GAR divided by 2*eta, so the chain must match the ordering of
    // the distances themselves.
    CounterRng rng(19, 0);
    auto log_uniform = [&](double lo, double hi) {
        return lo * std::exp(rng.uniform() * std::log(hi / lo));
    };
    for (int trial = 0; trial < 100; ++trial) {
        double alpha = log_uniform(1e-2, 1e2);
        double beta = log_uniform(1e-2, 1e2);
        double gamma = log_uniform(1e-2, 1e2);
        double eta = 1.0 + log_uniform(1e-2, 9.0);
        ModelParams p = ModelParams::create(alpha, beta, gamma, eta);

        double d_asn_lys = distance(parse_codon("AAC"), parse_codon("AAG"), p);
        double d_his_gln = distance(parse_codon("CAC"), parse_codon("CAG"), p);
        double d_asp_glu = distance(parse_codon("GAC"), parse_codon("GAG"), p);

        Eq15Result eq = check_eq15(alpha, beta, gamma);
        CHECK(eq.ok == (d_asn_lys > d_his_gln && d_his_gln > d_asp_glu));
        CHECK(d_asn_lys == doctest::Approx(2.0 * eta * eq.terms[0] / 2.0).epsilon(1e-9));
        CHECK(d_his_gln == doctest::Approx(2.0 * eta * eq.terms[1] / 2.0).epsilon(1e-9));
        CHECK(d_asp_glu == doctest::Approx(2.0 * eta * eq.terms[2] / 2.0).epsilon(1e-9));
    }
}

TEST_CASE("bundled dataset self-consistency") {
    const ExperimentalDataset& data = dataset();

    int table_claims = 0;
    std::set<std::string> labels;
    for (const InequalityClaim& claim : data.claims) {
        if (claim.source == "table") ++table_claims;
        CHECK(labels.insert(claim.label() + "/" + claim.source).second);  // no duplicates
        if (claim.approx)
            CHECK(claim.exp_lhs <= claim.exp_rhs);
        else
            CHECK(claim.exp_lhs < claim.exp_rhs);
    }
    CHECK(table_claims == 23);
    CHECK(data.claims.size() == 25);

    CHECK(data.mutability_of(AminoAcid::Ala).pet91 == 100.0);
    CHECK(data.mutability_of(AminoAcid::Ala).dayhoff == 100.0);
    CHECK(data.mutability_of(AminoAcid::Trp).pet91 == 25.0);
    CHECK(data.mutability_of(AminoAcid::Trp).dayhoff == 18.0);
    CHECK(data.mutability_of(AminoAcid::Ser).pet91 == 117.0);
    CHECK(data.mutability_of(AminoAcid::Ser).dayhoff == 120.0);

    CHECK(data.rate_for(AminoAcid::Phe, AminoAcid::Leu) == 230.0);
    CHECK(data.rate_for(AminoAcid::Phe, AminoAcid::Tyr) == 179.0);
    CHECK(data.rate_for(AminoAcid::Asn, AminoAcid::Lys) == 150.0);
    CHECK(data.rate_for(AminoAcid::Asp, AminoAcid::Glu) == 478.0);
    CHECK(data.rate_for(AminoAcid::His, AminoAcid::Gln) == 233.0);

    // PET91 column is consistent with the stability chains.
    auto pet = [&](AminoAcid a) { return data.mutability_of(a).pet91; };
    CHECK(pet(AminoAcid::Gly) < pet(AminoAcid::Pro));
    CHECK(pet(AminoAcid::Pro) < pet(AminoAcid::Ala));
    CHECK(pet(AminoAcid::Ala) < pet(AminoAcid::Thr));
    CHECK(pet(AminoAcid::Thr) < pet(AminoAcid::Ser));
    CHECK(pet(AminoAcid::Trp) < pet(AminoAcid::Met));
}

TEST_CASE("claim evaluation") {
    const ExperimentalDataset& data = dataset();
    ModelParams p = ModelParams::create(1, 1, 1, 2.5);
    StrengthFunction f = StrengthFunction::exponential(0.01);
    CodonUsage u = CodonUsage::uniform();

    PredictionReport rep = evaluate_claims(p, f, u, data);
    CHECK(rep.claims.size() == data.claims.size());
    CHECK(rep.satisfied_count >= 0);
    CHECK(rep.satisfied_count <= static_cast<int>(rep.claims.size()));
    for (const ClaimResult& c : rep.claims) {
        CHECK(c.satisfied == (c.model_lhs < c.model_rhs));
        CHECK(((c.margin > 0) == c.satisfied));
        if (c.satisfied) CHECK(c.approx_ok);
    }

    SUBCASE("reports are byte-deterministic") {
        PredictionReport again = evaluate_claims(p, f, u, data);
        CHECK(report_to_json(rep) == report_to_json(again));
        CHECK(report_to_text(rep) == report_to_text(again));
    }

    SUBCASE("satisfied count is invariant under strength rescaling") {
        PredictionReport r1 =
            evaluate_claims(p, StrengthFunction::constant(1.0), u, data);
        PredictionReport r2 =
            evaluate_claims(p, StrengthFunction::constant(7.25), u, data);
        CHECK(r1.satisfied_count == r2.satisfied_count);
        for (std::size_t i = 0; i < r1.claims.size(); ++i)
            CHECK(r1.claims[i].satisfied == r2.claims[i].satisfied);
    }
}

TEST_CASE("eta bound report") {
    const ExperimentalDataset& data = dataset();
    CodonUsage u = CodonUsage::uniform();
    ModelParams p = ModelParams::create(1, 1, 1, 2.5);

    EtaBoundReport rep = eta_bound(p, StrengthFunction::exponential(0.01), u, data);
    CHECK(rep.exp_phe_leu == 230.0);
    CHECK(rep.exp_phe_tyr == 179.0);
    CHECK(rep.exceeds_two);
    CHECK(rep.model_phe_leu >= 0.0);
    CHECK(rep.model_phe_tyr >= 0.0);

    // Under constant strength the ratio is fixed by pair multiplicities:
    // six Phe-Leu nearest pairs vs two Phe-Tyr pairs, both doublet sources.
    EtaBoundReport flat = eta_bound(p, StrengthFunction::constant(1.0), u, data);
    CHECK(flat.model_phe_leu == doctest::Approx(2.0 * flat.model_phe_tyr).epsilon(1e-12));
}

TEST_CASE("hierarchy report") {
    const ExperimentalDataset& data = dataset();
    CodonUsage u = CodonUsage::uniform();
    ModelParams p = ModelParams::create(1, 1, 1, 2);

    HierarchyReport rep = hierarchy_report(p, StrengthFunction::constant(1.0), u, data);
    CHECK(rep.entries.size() == 20);
    CHECK(rep.links.size() == 11);

    // Grouped by multiplet size, descending.
    for (std::size_t i = 1; i < rep.entries.size(); ++i)
        CHECK(rep.entries[i - 1].multiplet_size >= rep.entries[i].multiplet_size);

    // Trp >> Met holds in the constant-strength baseline (7 vs 9).
    for (const HierarchyLink& link : rep.links) {
        if (link.more_stable == AminoAcid::Trp) {
            CHECK(link.rel == ChainRelation::much_greater);
            CHECK(link.model_stable == 7.0);
            CHECK(link.model_unstable == 9.0);
            CHECK(link.model_ok);
            CHECK(link.exp_ok);
        }
    }

    int starred = 0;
    for (const HierarchyLink& link : rep.links) starred += link.starred ? 1 : 0;
    CHECK(starred == 4);  // Thr>Ser*, Lys>Ile**, Ile>Asn**, Leu*>Val
}

TEST_SUITE_END();
