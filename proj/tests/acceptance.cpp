// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cct/cli.hpp"
#include "cct/fit.hpp"
#include "cct/io.hpp"

using namespace cct;

namespace {

int g_failures = 0;

struct Criterion {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

void report(int number, const std::string& name, const Criterion& c) {
    std::printf("%s criterion %d: %s%s%s\n", c.ok ? "PASS" : "FAIL", number, name.c_str(),
                c.detail.empty() ? "" : " -- ", c.detail.c_str());
    if (!c.ok) ++g_failures;
}

ModelParams random_params(CounterRng& rng) {
    auto log_uniform = [&](double lo, double hi) {
        return lo * std::exp(rng.uniform() * std::log(hi / lo));
    };
    return ModelParams::create(log_uniform(1e-2, 1e2), log_uniform(1e-2, 1e2),
                               log_uniform(1e-2, 1e2), 1.0 + log_uniform(1e-2, 9.0));
}

// Criterion 1: the n=3 crystal decomposition reproduces the whole codon
// table exactly.
void criterion_crystal_oracle() {
    Criterion c;
    auto derived = crystal::decompose(3);
    int mismatches = 0;
    for (Codon codon : all_codons()) {
        const auto& got = derived.at(codon_word(codon));
        const CodonRecord& want = codon_record(codon);
        if (got.irrep != want.irrep || got.weight != want.weight) ++mismatches;
    }
    c.require(mismatches == 0, std::to_string(mismatches) + " mismatching rows");
    report(1, "crystal decomposition matches all 64 codon-table rows", c);
}

// Criterion 2: formula charge vs table charge, CU the sole mismatch, and
// the CLI check reports it.
void criterion_charge() {
    Criterion c;
    int agree = 0;
    std::vector<std::string> mismatches;
    for (int a = 0; a < kNumNucs; ++a) {
        for (int b = 0; b < kNumNucs; ++b) {
            Nuc first = static_cast<Nuc>(a);
            Nuc second = static_cast<Nuc>(b);
            if (charge_formula(first, second) == charge_table(first, second))
                ++agree;
            else
                mismatches.push_back({nuc_char(first), nuc_char(second)});
        }
    }
    c.require(agree == 15, "agree on " + std::to_string(agree) + "/16");
    c.require(mismatches == std::vector<std::string>{"CU"}, "mismatch set is not {CU}");
    c.require(charge_formula(Nuc::C, Nuc::U) == 3 && charge_table(Nuc::C, Nuc::U) == 1,
              "CU values are not (formula 3, table 1)");

    std::ostringstream out, err;
    int code = cli::run({"tables", "dimers", "--check"}, out, err);
    c.require(code == 0, "cct tables dimers --check exited " + std::to_string(code));
    c.require(out.str().find("CU (formula 3, table 1)") != std::string::npos,
              "CLI check does not report the CU mismatch");
    report(2, "charge formula matches Table 1 on 15/16 dimers, CU reported", c);
}

// Criterion 3: exact spot values at unit parameters (all-integer data, so
// double arithmetic is exact; tolerance 0).
void criterion_distance_spots() {
    Criterion c;
    ModelParams p = ModelParams::create(1, 1, 1, 2);
    c.require(r_value(parse_codon("CCC"), p, ChargeSource::table) == 333.0, "r(CCC) != 333");
    c.require(r_value(parse_codon("CCU"), p, ChargeSource::table) == 175.0, "r(CCU) != 175");
    c.require(distance(parse_codon("CCC"), parse_codon("CCU"), p) == 158.0, "d != 158");
    report(3, "r(CCC)=333, r(CCU)=175, d=158 exactly at (1,1,1,2)", c);
}

// Criterion 4: generator and exponential structure over 20 random draws.
void criterion_generator_properties() {
    Criterion c;
    int adjacency = 0;
    for (Codon a : sense_codons())
        for (Codon b : sense_codons())
            if (is_nearest(a, b)) ++adjacency;

    CounterRng rng(20240, 0);
    for (int draw = 0; draw < 20; ++draw) {
        ModelParams p = random_params(rng);
        CodonMatrix q = build_generator(p, StrengthFunction::exponential(0.01));

        int nonzero = 0;
        bool symmetric = true;
        double worst_colsum = 0.0;
        for (int i = 0; i < 61; ++i) {
            worst_colsum = std::max(worst_colsum, std::abs(q.m.col(i).sum()));
            for (int j = 0; j < 61; ++j) {
                if (i == j) continue;
                if (q.m(j, i) != q.m(i, j)) symmetric = false;
                if (q.m(j, i) != 0.0) ++nonzero;
            }
        }
        c.require(worst_colsum <= 1e-12, "column sum " + std::to_string(worst_colsum));
        c.require(symmetric, "off-diagonal part not symmetric");
        c.require(nonzero == adjacency,
                  "sparsity " + std::to_string(nonzero) + " != " + std::to_string(adjacency));

        CodonMatrix p0 = evolve(q, 0.0);
        c.require(p0.m == Eigen::MatrixXd::Identity(61, 61), "P(0) != I");

        double s = rng.uniform() * 10.0;
        double t = rng.uniform() * 10.0;
        CodonMatrix ps = evolve(q, s);
        CodonMatrix pt = evolve(q, t);
        CodonMatrix pst = evolve(q, s + t);
        for (int i = 0; i < 61; ++i) {
            c.require(std::abs(ps.m.col(i).sum() - 1.0) <= 1e-10, "column sum != 1");
            c.require(ps.m.col(i).minCoeff() >= -1e-12, "entry < -1e-12");
        }
        double gap = (pst.m - ps.m * pt.m).cwiseAbs().maxCoeff();
        c.require(gap <= 1e-9, "semigroup gap " + std::to_string(gap));
        if (!c.ok) break;
    }
    report(4, "generator and exponential properties over 20 random draws", c);
}

// Criterion 5: constant strength reduces to pair counting for all 190
// amino-acid pairs.
void criterion_markov_reduction() {
    Criterion c;
    const double rate = 0.7;
    CodonMatrix q =
        build_generator(ModelParams::create(1, 1, 1, 2), StrengthFunction::constant(rate));
    for (int i = 0; i < 61 && c.ok; ++i)
        for (int j = 0; j < 61; ++j)
            if (i != j && q.m(j, i) != 0.0 && q.m(j, i) != rate) {
                c.require(false, "off-diagonal not equal to c");
                break;
            }

    AminoAcidMatrix am = aggregate(q, CodonUsage::uniform());
    int checked = 0;
    for (int a = 0; a < kNumAminoAcids; ++a) {
        for (int b = 0; b < kNumAminoAcids; ++b) {
            if (a == b) continue;
            AminoAcid aa = static_cast<AminoAcid>(a);
            AminoAcid bb = static_cast<AminoAcid>(b);
            int pairs = 0;
            for (Codon ci : multiplet(aa))
                for (Codon cj : multiplet(bb))
                    if (is_nearest(ci, cj)) ++pairs;
            double expected = rate * pairs / static_cast<double>(multiplet(aa).size());
            double got = am.rate(aa, bb);
            bool match = expected == 0.0 ? got == 0.0
                                         : std::abs(got - expected) <= 1e-13 * expected;
            if (!match) {
                c.require(false, std::string(three_letter(aa)) + "->" +
                                     std::string(three_letter(bb)) + " got " +
                                     std::to_string(got) + " want " + std::to_string(expected));
            }
            ++checked;
        }
    }
    c.require(checked == 380, "pair loop covered " + std::to_string(checked));
    report(5, "constant strength matches brute-force pair counts for all pairs", c);
}

// Criterion 6: the eq15 chain is feasible and the search finds it within
// 1000 evaluations.
void criterion_eq15_feasibility() {
    Criterion c;
    Eq15Result witness = check_eq15(0.1, 5.0, 0.5);
    c.require(witness.ok, "witness (0.1, 5, 0.5) does not satisfy the chain");
    c.require(std::abs(witness.terms[0] - 9.0) <= 1e-12 &&
                  std::abs(witness.terms[1] - 5.8) <= 1e-12 &&
                  std::abs(witness.terms[2] - 2.2) <= 1e-12,
              "witness terms differ from (9, 5.8, 2.2)");

    FitConfig cfg;
    cfg.seeds = 50;
    cfg.iterations = 30;
    cfg.rng_seed = 7;
    cfg.require_eq15 = true;
    cfg.max_evaluations = 1000;
    ExperimentalDataset data = io::load_dataset(io::default_data_dir());
    FitResult res = search(cfg, CodonUsage::uniform(), data);
    c.require(res.found, "no feasible point found");
    c.require(res.evaluations <= 1000,
              "used " + std::to_string(res.evaluations) + " evaluations");
    if (res.found) {
        c.require(check_eq15(res.best->alpha, res.best->beta, res.best->gamma).ok,
                  "returned point violates the chain");
    }
    report(6, "eq15-feasible point found within 1000 evaluations", c);
}

// Criterion 7: bundled experimental rows are self-consistent as transcribed.
void criterion_dataset_consistency() {
    Criterion c;
    ExperimentalDataset data = io::load_dataset(io::default_data_dir());

    int table_rows = 0;
    for (const InequalityClaim& claim : data.claims) {
        if (claim.source == "table") ++table_rows;
        bool consistent =
            claim.approx ? claim.exp_lhs <= claim.exp_rhs : claim.exp_lhs < claim.exp_rhs;
        c.require(consistent, claim.label() + " transcribed as " +
                                  std::to_string(claim.exp_lhs) + " vs " +
                                  std::to_string(claim.exp_rhs));
    }
    c.require(table_rows == 23, std::to_string(table_rows) + " table rows");

    bool text_23_193 = false;
    for (const InequalityClaim& claim : data.claims)
        if (claim.source == "text" && claim.exp_lhs == 23.0 && claim.exp_rhs == 193.0)
            text_23_193 = true;
    c.require(text_23_193, "missing the 23 < 193 text row");

    auto mut = [&](AminoAcid a) { return data.mutability_of(a); };
    c.require(mut(AminoAcid::Ala).pet91 == 100 && mut(AminoAcid::Ala).dayhoff == 100,
              "Ala != (100, 100)");
    c.require(mut(AminoAcid::Trp).pet91 == 25 && mut(AminoAcid::Trp).dayhoff == 18,
              "Trp != (25, 18)");
    c.require(mut(AminoAcid::Ser).pet91 == 117 && mut(AminoAcid::Ser).dayhoff == 120,
              "Ser != (117, 120)");
    report(7, "bundled dataset is self-consistent as transcribed", c);
}

// Criterion 8: the constant-strength baseline orders Trp/Met like PET91 and
// the hierarchy report carries per-link flags.
void criterion_baseline_hierarchy() {
    Criterion c;
    ModelParams p = ModelParams::create(1, 1, 1, 2);
    CodonUsage u = CodonUsage::uniform();
    StrengthFunction one = StrengthFunction::constant(1.0);
    double trp = mutability(AminoAcid::Trp, p, one, u);
    double met = mutability(AminoAcid::Met, p, one, u);
    c.require(trp == 7.0, "mutability(Trp) = " + std::to_string(trp));
    c.require(met == 9.0, "mutability(Met) = " + std::to_string(met));
    c.require(trp < met, "Trp not stabler than Met");

    ExperimentalDataset data = io::load_dataset(io::default_data_dir());
    c.require(data.mutability_of(AminoAcid::Trp).pet91 <
                  data.mutability_of(AminoAcid::Met).pet91,
              "PET91 direction differs");

    HierarchyReport rep = hierarchy_report(p, one, u, data);
    c.require(rep.entries.size() == 20, "hierarchy entries != 20");
    c.require(rep.links.size() == 11, "hierarchy links != 11");
    for (const HierarchyLink& link : rep.links) {
        if (link.more_stable == AminoAcid::Trp)
            c.require(link.model_ok && link.exp_ok, "Trp >> Met link not flagged ok");
    }
    report(8, "baseline hierarchy direction: mutability Trp 7 < Met 9", c);
}

// Criterion 9: bit-exact matrix round trips and byte-deterministic reports.
void criterion_round_trips() {
    Criterion c;
    CounterRng rng(99, 0);
    for (int draw = 0; draw < 3; ++draw) {
        CodonMatrix m = build_generator(random_params(rng),
                                        StrengthFunction::exponential(0.01));
        CodonMatrix back = io::matrix_from_csv(io::matrix_to_csv(m));
        c.require(back.m == m.m, "CSV entries not bit-exact");
        c.require(back.params.alpha == m.params.alpha && back.params.beta == m.params.beta &&
                      back.params.gamma == m.params.gamma && back.params.eta == m.params.eta,
                  "CSV metadata not bit-exact");
        CodonMatrix back_json = io::matrix_from_json(io::matrix_to_json(m));
        c.require(back_json.m == m.m, "JSON entries not bit-exact");
    }

    auto run_cli = [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        cli::run(args, out, err);
        return out.str();
    };
    std::vector<std::string> predict_args{"predict", "--eta", "2.5", "--json"};
    c.require(run_cli(predict_args) == run_cli(predict_args), "predict JSON not deterministic");
    std::vector<std::string> fit_args{"fit",    "--seeds", "2",  "--iters",
                                      "5",      "--seed",  "21", "--json"};
    c.require(run_cli(fit_args) == run_cli(fit_args), "fit JSON not deterministic");
    report(9, "round trips bit-exact, reports byte-deterministic", c);
}

}  // namespace

int main() {
    criterion_crystal_oracle();
    criterion_charge();
    criterion_distance_spots();
    criterion_generator_properties();
    criterion_markov_reduction();
    criterion_eq15_feasibility();
    criterion_dataset_consistency();
    criterion_baseline_hierarchy();
    criterion_round_trips();

    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
