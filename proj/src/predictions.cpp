#include "cct/predictions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "cct/errors.hpp"

namespace cct {

namespace {

constexpr double kMarginEps = 1e-12;

std::string pair_label(AminoAcid a, AminoAcid b) {
    return std::string(three_letter(a)) + "<->" + std::string(three_letter(b));
}

}  // namespace

std::string InequalityClaim::label() const {
    return pair_label(lhs_a, lhs_b) + (approx ? " <~ " : " < ") + pair_label(rhs_a, rhs_b);
}

double ExperimentalDataset::rate_for(AminoAcid a, AminoAcid b) const {
    for (const auto& r : rates)
        if ((r.a == a && r.b == b) || (r.a == b && r.b == a)) return r.value;
    throw Error("dataset", "no experimental rate for " + pair_label(a, b));
}

Eq15Result check_eq15(double alpha, double beta, double gamma) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0))
        throw Error("params", "check_eq15 needs positive alpha, beta, gamma");
    Eq15Result r;
    r.terms = {std::abs(60.0 * gamma - 4.0 * beta - 10.0 * alpha),
               std::abs(12.0 * gamma - 2.0 * alpha),
               std::abs(36.0 * gamma - 4.0 * beta - 2.0 * alpha)};
    r.ok = r.terms[0] > r.terms[1] && r.terms[1] > r.terms[2];
    return r;
}

namespace {

double normalized_margin(double lhs, double rhs) {
    return (rhs - lhs) / (rhs + lhs + kMarginEps);
}

bool approx_equal(double a, double b, double slack) {
    return std::abs(a - b) <= slack * std::max(std::abs(a), std::abs(b));
}

struct ChainSpec {
    AminoAcid more_stable, less_stable;
    ChainRelation rel;
    bool starred;
};

// Stability chains; starred links involve a sextet (Ser, Leu) or the Ile
// triplet, where the counting argument is less reliable.
const ChainSpec kChains[] = {
    {AminoAcid::Gly, AminoAcid::Pro, ChainRelation::greater, false},
    {AminoAcid::Pro, AminoAcid::Ala, ChainRelation::greater, false},
    {AminoAcid::Ala, AminoAcid::Thr, ChainRelation::greater, false},
    {AminoAcid::Thr, AminoAcid::Ser, ChainRelation::greater, true},
    {AminoAcid::Phe, AminoAcid::Lys, ChainRelation::greater, false},
    {AminoAcid::Lys, AminoAcid::Ile, ChainRelation::greater, true},
    {AminoAcid::Ile, AminoAcid::Asn, ChainRelation::greater, true},
    {AminoAcid::Leu, AminoAcid::Val, ChainRelation::greater, true},
    {AminoAcid::Glu, AminoAcid::Asp, ChainRelation::greater, false},
    {AminoAcid::His, AminoAcid::Gln, ChainRelation::approx_equal, false},
    {AminoAcid::Trp, AminoAcid::Met, ChainRelation::much_greater, false},
};

}  // namespace

HierarchyReport hierarchy_report(const ModelParams& p, const StrengthFunction& f,
                                 const CodonUsage& usage, const ExperimentalDataset& data,
                                 const EvalOptions& opts) {
    HierarchyReport out;
    for (int i = 0; i < kNumAminoAcids; ++i) {
        AminoAcid a = static_cast<AminoAcid>(i);
        out.entries.push_back(HierarchyEntry{
            a, static_cast<int>(multiplet(a).size()),
            mutability(a, p, f, usage, opts.charge),
            data.mutability_of(a).pet91, data.mutability_of(a).dayhoff});
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const HierarchyEntry& a, const HierarchyEntry& b) {
                  if (a.multiplet_size != b.multiplet_size)
                      return a.multiplet_size > b.multiplet_size;
                  if (a.model != b.model) return a.model < b.model;
                  return a.aa < b.aa;
              });

    auto model_of = [&](AminoAcid a) {
        for (const auto& e : out.entries)
            if (e.aa == a) return e.model;
        return 0.0;
    };

    for (const ChainSpec& spec : kChains) {
        HierarchyLink link;
        link.more_stable = spec.more_stable;
        link.less_stable = spec.less_stable;
        link.rel = spec.rel;
        link.starred = spec.starred;
        link.model_stable = model_of(spec.more_stable);
        link.model_unstable = model_of(spec.less_stable);
        double exp_stable = data.mutability_of(spec.more_stable).pet91;
        double exp_unstable = data.mutability_of(spec.less_stable).pet91;
        if (spec.rel == ChainRelation::approx_equal) {
            link.model_ok = approx_equal(link.model_stable, link.model_unstable,
                                         opts.approx_slack);
            link.exp_ok = approx_equal(exp_stable, exp_unstable, opts.approx_slack);
        } else {
            link.model_ok = link.model_stable < link.model_unstable;
            link.exp_ok = exp_stable < exp_unstable;
        }
        out.links.push_back(link);
    }
    return out;
}

EtaBoundReport eta_bound(const ModelParams& p, const StrengthFunction& f,
                         const CodonUsage& usage, const ExperimentalDataset& data,
                         const EvalOptions& opts) {
    AminoAcidMatrix am = aggregate(build_generator(p, f, opts.charge), usage);
    EtaBoundReport out;
    out.eta = p.eta;
    out.exceeds_two = p.eta > 2.0;
    out.model_phe_leu = pair_rate(am, AminoAcid::Phe, AminoAcid::Leu);
    out.model_phe_tyr = pair_rate(am, AminoAcid::Phe, AminoAcid::Tyr);
    out.exp_phe_leu = data.rate_for(AminoAcid::Phe, AminoAcid::Leu);
    out.exp_phe_tyr = data.rate_for(AminoAcid::Phe, AminoAcid::Tyr);
    return out;
}

PredictionReport evaluate_claims(const ModelParams& p, const StrengthFunction& f,
                                 const CodonUsage& usage, const ExperimentalDataset& data,
                                 const EvalOptions& opts) {
    AminoAcidMatrix am = aggregate(build_generator(p, f, opts.charge), usage);

    PredictionReport rep;
    rep.params = p;
    rep.strength = f;
    rep.charge = opts.charge;
    rep.approx_slack = opts.approx_slack;

    for (const InequalityClaim& claim : data.claims) {
        ClaimResult res;
        res.claim = claim;
        res.model_lhs = pair_rate(am, claim.lhs_a, claim.lhs_b);
        res.model_rhs = pair_rate(am, claim.rhs_a, claim.rhs_b);
        res.satisfied = res.model_lhs < res.model_rhs;
        res.margin = normalized_margin(res.model_lhs, res.model_rhs);
        res.approx_ok = res.satisfied ||
                        (claim.approx &&
                         approx_equal(res.model_lhs, res.model_rhs, opts.approx_slack));
        rep.claims.push_back(res);
        rep.satisfied_count += res.satisfied ? 1 : 0;
        rep.approx_ok_count += res.approx_ok ? 1 : 0;
    }

    rep.doublets.asn_lys = pair_rate(am, AminoAcid::Asn, AminoAcid::Lys);
    rep.doublets.asp_glu = pair_rate(am, AminoAcid::Asp, AminoAcid::Glu);
    rep.doublets.his_gln = pair_rate(am, AminoAcid::His, AminoAcid::Gln);
    auto distinct = [](double a, double b) {
        return std::abs(a - b) > 1e-9 * std::max({std::abs(a), std::abs(b), 1e-300});
    };
    rep.doublets.pairwise_distinct = distinct(rep.doublets.asn_lys, rep.doublets.asp_glu) &&
                                     distinct(rep.doublets.asn_lys, rep.doublets.his_gln) &&
                                     distinct(rep.doublets.asp_glu, rep.doublets.his_gln);

    rep.eq15 = check_eq15(p.alpha, p.beta, p.gamma);
    rep.eta = eta_bound(p, f, usage, data, opts);
    rep.hierarchy = hierarchy_report(p, f, usage, data, opts);
    return rep;
}

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string_view relation_name(ChainRelation r) {
    switch (r) {
        case ChainRelation::greater: return ">";
        case ChainRelation::much_greater: return ">>";
        case ChainRelation::approx_equal: return "~";
    }
    return {};
}

}  // namespace

std::string report_to_text(const PredictionReport& r) {
    std::string out;
    out += "params: alpha=" + fmt(r.params.alpha) + " beta=" + fmt(r.params.beta) +
           " gamma=" + fmt(r.params.gamma) + " eta=" + fmt(r.params.eta) + "\n";
    out += "strength: " + r.strength.str() +
           "  charge: " + std::string(charge_source_name(r.charge)) + "\n\n";

    out += "claims: " + std::to_string(r.satisfied_count) + "/" +
           std::to_string(r.claims.size()) + " satisfied strictly, " +
           std::to_string(r.approx_ok_count) + "/" + std::to_string(r.claims.size()) +
           " within slack " + fmt6(r.approx_slack) + "\n";
    for (std::size_t i = 0; i < r.claims.size(); ++i) {
        const ClaimResult& c = r.claims[i];
        char head[32];
        std::snprintf(head, sizeof head, "  [%2zu] %-4s ", i + 1,
                      c.satisfied ? "ok" : (c.approx_ok ? "~ok" : "VIOL"));
        out += head;
        out += c.claim.label() + "  model " + fmt6(c.model_lhs) + " | " + fmt6(c.model_rhs) +
               "  exp " + fmt6(c.claim.exp_lhs) + " | " + fmt6(c.claim.exp_rhs) + "  (" +
               c.claim.source + ")\n";
    }

    out += "\ndoublet rates (3rd-position Y<->R, middle A):\n";
    out += "  Asn<->Lys " + fmt6(r.doublets.asn_lys) + "  Asp<->Glu " +
           fmt6(r.doublets.asp_glu) + "  His<->Gln " + fmt6(r.doublets.his_gln) +
           "  pairwise distinct: " + (r.doublets.pairwise_distinct ? "yes" : "no") + "\n";

    out += "\neq15 chain: " + std::string(r.eq15.ok ? "ok" : "violated") + "  terms " +
           fmt6(r.eq15.terms[0]) + " > " + fmt6(r.eq15.terms[1]) + " > " +
           fmt6(r.eq15.terms[2]) + "\n";

    out += "\neta: " + fmt6(r.eta.eta) + " (>2: " + (r.eta.exceeds_two ? "yes" : "no") +
           ")  Phe<->Leu " + fmt6(r.eta.model_phe_leu) + " vs Phe<->Tyr " +
           fmt6(r.eta.model_phe_tyr) + "  exp " + fmt6(r.eta.exp_phe_leu) + " | " +
           fmt6(r.eta.exp_phe_tyr) + "\n";

    out += "\nmutability by multiplet size (model; PET91; Dayhoff):\n";
    int last_size = -1;
    for (const HierarchyEntry& e : r.hierarchy.entries) {
        if (e.multiplet_size != last_size) {
            out += "  size " + std::to_string(e.multiplet_size) + ":\n";
            last_size = e.multiplet_size;
        }
        out += "    " + std::string(three_letter(e.aa)) + "  " + fmt6(e.model) + "  " +
               fmt6(e.pet91) + "  " + fmt6(e.dayhoff) + "\n";
    }

    out += "stability chain links (model | PET91):\n";
    for (const HierarchyLink& l : r.hierarchy.links) {
        out += "  " + std::string(three_letter(l.more_stable)) + " " +
               std::string(relation_name(l.rel)) + " " +
               std::string(three_letter(l.less_stable)) + (l.starred ? " *" : "") +
               "  model " + (l.model_ok ? "ok" : "off") + " (" + fmt6(l.model_stable) +
               " vs " + fmt6(l.model_unstable) + ")  exp " + (l.exp_ok ? "ok" : "off") +
               "\n";
    }
    return out;
}

std::string report_to_json(const PredictionReport& r) {
    nlohmann::ordered_json j;
    j["params"] = {{"alpha", r.params.alpha},
                   {"beta", r.params.beta},
                   {"gamma", r.params.gamma},
                   {"eta", r.params.eta}};
    j["strength"] = r.strength.str();
    j["charge"] = charge_source_name(r.charge);
    j["approx_slack"] = r.approx_slack;

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ClaimResult& c : r.claims) {
        rows.push_back({{"lhs", pair_label(c.claim.lhs_a, c.claim.lhs_b)},
                        {"rhs", pair_label(c.claim.rhs_a, c.claim.rhs_b)},
                        {"relation", c.claim.approx ? "<~" : "<"},
                        {"source", c.claim.source},
                        {"exp_lhs", c.claim.exp_lhs},
                        {"exp_rhs", c.claim.exp_rhs},
                        {"model_lhs", c.model_lhs},
                        {"model_rhs", c.model_rhs},
                        {"satisfied", c.satisfied},
                        {"approx_ok", c.approx_ok},
                        {"margin", c.margin}});
    }
    j["claims"] = {{"total", r.claims.size()},
                   {"satisfied", r.satisfied_count},
                   {"approx_ok", r.approx_ok_count},
                   {"rows", rows}};

    j["doublet_rates"] = {{"asn_lys", r.doublets.asn_lys},
                          {"asp_glu", r.doublets.asp_glu},
                          {"his_gln", r.doublets.his_gln},
                          {"pairwise_distinct", r.doublets.pairwise_distinct}};

    j["eq15"] = {{"ok", r.eq15.ok}, {"terms", r.eq15.terms}};

    j["eta_bound"] = {{"eta", r.eta.eta},
                      {"exceeds_two", r.eta.exceeds_two},
                      {"model_phe_leu", r.eta.model_phe_leu},
                      {"model_phe_tyr", r.eta.model_phe_tyr},
                      {"exp_phe_leu", r.eta.exp_phe_leu},
                      {"exp_phe_tyr", r.eta.exp_phe_tyr}};

    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const HierarchyEntry& e : r.hierarchy.entries) {
        entries.push_back({{"aa", three_letter(e.aa)},
                           {"multiplet", e.multiplet_size},
                           {"model", e.model},
                           {"pet91", e.pet91},
                           {"dayhoff", e.dayhoff}});
    }
    nlohmann::ordered_json links = nlohmann::ordered_json::array();
    for (const HierarchyLink& l : r.hierarchy.links) {
        links.push_back({{"more_stable", three_letter(l.more_stable)},
                         {"less_stable", three_letter(l.less_stable)},
                         {"relation", relation_name(l.rel)},
                         {"starred", l.starred},
                         {"model_stable", l.model_stable},
                         {"model_unstable", l.model_unstable},
                         {"model_ok", l.model_ok},
                         {"exp_ok", l.exp_ok}});
    }
    j["hierarchy"] = {{"entries", entries}, {"links", links}};

    return j.dump(2) + "\n";
}

}  // namespace cct
