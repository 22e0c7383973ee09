#include "cct/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cct/errors.hpp"
#include "cct/fit.hpp"
#include "cct/io.hpp"

namespace cct::cli {

namespace {

using nlohmann::ordered_json;

std::string format_value(double v, int round_digits) {
    if (round_digits >= 0) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", round_digits, v);
        return buf;
    }
    return io::format_double(v);
}

struct ParamFlags {
    double alpha = 1.0, beta = 1.0, gamma = 1.0, eta = 2.0;
    std::string charge = "table";

    void attach(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "model parameter alpha")->capture_default_str();
        cmd->add_option("--beta", beta, "model parameter beta")->capture_default_str();
        cmd->add_option("--gamma", gamma, "model parameter gamma")->capture_default_str();
        cmd->add_option("--eta", eta, "model parameter eta (> 1)")->capture_default_str();
        cmd->add_option("--charge", charge, "dimer charge source: table or formula")
            ->capture_default_str();
    }

    ModelParams params() const { return ModelParams::create(alpha, beta, gamma, eta); }
    ChargeSource source() const { return parse_charge_source(charge); }
};

// Writes to `path` when nonempty, else to the stream.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty())
        out << text;
    else
        io::write_file(path, text);
}

std::string dimer_check_text() {
    std::string out;
    out += "# charge check: Eq-(5) formula vs bundled table\n";
    out += "# columns: dimer\tformula\ttable\tstatus\n";
    int agree = 0;
    std::vector<std::string> mismatches;
    for (int first = 0; first < kNumNucs; ++first) {
        for (int second = 0; second < kNumNucs; ++second) {
            Nuc a = static_cast<Nuc>(first);
            Nuc b = static_cast<Nuc>(second);
            int qf = charge_formula(a, b);
            int qt = charge_table(a, b);
            bool ok = qf == qt;
            agree += ok ? 1 : 0;
            std::string dimer{nuc_char(a), nuc_char(b)};
            out += dimer + "\t" + std::to_string(qf) + "\t" + std::to_string(qt) + "\t" +
                   (ok ? "ok" : "MISMATCH") + "\n";
            if (!ok)
                mismatches.push_back(dimer + " (formula " + std::to_string(qf) + ", table " +
                                     std::to_string(qt) + ")");
        }
    }
    out += "# agree on " + std::to_string(agree) + "/16 dimers";
    if (!mismatches.empty()) {
        out += "; mismatches:";
        for (const auto& m : mismatches) out += " " + m;
    }
    out += "\n";
    return out;
}

ordered_json dimer_check_json() {
    ordered_json rows = ordered_json::array();
    int agree = 0;
    for (int first = 0; first < kNumNucs; ++first) {
        for (int second = 0; second < kNumNucs; ++second) {
            Nuc a = static_cast<Nuc>(first);
            Nuc b = static_cast<Nuc>(second);
            int qf = charge_formula(a, b);
            int qt = charge_table(a, b);
            agree += qf == qt ? 1 : 0;
            rows.push_back({{"dimer", std::string{nuc_char(a), nuc_char(b)}},
                            {"formula", qf},
                            {"table", qt},
                            {"match", qf == qt}});
        }
    }
    return ordered_json{{"agree", agree}, {"total", 16}, {"rows", rows}};
}

ordered_json tables_json(const std::string& which) {
    ordered_json rows = ordered_json::array();
    if (which == "codons") {
        for (Codon c : all_codons()) {
            const CodonRecord& rec = codon_record(c);
            rows.push_back({{"codon", codon_str(c)},
                            {"aa", rec.aa ? std::string(three_letter(*rec.aa)) : "Ter"},
                            {"j_h", format_half_int(rec.irrep.two_j_h)},
                            {"j_v", format_half_int(rec.irrep.two_j_v)},
                            {"copy", rec.irrep.copy},
                            {"j3_h", format_half_int(rec.weight.two_j3_h)},
                            {"j3_v", format_half_int(rec.weight.two_j3_v)}});
        }
    } else {
        for (int first = 0; first < kNumNucs; ++first) {
            for (int second = 0; second < kNumNucs; ++second) {
                Nuc a = static_cast<Nuc>(first);
                Nuc b = static_cast<Nuc>(second);
                const DimerRecord& d = dimer_record(a, b);
                rows.push_back({{"dimer", std::string{nuc_char(a), nuc_char(b)}},
                                {"j_h", format_half_int(d.two_j_h)},
                                {"j_v", format_half_int(d.two_j_v)},
                                {"j3_h", format_half_int(d.two_j3_h)},
                                {"j3_v", format_half_int(d.two_j3_v)},
                                {"q", d.charge}});
            }
        }
    }
    return ordered_json{{"table", which}, {"rows", rows}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"crystal-basis codon mutation model toolkit", "cct"};
    app.require_subcommand(1);

    // tables
    auto* tables_cmd = app.add_subcommand("tables", "print bundled tables as TSV");
    std::string tables_which;
    bool tables_check = false;
    bool tables_json_flag = false;
    tables_cmd->add_option("which", tables_which, "codons or dimers")
        ->required()
        ->check(CLI::IsMember({"codons", "dimers"}));
    tables_cmd->add_flag("--check", tables_check, "compare formula charge against the table");
    tables_cmd->add_flag("--json", tables_json_flag, "JSON output");

    // irrep
    auto* irrep_cmd = app.add_subcommand("irrep", "irrep assignment of a codon");
    std::string irrep_codon;
    bool irrep_json = false;
    irrep_cmd->add_option("codon", irrep_codon, "codon, e.g. CAC")->required();
    irrep_cmd->add_flag("--json", irrep_json, "JSON output");

    // charge
    auto* charge_cmd = app.add_subcommand("charge", "charge Q of a dinucleotide");
    std::string charge_dimer;
    std::string charge_src = "table";
    bool charge_json = false;
    charge_cmd->add_option("dimer", charge_dimer, "dinucleotide, e.g. CC")->required();
    charge_cmd->add_option("--source", charge_src, "table or formula")->capture_default_str();
    charge_cmd->add_flag("--json", charge_json, "JSON output");

    // r
    auto* r_cmd = app.add_subcommand("r", "codon eigenvalue r");
    std::string r_codon;
    ParamFlags r_params;
    int r_round = -1;
    bool r_json = false;
    r_cmd->add_option("codon", r_codon, "codon")->required();
    r_params.attach(r_cmd);
    r_cmd->add_option("--round", r_round, "round to N decimal places");
    r_cmd->add_flag("--json", r_json, "JSON output");

    // dist
    auto* dist_cmd = app.add_subcommand("dist", "distance between two codons");
    std::string dist_c1, dist_c2;
    ParamFlags dist_params;
    int dist_round = -1;
    bool dist_json = false;
    dist_cmd->add_option("codon1", dist_c1, "first codon")->required();
    dist_cmd->add_option("codon2", dist_c2, "second codon")->required();
    dist_params.attach(dist_cmd);
    dist_cmd->add_option("--round", dist_round, "round to N decimal places");
    dist_cmd->add_flag("--json", dist_json, "JSON output");

    // matrix
    auto* matrix_cmd = app.add_subcommand("matrix", "build the 61x61 mutation generator");
    ParamFlags matrix_params;
    std::string matrix_strength = "exp:lambda=0.01";
    std::string matrix_out;
    bool matrix_json = false;
    matrix_params.attach(matrix_cmd);
    matrix_cmd->add_option("--strength", matrix_strength, "exp:lambda=.., pow:p=..,scale=.., const:c=..")
        ->capture_default_str();
    matrix_cmd->add_option("-o,--out", matrix_out, "output file (.csv or .json)");
    matrix_cmd->add_flag("--json", matrix_json, "JSON output");

    // expm
    auto* expm_cmd = app.add_subcommand("expm", "evolve a generator matrix");
    std::string expm_in, expm_out;
    double expm_t = 0.0, expm_tau = 0.0;
    bool expm_pam = false, expm_json = false;
    auto* expm_in_opt = expm_cmd->add_option("-i,--in", expm_in, "generator CSV/JSON file");
    expm_in_opt->required();
    auto* t_opt = expm_cmd->add_option("-t,--time", expm_t, "continuous time: P(t) = exp(Qt)");
    auto* tau_opt = expm_cmd->add_option("--step", expm_tau, "one discrete step I + tau*Q");
    auto* pam_opt = expm_cmd->add_flag("--pam", expm_pam, "1-PAM approximation I + 0.1*Q");
    expm_cmd->add_option("-o,--out", expm_out, "output file (.csv or .json)");
    expm_cmd->add_flag("--json", expm_json, "JSON output");

    // aggregate
    auto* agg_cmd = app.add_subcommand("aggregate", "aggregate a codon matrix to amino acids");
    std::string agg_in, agg_out, agg_usage;
    bool agg_json = false;
    agg_cmd->add_option("-i,--in", agg_in, "codon matrix CSV/JSON file")->required();
    agg_cmd->add_option("--usage", agg_usage, "codon usage TSV (default: uniform)");
    agg_cmd->add_option("-o,--out", agg_out, "output file (.csv or .json)");
    agg_cmd->add_flag("--json", agg_json, "JSON output");

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "evaluate the bundled predictions");
    ParamFlags predict_params;
    std::string predict_strength = "exp:lambda=0.01";
    std::string predict_usage, predict_data, predict_json_path;
    double predict_slack = 0.1;
    predict_params.attach(predict_cmd);
    predict_cmd->add_option("--strength", predict_strength, "strength function")
        ->capture_default_str();
    predict_cmd->add_option("--usage", predict_usage, "codon usage TSV (default: uniform)");
    predict_cmd->add_option("--data", predict_data, "dataset directory");
    predict_cmd->add_option("--slack", predict_slack, "relative slack for approx rows")
        ->capture_default_str();
    auto* predict_json_opt =
        predict_cmd->add_option("--json", predict_json_path, "JSON output (optionally to a file)")
            ->expected(0, 1);

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "search parameters maximizing claim agreement");
    FitConfig fit_cfg;
    std::string fit_objective_name = "margin";
    std::string fit_strength = "exp:lambda=0.01";
    std::string fit_usage, fit_data, fit_json_path;
    std::uint64_t fit_seed = 0;
    fit_cmd->add_option("--seeds", fit_cfg.seeds, "multi-start count")->capture_default_str();
    fit_cmd->add_option("--iters", fit_cfg.iterations, "simplex iterations per start")
        ->capture_default_str();
    fit_cmd->add_option("--objective", fit_objective_name, "margin or count")
        ->capture_default_str()
        ->check(CLI::IsMember({"margin", "count"}));
    fit_cmd->add_option("--eta-min", fit_cfg.eta_min, "hard lower bound on eta (1 or 2)")
        ->capture_default_str();
    fit_cmd->add_flag("--require-eq15", fit_cfg.require_eq15,
                      "only accept points satisfying the eq15 chain");
    fit_cmd->add_option("--seed", fit_seed, "rng seed")->capture_default_str();
    fit_cmd->add_option("--max-evals", fit_cfg.max_evaluations, "evaluation budget (0 = off)")
        ->capture_default_str();
    fit_cmd->add_option("--strength", fit_strength, "strength function")->capture_default_str();
    fit_cmd->add_option("--usage", fit_usage, "codon usage TSV (default: uniform)");
    fit_cmd->add_option("--data", fit_data, "dataset directory");
    auto* fit_json_opt =
        fit_cmd->add_option("--json", fit_json_path, "JSON output (optionally to a file)")
            ->expected(0, 1);

    std::vector<std::string> argv_like = args;
    argv_like.insert(argv_like.begin(), "cct");
    std::vector<const char*> argv;
    argv.reserve(argv_like.size());
    for (const auto& a : argv_like) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (tables_cmd->parsed()) {
            if (tables_json_flag) {
                ordered_json j = tables_json(tables_which);
                if (tables_check && tables_which == "dimers") j["check"] = dimer_check_json();
                out << j.dump(2) << "\n";
            } else if (tables_check && tables_which == "dimers") {
                out << dimer_check_text();
            } else {
                out << (tables_which == "codons" ? io::codon_table_tsv()
                                                 : io::dimer_table_tsv());
            }
            return 0;
        }

        if (irrep_cmd->parsed()) {
            Codon c = parse_codon(irrep_codon);
            const CodonRecord& rec = codon_record(c);
            std::string aa = rec.aa ? std::string(three_letter(*rec.aa)) : "Ter";
            if (irrep_json) {
                ordered_json j{{"codon", codon_str(c)},
                               {"irrep", format_irrep(rec.irrep)},
                               {"j_h", format_half_int(rec.irrep.two_j_h)},
                               {"j_v", format_half_int(rec.irrep.two_j_v)},
                               {"copy", rec.irrep.copy},
                               {"j3_h", format_half_int(rec.weight.two_j3_h)},
                               {"j3_v", format_half_int(rec.weight.two_j3_v)},
                               {"aa", aa}};
                out << j.dump(2) << "\n";
            } else {
                out << format_irrep(rec.irrep) << " J3H=" << format_half_int(rec.weight.two_j3_h)
                    << " J3V=" << format_half_int(rec.weight.two_j3_v) << " " << aa << "\n";
            }
            return 0;
        }

        if (charge_cmd->parsed()) {
            if (charge_dimer.size() != 2)
                throw Error("dimer", "expected two nucleotides, got \"" + charge_dimer + "\"");
            Nuc a = parse_nuc(charge_dimer[0]);
            Nuc b = parse_nuc(charge_dimer[1]);
            ChargeSource src = parse_charge_source(charge_src);
            int q = charge(a, b, src);
            if (charge_json) {
                ordered_json j{{"dimer", std::string{nuc_char(a), nuc_char(b)}},
                               {"source", charge_src},
                               {"charge", q}};
                out << j.dump(2) << "\n";
            } else {
                out << q << "\n";
            }
            return 0;
        }

        if (r_cmd->parsed()) {
            Codon c = parse_codon(r_codon);
            double v = r_value(c, r_params.params(), r_params.source());
            if (r_json) {
                ordered_json j{{"codon", codon_str(c)}, {"r", v}};
                out << j.dump(2) << "\n";
            } else {
                out << format_value(v, r_round) << "\n";
            }
            return 0;
        }

        if (dist_cmd->parsed()) {
            Codon c1 = parse_codon(dist_c1);
            Codon c2 = parse_codon(dist_c2);
            double v = distance(c1, c2, dist_params.params(), dist_params.source());
            if (dist_json) {
                ordered_json j{{"codon1", codon_str(c1)}, {"codon2", codon_str(c2)},
                               {"distance", v}};
                out << j.dump(2) << "\n";
            } else {
                out << format_value(v, dist_round) << "\n";
            }
            return 0;
        }

        if (matrix_cmd->parsed()) {
            CodonMatrix m = build_generator(matrix_params.params(),
                                            StrengthFunction::parse(matrix_strength),
                                            matrix_params.source());
            bool as_json = matrix_json || std::filesystem::path(matrix_out).extension() == ".json";
            emit(as_json ? io::matrix_to_json(m) : io::matrix_to_csv(m), matrix_out, out);
            return 0;
        }

        if (expm_cmd->parsed()) {
            int modes = (t_opt->count() ? 1 : 0) + (tau_opt->count() ? 1 : 0) +
                        (pam_opt->count() ? 1 : 0);
            if (modes != 1)
                throw Error("matrix", "pick exactly one of --time, --step, --pam");
            CodonMatrix gen = io::load_matrix(expm_in);
            CodonMatrix res = t_opt->count() ? evolve(gen, expm_t)
                              : tau_opt->count() ? discrete_step(gen, expm_tau)
                                                 : pam_matrix(gen);
            bool as_json = expm_json || std::filesystem::path(expm_out).extension() == ".json";
            emit(as_json ? io::matrix_to_json(res) : io::matrix_to_csv(res), expm_out, out);
            return 0;
        }

        if (agg_cmd->parsed()) {
            CodonMatrix m = io::load_matrix(agg_in);
            CodonUsage usage =
                agg_usage.empty() ? CodonUsage::uniform() : io::load_usage(agg_usage);
            AminoAcidMatrix am = aggregate(m, usage);
            bool as_json = agg_json || std::filesystem::path(agg_out).extension() == ".json";
            emit(as_json ? io::aa_matrix_to_json(am) : io::aa_matrix_to_csv(am), agg_out, out);
            return 0;
        }

        if (predict_cmd->parsed()) {
            ExperimentalDataset data =
                io::load_dataset(predict_data.empty() ? io::default_data_dir()
                                                      : std::filesystem::path(predict_data));
            CodonUsage usage =
                predict_usage.empty() ? CodonUsage::uniform() : io::load_usage(predict_usage);
            EvalOptions opts;
            opts.approx_slack = predict_slack;
            opts.charge = predict_params.source();
            PredictionReport rep =
                evaluate_claims(predict_params.params(),
                                StrengthFunction::parse(predict_strength), usage, data, opts);
            if (predict_json_opt->count())
                emit(report_to_json(rep), predict_json_path, out);
            else
                out << report_to_text(rep);
            return 0;
        }

        if (fit_cmd->parsed()) {
            fit_cfg.objective = fit_objective_name == "count" ? FitConfig::Objective::count
                                                              : FitConfig::Objective::soft_margin;
            fit_cfg.rng_seed = fit_seed;
            fit_cfg.strength = StrengthFunction::parse(fit_strength);
            ExperimentalDataset data =
                io::load_dataset(fit_data.empty() ? io::default_data_dir()
                                                  : std::filesystem::path(fit_data));
            CodonUsage usage =
                fit_usage.empty() ? CodonUsage::uniform() : io::load_usage(fit_usage);
            FitResult res = search(fit_cfg, usage, data);

            ordered_json j;
            j["config"] = {{"seeds", fit_cfg.seeds},
                           {"iterations", fit_cfg.iterations},
                           {"objective", fit_objective_name},
                           {"eta_min", fit_cfg.eta_min},
                           {"require_eq15", fit_cfg.require_eq15},
                           {"rng_seed", fit_cfg.rng_seed},
                           {"max_evaluations", fit_cfg.max_evaluations},
                           {"strength", fit_cfg.strength.str()}};
            j["found"] = res.found;
            if (res.found) {
                j["params"] = {{"alpha", res.best->alpha},
                               {"beta", res.best->beta},
                               {"gamma", res.best->gamma},
                               {"eta", res.best->eta}};
                j["soft_margin"] = res.soft_margin;
                j["satisfied"] = res.satisfied_count;
                j["total"] = res.total_claims;
                j["violated"] = res.violated;
                j["eq15"] = {{"ok", res.eq15.ok}, {"terms", res.eq15.terms}};
            }
            j["evaluations"] = res.evaluations;
            ordered_json trace = ordered_json::array();
            for (const auto& [e, v] : res.trace) trace.push_back({e, v});
            j["trace"] = trace;

            if (fit_json_opt->count()) {
                emit(j.dump(2) + "\n", fit_json_path, out);
            } else if (res.found) {
                out << "best: alpha=" << io::format_double(res.best->alpha)
                    << " beta=" << io::format_double(res.best->beta)
                    << " gamma=" << io::format_double(res.best->gamma)
                    << " eta=" << io::format_double(res.best->eta) << "\n"
                    << "claims satisfied: " << res.satisfied_count << "/" << res.total_claims
                    << "  soft margin: " << io::format_double(res.soft_margin)
                    << "  eq15: " << (res.eq15.ok ? "ok" : "violated") << "\n"
                    << "evaluations: " << res.evaluations << "\n";
                for (const auto& v : res.violated) out << "violated: " << v << "\n";
            }
            if (!res.found) {
                err << "error: fit: no feasible point found within budget ("
                    << res.evaluations << " evaluations)\n";
                return 1;
            }
            return 0;
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }

    err << "error: usage: no command\n";
    return 2;
}

}  // namespace cct::cli
