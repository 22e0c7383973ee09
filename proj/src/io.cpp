#include "cct/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "cct/errors.hpp"

#ifndef CCT_DEFAULT_DATA_DIR
#define CCT_DEFAULT_DATA_DIR "data"
#endif

namespace cct::io {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw Error("matrix-number", "malformed number \"" + s + "\"");
    }
}

std::string codon_table_tsv() {
    std::string out;
    out += "# codon irrep assignments, eukaryotic standard code\n";
    out += "# columns: codon\taa\tj_h\tj_v\tcopy\tj3_h\tj3_v\n";
    for (Codon c : all_codons()) {
        const CodonRecord& rec = codon_record(c);
        out += codon_str(c);
        out += '\t';
        out += rec.aa ? std::string(three_letter(*rec.aa)) : std::string("Ter");
        out += '\t';
        out += format_half_int(rec.irrep.two_j_h);
        out += '\t';
        out += format_half_int(rec.irrep.two_j_v);
        out += '\t';
        out += std::to_string(rec.irrep.copy);
        out += '\t';
        out += format_half_int(rec.weight.two_j3_h);
        out += '\t';
        out += format_half_int(rec.weight.two_j3_v);
        out += '\n';
    }
    return out;
}

std::string dimer_table_tsv() {
    std::string out;
    out += "# dinucleotide representation content and charge\n";
    out += "# columns: dimer\tj_h\tj_v\tj3_h\tj3_v\tq\n";
    for (int first = 0; first < kNumNucs; ++first) {
        for (int second = 0; second < kNumNucs; ++second) {
            Nuc a = static_cast<Nuc>(first);
            Nuc b = static_cast<Nuc>(second);
            const DimerRecord& d = dimer_record(a, b);
            out += nuc_char(a);
            out += nuc_char(b);
            out += '\t';
            out += format_half_int(d.two_j_h);
            out += '\t';
            out += format_half_int(d.two_j_v);
            out += '\t';
            out += format_half_int(d.two_j3_h);
            out += '\t';
            out += format_half_int(d.two_j3_v);
            out += '\t';
            out += std::to_string(d.charge);
            out += '\n';
        }
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    for (;;) {
        auto next = line.find(sep, pos);
        out.push_back(line.substr(pos, next == std::string::npos ? next : next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

struct MetadataBlock {
    CodonMatrix::Kind kind;
    ModelParams params;
    StrengthFunction strength;
    ChargeSource charge;
};

void append_metadata(std::string& out, std::string_view format_name,
                     const MetadataBlock& meta) {
    out += "# ";
    out += format_name;
    out += "\n# kind: ";
    out += matrix_kind_name(meta.kind);
    out += "\n# convention: entry (row j, column i) = rate i -> j\n";
    out += "# alpha: " + format_double(meta.params.alpha) + "\n";
    out += "# beta: " + format_double(meta.params.beta) + "\n";
    out += "# gamma: " + format_double(meta.params.gamma) + "\n";
    out += "# eta: " + format_double(meta.params.eta) + "\n";
    out += "# strength: " + meta.strength.str() + "\n";
    out += "# charge: " + std::string(charge_source_name(meta.charge)) + "\n";
}

MetadataBlock parse_metadata(const std::map<std::string, std::string>& kv) {
    auto need = [&](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw Error("matrix-format", std::string("missing metadata key \"") + key + "\"");
        return it->second;
    };
    MetadataBlock meta;
    meta.kind = parse_matrix_kind(need("kind"));
    meta.params = ModelParams{parse_double(need("alpha")), parse_double(need("beta")),
                              parse_double(need("gamma")), parse_double(need("eta"))};
    meta.strength = StrengthFunction::parse(need("strength"));
    meta.charge = parse_charge_source(need("charge"));
    return meta;
}

}  // namespace

std::string matrix_to_csv(const CodonMatrix& m) {
    std::string out;
    append_metadata(out, "cct-matrix", {m.kind, m.params, m.strength, m.charge_source});
    out += "codon";
    for (Codon c : sense_codons()) out += "," + codon_str(c);
    out += '\n';
    for (int j = 0; j < m.m.rows(); ++j) {
        out += codon_str(sense_codons()[static_cast<std::size_t>(j)]);
        for (int i = 0; i < m.m.cols(); ++i) out += "," + format_double(m.m(j, i));
        out += '\n';
    }
    return out;
}

CodonMatrix matrix_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::string> kv;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto colon = line.find(':');
            if (colon != std::string::npos) {
                std::string key = line.substr(2, colon - 2);
                std::string value = line.substr(colon + 1);
                if (!value.empty() && value.front() == ' ') value.erase(0, 1);
                kv[key] = value;
            }
            continue;
        }
        rows.push_back(line);
    }
    if (rows.empty()) throw Error("matrix-format", "no header row");

    const auto sense = sense_codons();
    const int n = static_cast<int>(sense.size());

    std::vector<std::string> header = split(rows[0], ',');
    if (static_cast<int>(header.size()) != n + 1)
        throw Error("matrix-dimension", "expected " + std::to_string(n) +
                                            " labels, got " + std::to_string(header.size() - 1));
    if (static_cast<int>(rows.size()) != n + 1)
        throw Error("matrix-dimension", "expected " + std::to_string(n) + " rows, got " +
                                            std::to_string(rows.size() - 1));

    auto check_label = [&](const std::string& label, int expected_index) {
        Codon c = parse_codon(label);
        if (is_stop(c))
            throw Error("matrix-label", "stop codon label " + label + ": matrices are sense-only");
        if (sense_index(c) != expected_index)
            throw Error("matrix-label", "label " + label + " out of canonical order");
    };
    for (int i = 0; i < n; ++i) check_label(header[static_cast<std::size_t>(i) + 1], i);

    CodonMatrix out;
    MetadataBlock meta = parse_metadata(kv);
    out.kind = meta.kind;
    out.params = meta.params;
    out.strength = meta.strength;
    out.charge_source = meta.charge;
    out.m = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<std::string> cells = split(rows[static_cast<std::size_t>(j) + 1], ',');
        if (static_cast<int>(cells.size()) != n + 1)
            throw Error("matrix-dimension", "row " + cells[0] + " has " +
                                                std::to_string(cells.size() - 1) + " entries");
        check_label(cells[0], j);
        for (int i = 0; i < n; ++i)
            out.m(j, i) = parse_double(cells[static_cast<std::size_t>(i) + 1]);
    }
    return out;
}

void save_matrix(const CodonMatrix& m, const std::filesystem::path& path) {
    if (path.extension() == ".json")
        write_file(path, matrix_to_json(m));
    else
        write_file(path, matrix_to_csv(m));
}

CodonMatrix load_matrix(const std::filesystem::path& path) {
    std::string text = read_file(path);
    if (path.extension() == ".json") return matrix_from_json(text);
    return matrix_from_csv(text);
}

namespace {

nlohmann::ordered_json metadata_json(const MetadataBlock& meta) {
    nlohmann::ordered_json j;
    j["kind"] = matrix_kind_name(meta.kind);
    j["convention"] = "entry[j][i] = rate i -> j";
    j["params"] = {{"alpha", meta.params.alpha},
                   {"beta", meta.params.beta},
                   {"gamma", meta.params.gamma},
                   {"eta", meta.params.eta}};
    j["strength"] = meta.strength.str();
    j["charge"] = charge_source_name(meta.charge);
    return j;
}

}  // namespace

std::string matrix_to_json(const CodonMatrix& m) {
    nlohmann::ordered_json j = metadata_json({m.kind, m.params, m.strength, m.charge_source});
    j["format"] = "cct-matrix";
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (Codon c : sense_codons()) labels.push_back(codon_str(c));
    j["labels"] = labels;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (int r = 0; r < m.m.rows(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int c = 0; c < m.m.cols(); ++c) row.push_back(m.m(r, c));
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j.dump(2) + "\n";
}

CodonMatrix matrix_from_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw Error("matrix-format", std::string("bad JSON: ") + e.what());
    }
    try {
        const auto sense = sense_codons();
        const int n = static_cast<int>(sense.size());
        auto labels = j.at("labels");
        if (static_cast<int>(labels.size()) != n)
            throw Error("matrix-dimension", "expected " + std::to_string(n) + " labels");
        for (int i = 0; i < n; ++i) {
            Codon c = parse_codon(labels.at(static_cast<std::size_t>(i)).get<std::string>());
            if (is_stop(c))
                throw Error("matrix-label",
                            "stop codon label " + codon_str(c) + ": matrices are sense-only");
            if (sense_index(c) != i)
                throw Error("matrix-label", "label " + codon_str(c) + " out of canonical order");
        }
        CodonMatrix out;
        out.kind = parse_matrix_kind(j.at("kind").get<std::string>());
        auto params = j.at("params");
        out.params = ModelParams{params.at("alpha").get<double>(), params.at("beta").get<double>(),
                                 params.at("gamma").get<double>(), params.at("eta").get<double>()};
        out.strength = StrengthFunction::parse(j.at("strength").get<std::string>());
        out.charge_source = parse_charge_source(j.at("charge").get<std::string>());
        auto entries = j.at("entries");
        if (static_cast<int>(entries.size()) != n)
            throw Error("matrix-dimension", "expected " + std::to_string(n) + " rows");
        out.m = Eigen::MatrixXd::Zero(n, n);
        for (int r = 0; r < n; ++r) {
            auto row = entries.at(static_cast<std::size_t>(r));
            if (static_cast<int>(row.size()) != n)
                throw Error("matrix-dimension", "row " + std::to_string(r) + " has " +
                                                    std::to_string(row.size()) + " entries");
            for (int c = 0; c < n; ++c)
                out.m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
        }
        return out;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error("matrix-format", std::string("bad matrix JSON: ") + e.what());
    }
}

std::string aa_matrix_to_csv(const AminoAcidMatrix& m) {
    std::string out;
    append_metadata(out, "cct-aa-matrix",
                    {m.source_kind, m.params, m.strength, m.charge_source});
    out += "aa";
    for (int i = 0; i < kNumAminoAcids; ++i)
        out += "," + std::string(three_letter(static_cast<AminoAcid>(i)));
    out += '\n';
    for (int j = 0; j < kNumAminoAcids; ++j) {
        out += std::string(three_letter(static_cast<AminoAcid>(j)));
        for (int i = 0; i < kNumAminoAcids; ++i) out += "," + format_double(m.m(j, i));
        out += '\n';
    }
    return out;
}

std::string aa_matrix_to_json(const AminoAcidMatrix& m) {
    nlohmann::ordered_json j =
        metadata_json({m.source_kind, m.params, m.strength, m.charge_source});
    j["format"] = "cct-aa-matrix";
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (int i = 0; i < kNumAminoAcids; ++i)
        labels.push_back(three_letter(static_cast<AminoAcid>(i)));
    j["labels"] = labels;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (int r = 0; r < kNumAminoAcids; ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int c = 0; c < kNumAminoAcids; ++c) row.push_back(m.m(r, c));
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j.dump(2) + "\n";
}

CodonUsage usage_from_tsv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<Codon, double> weights;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells = split(line, '\t');
        if (cells.size() != 2)
            throw Error("usage", "line " + std::to_string(lineno) +
                                     ": expected CODON<TAB>frequency");
        Codon c = parse_codon(cells[0]);
        double v;
        try {
            std::size_t used = 0;
            v = std::stod(cells[1], &used);
            if (used != cells[1].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error("usage", "line " + std::to_string(lineno) + ": bad frequency \"" +
                                     cells[1] + "\"");
        }
        if (is_stop(c)) continue;  // global tables list stops; they carry no weight here
        if (!weights.emplace(c, v).second)
            throw Error("usage", "duplicate codon " + codon_str(c));
    }
    return CodonUsage::from_weights(weights);
}

CodonUsage load_usage(const std::filesystem::path& path) {
    return usage_from_tsv(read_file(path));
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("dataset", "sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io", "cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("io", "short write to " + path.string());
}

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("CCT_DATA_DIR"); env && *env) return env;
    return CCT_DEFAULT_DATA_DIR;
}

namespace {

std::map<std::string, std::string> parse_manifest(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::string> out;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto sep = line.find("  ");
        if (sep == std::string::npos || sep != 64)
            throw Error("dataset", "malformed manifest line: " + line);
        out[line.substr(sep + 2)] = line.substr(0, sep);
    }
    return out;
}

std::string verified_read(const std::filesystem::path& dir, const std::string& name,
                          const std::map<std::string, std::string>& manifest) {
    auto it = manifest.find(name);
    if (it == manifest.end()) throw Error("dataset", name + " missing from manifest");
    std::string bytes = read_file(dir / name);
    std::string digest = sha256_hex(bytes);
    if (digest != it->second)
        throw Error("dataset", name + " checksum mismatch (got " + digest + ")");
    return bytes;
}

AminoAcid parse_aa_cell(const std::string& s, int lineno) {
    try {
        return parse_amino_acid(s);
    } catch (const Error&) {
        throw Error("dataset", "line " + std::to_string(lineno) + ": unknown amino acid \"" +
                                   s + "\"");
    }
}

double parse_num_cell(const std::string& s, int lineno) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw Error("dataset", "line " + std::to_string(lineno) + ": bad number \"" + s + "\"");
    }
}

void parse_pair_rates(const std::string& text, ExperimentalDataset& out) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells = split(line, '\t');
        if (cells[0] == "claim") {
            if (cells.size() != 9)
                throw Error("dataset", "line " + std::to_string(lineno) +
                                           ": claim row needs 9 fields");
            InequalityClaim claim;
            claim.lhs_a = parse_aa_cell(cells[1], lineno);
            claim.lhs_b = parse_aa_cell(cells[2], lineno);
            if (cells[3] == "<")
                claim.approx = false;
            else if (cells[3] == "<~")
                claim.approx = true;
            else
                throw Error("dataset", "line " + std::to_string(lineno) + ": bad relation \"" +
                                           cells[3] + "\"");
            claim.rhs_a = parse_aa_cell(cells[4], lineno);
            claim.rhs_b = parse_aa_cell(cells[5], lineno);
            claim.exp_lhs = parse_num_cell(cells[6], lineno);
            claim.exp_rhs = parse_num_cell(cells[7], lineno);
            claim.source = cells[8];
            out.claims.push_back(std::move(claim));
        } else if (cells[0] == "rate") {
            if (cells.size() != 5)
                throw Error("dataset", "line " + std::to_string(lineno) +
                                           ": rate row needs 5 fields");
            out.rates.push_back(ExperimentalPairRate{parse_aa_cell(cells[1], lineno),
                                                     parse_aa_cell(cells[2], lineno),
                                                     parse_num_cell(cells[3], lineno),
                                                     cells[4]});
        } else {
            throw Error("dataset", "line " + std::to_string(lineno) + ": unknown record \"" +
                                       cells[0] + "\"");
        }
    }
}

void parse_mutability(const std::string& text, ExperimentalDataset& out) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::array<bool, kNumAminoAcids> seen{};
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells = split(line, '\t');
        if (cells.size() != 3)
            throw Error("dataset",
                        "line " + std::to_string(lineno) + ": expected aa, pet91, dayhoff");
        AminoAcid a = parse_aa_cell(cells[0], lineno);
        out.mutability[static_cast<std::size_t>(a)] =
            MutabilityRow{parse_num_cell(cells[1], lineno), parse_num_cell(cells[2], lineno)};
        seen[static_cast<std::size_t>(a)] = true;
    }
    for (int i = 0; i < kNumAminoAcids; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            throw Error("dataset", std::string("mutability table missing ") +
                                       std::string(three_letter(static_cast<AminoAcid>(i))));
}

}  // namespace

ExperimentalDataset load_dataset(const std::filesystem::path& dir) {
    auto manifest = parse_manifest(read_file(dir / "MANIFEST.sha256"));

    // The codon and dimer tables ship as data but are also compiled in;
    // drift between the two is an error.
    if (verified_read(dir, "codon_table.tsv", manifest) != codon_table_tsv())
        throw Error("dataset", "codon_table.tsv does not match the built-in table");
    if (verified_read(dir, "dimer_table.tsv", manifest) != dimer_table_tsv())
        throw Error("dataset", "dimer_table.tsv does not match the built-in table");

    ExperimentalDataset out;
    parse_pair_rates(verified_read(dir, "pet91_pair_rates.tsv", manifest), out);
    parse_mutability(verified_read(dir, "relative_mutability.tsv", manifest), out);
    return out;
}

}  // namespace cct::io
