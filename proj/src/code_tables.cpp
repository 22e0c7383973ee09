#include "cct/code_tables.hpp"

#include <algorithm>
#include <cctype>

#include "cct/errors.hpp"

namespace cct {

using crystal::IrrepLabel;
using crystal::Sign;
using crystal::TensorWord;
using crystal::Weight;

Sign h_sign(Nuc n) {
    return (n == Nuc::C || n == Nuc::G) ? Sign::plus : Sign::minus;
}

Sign v_sign(Nuc n) {
    return (n == Nuc::C || n == Nuc::U) ? Sign::plus : Sign::minus;
}

char nuc_char(Nuc n) {
    static constexpr char kChars[kNumNucs] = {'C', 'U', 'G', 'A'};
    return kChars[static_cast<int>(n)];
}

Nuc parse_nuc(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'C': return Nuc::C;
        case 'U':
        case 'T': return Nuc::U;
        case 'G': return Nuc::G;
        case 'A': return Nuc::A;
        default: throw Error("codon", std::string("invalid nucleotide '") + c + "'");
    }
}

int codon_index(Codon c) {
    return 16 * static_cast<int>(c[0]) + 4 * static_cast<int>(c[1]) + static_cast<int>(c[2]);
}

Codon codon_from_index(int idx) {
    return Codon{{static_cast<Nuc>((idx >> 4) & 3), static_cast<Nuc>((idx >> 2) & 3),
                  static_cast<Nuc>(idx & 3)}};
}

Codon parse_codon(std::string_view s) {
    if (s.size() != 3)
        throw Error("codon", "expected three nucleotides, got \"" + std::string(s) + "\"");
    return Codon{{parse_nuc(s[0]), parse_nuc(s[1]), parse_nuc(s[2])}};
}

std::string codon_str(Codon c) {
    return {nuc_char(c[0]), nuc_char(c[1]), nuc_char(c[2])};
}

TensorWord codon_word(Codon c) {
    TensorWord w;
    w.h = {h_sign(c[0]), h_sign(c[1]), h_sign(c[2])};
    w.v = {v_sign(c[0]), v_sign(c[1]), v_sign(c[2])};
    return w;
}

namespace {

constexpr std::string_view kThreeLetter[kNumAminoAcids] = {
    "Ala", "Arg", "Asn", "Asp", "Cys", "Gln", "Glu", "Gly", "His", "Ile",
    "Leu", "Lys", "Met", "Phe", "Pro", "Ser", "Thr", "Trp", "Tyr", "Val",
};

constexpr char kOneLetter[kNumAminoAcids] = {
    'A', 'R', 'N', 'D', 'C', 'Q', 'E', 'G', 'H', 'I',
    'L', 'K', 'M', 'F', 'P', 'S', 'T', 'W', 'Y', 'V',
};

struct CodonRow {
    std::string_view codon;
    std::string_view aa;  // "Ter" for stop
    int two_j_h, two_j_v, copy, two_j3_h, two_j3_v;
};

// Eukaryotic code with the crystal irrep assignment of every codon, in
// canonical order. Upper copy labels distinguish repeated irreps; the whole
// table is re-derived from the tensor-product rule in tests.
constexpr CodonRow kCodonTable[64] = {
    {"CCC", "Pro", 3, 3, 1, 3, 3},   {"CCU", "Pro", 1, 3, 1, 1, 3},
    {"CCG", "Pro", 3, 1, 1, 3, 1},   {"CCA", "Pro", 1, 1, 1, 1, 1},
    {"CUC", "Leu", 1, 3, 2, 1, 3},   {"CUU", "Leu", 1, 3, 2, -1, 3},
    {"CUG", "Leu", 1, 1, 3, 1, 1},   {"CUA", "Leu", 1, 1, 3, -1, 1},
    {"CGC", "Arg", 3, 1, 2, 3, 1},   {"CGU", "Arg", 1, 1, 2, 1, 1},
    {"CGG", "Arg", 3, 1, 2, 3, -1},  {"CGA", "Arg", 1, 1, 2, 1, -1},
    {"CAC", "His", 1, 1, 4, 1, 1},   {"CAU", "His", 1, 1, 4, -1, 1},
    {"CAG", "Gln", 1, 1, 4, 1, -1},  {"CAA", "Gln", 1, 1, 4, -1, -1},
    {"UCC", "Ser", 3, 3, 1, 1, 3},   {"UCU", "Ser", 1, 3, 1, -1, 3},
    {"UCG", "Ser", 3, 1, 1, 1, 1},   {"UCA", "Ser", 1, 1, 1, -1, 1},
    {"UUC", "Phe", 3, 3, 1, -1, 3},  {"UUU", "Phe", 3, 3, 1, -3, 3},
    {"UUG", "Leu", 3, 1, 1, -1, 1},  {"UUA", "Leu", 3, 1, 1, -3, 1},
    {"UGC", "Cys", 3, 1, 2, 1, 1},   {"UGU", "Cys", 1, 1, 2, -1, 1},
    {"UGG", "Trp", 3, 1, 2, 1, -1},  {"UGA", "Ter", 1, 1, 2, -1, -1},
    {"UAC", "Tyr", 3, 1, 2, -1, 1},  {"UAU", "Tyr", 3, 1, 2, -3, 1},
    {"UAG", "Ter", 3, 1, 2, -1, -1}, {"UAA", "Ter", 3, 1, 2, -3, -1},
    {"GCC", "Ala", 3, 3, 1, 3, 1},   {"GCU", "Ala", 1, 3, 1, 1, 1},
    {"GCG", "Ala", 3, 1, 1, 3, -1},  {"GCA", "Ala", 1, 1, 1, 1, -1},
    {"GUC", "Val", 1, 3, 2, 1, 1},   {"GUU", "Val", 1, 3, 2, -1, 1},
    {"GUG", "Val", 1, 1, 3, 1, -1},  {"GUA", "Val", 1, 1, 3, -1, -1},
    {"GGC", "Gly", 3, 3, 1, 3, -1},  {"GGU", "Gly", 1, 3, 1, 1, -1},
    {"GGG", "Gly", 3, 3, 1, 3, -3},  {"GGA", "Gly", 1, 3, 1, 1, -3},
    {"GAC", "Asp", 1, 3, 2, 1, -1},  {"GAU", "Asp", 1, 3, 2, -1, -1},
    {"GAG", "Glu", 1, 3, 2, 1, -3},  {"GAA", "Glu", 1, 3, 2, -1, -3},
    {"ACC", "Thr", 3, 3, 1, 1, 1},   {"ACU", "Thr", 1, 3, 1, -1, 1},
    {"ACG", "Thr", 3, 1, 1, 1, -1},  {"ACA", "Thr", 1, 1, 1, -1, -1},
    {"AUC", "Ile", 3, 3, 1, -1, 1},  {"AUU", "Ile", 3, 3, 1, -3, 1},
    {"AUG", "Met", 3, 1, 1, -1, -1}, {"AUA", "Ile", 3, 1, 1, -3, -1},
    {"AGC", "Ser", 3, 3, 1, 1, -1},  {"AGU", "Ser", 1, 3, 1, -1, -1},
    {"AGG", "Arg", 3, 3, 1, 1, -3},  {"AGA", "Arg", 1, 3, 1, -1, -3},
    {"AAC", "Asn", 3, 3, 1, -1, -1}, {"AAU", "Asn", 3, 3, 1, -3, -1},
    {"AAG", "Lys", 3, 3, 1, -1, -3}, {"AAA", "Lys", 3, 3, 1, -3, -3},
};

struct DimerRow {
    std::string_view dimer;
    int two_j_h, two_j_v, two_j3_h, two_j3_v, charge;
};

// Dinucleotide representation content and charge, in canonical order.
constexpr DimerRow kDimerTable[16] = {
    {"CC", 2, 2, 2, 2, 7},    {"CU", 0, 2, 0, 2, 1},
    {"CG", 2, 0, 2, 0, 3},    {"CA", 0, 0, 0, 0, -1},
    {"UC", 2, 2, 0, 2, 3},    {"UU", 2, 2, -2, 2, -1},
    {"UG", 2, 0, 0, 0, -1},   {"UA", 2, 0, -2, 0, -5},
    {"GC", 2, 2, 2, 0, 5},    {"GU", 0, 2, 0, 0, 1},
    {"GG", 2, 2, 2, -2, 3},   {"GA", 0, 2, 0, -2, -1},
    {"AC", 2, 2, 0, 0, 1},    {"AU", 2, 2, -2, 0, -3},
    {"AG", 2, 2, 0, -2, -1},  {"AA", 2, 2, -2, -2, -5},
};

struct Tables {
    std::array<CodonRecord, 64> records;
    std::array<std::optional<AminoAcid>, 64> code;
    std::array<DimerRecord, 16> dimers;
    std::vector<Codon> all;
    std::vector<Codon> sense;
    std::array<int, 64> sense_idx;  // -1 for stops
    std::array<std::vector<Codon>, kNumAminoAcids> multiplets;

    Tables() {
        all.reserve(64);
        sense.reserve(61);
        for (int i = 0; i < 64; ++i) {
            const CodonRow& row = kCodonTable[i];
            Codon c = parse_codon(row.codon);
            if (codon_index(c) != i)
                throw Error("dataset", "codon table out of canonical order at " +
                                           std::string(row.codon));
            std::optional<AminoAcid> aa;
            if (row.aa != "Ter") aa = parse_amino_acid(row.aa);
            code[static_cast<std::size_t>(i)] = aa;
            records[static_cast<std::size_t>(i)] = CodonRecord{
                c, aa, IrrepLabel{row.two_j_h, row.two_j_v, row.copy},
                Weight{row.two_j3_h, row.two_j3_v}};
            all.push_back(c);
            sense_idx[static_cast<std::size_t>(i)] = -1;
            if (aa) {
                sense_idx[static_cast<std::size_t>(i)] = static_cast<int>(sense.size());
                sense.push_back(c);
                multiplets[static_cast<std::size_t>(*aa)].push_back(c);
            }
        }
        for (int i = 0; i < 16; ++i) {
            const DimerRow& row = kDimerTable[i];
            int idx = 4 * static_cast<int>(parse_nuc(row.dimer[0])) +
                      static_cast<int>(parse_nuc(row.dimer[1]));
            if (idx != i)
                throw Error("dataset", "dimer table out of canonical order at " +
                                           std::string(row.dimer));
            dimers[static_cast<std::size_t>(i)] = DimerRecord{
                row.two_j_h, row.two_j_v, row.two_j3_h, row.two_j3_v, row.charge};
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

std::string_view three_letter(AminoAcid a) {
    return kThreeLetter[static_cast<int>(a)];
}

char one_letter(AminoAcid a) {
    return kOneLetter[static_cast<int>(a)];
}

AminoAcid parse_amino_acid(std::string_view name) {
    for (int i = 0; i < kNumAminoAcids; ++i)
        if (kThreeLetter[i] == name) return static_cast<AminoAcid>(i);
    throw Error("amino-acid", "unknown amino acid \"" + std::string(name) + "\"");
}

std::optional<AminoAcid> translate(Codon c) {
    return tables().code[static_cast<std::size_t>(codon_index(c))];
}

bool is_stop(Codon c) {
    return !translate(c).has_value();
}

std::span<const Codon> sense_codons() {
    return tables().sense;
}

std::span<const Codon> all_codons() {
    return tables().all;
}

int sense_index(Codon c) {
    int idx = tables().sense_idx[static_cast<std::size_t>(codon_index(c))];
    if (idx < 0) throw Error("codon", codon_str(c) + " is a stop codon");
    return idx;
}

const std::vector<Codon>& multiplet(AminoAcid a) {
    return tables().multiplets[static_cast<std::size_t>(a)];
}

const DimerRecord& dimer_record(Nuc first, Nuc second) {
    return tables().dimers[static_cast<std::size_t>(4 * static_cast<int>(first) +
                                                    static_cast<int>(second))];
}

std::string_view charge_source_name(ChargeSource s) {
    return s == ChargeSource::table ? "table" : "formula";
}

ChargeSource parse_charge_source(std::string_view s) {
    if (s == "table") return ChargeSource::table;
    if (s == "formula") return ChargeSource::formula;
    throw Error("charge", "unknown charge source \"" + std::string(s) + "\"");
}

int charge_table(Nuc first, Nuc second) {
    return dimer_record(first, second).charge;
}

int charge_formula(Nuc first, Nuc second) {
    const DimerRecord& d = dimer_record(first, second);
    // With doubled spins 4*J3H = 2*two_j3h, and C_V*(J3V+1) reduces to
    // two_j3v+2 for J_V = 1 and to 0 for J_V = 0.
    int cv_term = d.two_j_v == 2 ? d.two_j3_v + 2 : 0;
    return 2 * d.two_j3_h + cv_term - 1;
}

int charge(Nuc first, Nuc second, ChargeSource source) {
    return source == ChargeSource::table ? charge_table(first, second)
                                         : charge_formula(first, second);
}

const CodonRecord& codon_record(Codon c) {
    return tables().records[static_cast<std::size_t>(codon_index(c))];
}

int irrep_multiplicity(int two_j_h, int two_j_v) {
    // 1/2 x 1/2 x 1/2 = 3/2 + 2 * 1/2 per axis.
    auto axis_mult = [](int two_j) { return two_j == 3 ? 1 : 2; };
    return axis_mult(two_j_h) * axis_mult(two_j_v);
}

std::string format_half_int(int two_x) {
    if (two_x % 2 == 0) return std::to_string(two_x / 2);
    return std::to_string(two_x) + "/2";
}

std::string format_irrep(const crystal::IrrepLabel& l) {
    std::string s =
        "(" + format_half_int(l.two_j_h) + "," + format_half_int(l.two_j_v) + ")";
    if (irrep_multiplicity(l.two_j_h, l.two_j_v) > 1) s += "^" + std::to_string(l.copy);
    return s;
}

}  // namespace cct
