#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cct/crystal.hpp"

namespace cct {

// Nucleotides carry one H-sign and one V-sign:
//   C = (+,+)   U = (-,+)   G = (+,-)   A = (-,-)
// Enum order is the canonical table order (C block first).
enum class Nuc : unsigned char { C = 0, U = 1, G = 2, A = 3 };

inline constexpr int kNumNucs = 4;

crystal::Sign h_sign(Nuc n);
crystal::Sign v_sign(Nuc n);
char nuc_char(Nuc n);
Nuc parse_nuc(char c);  // accepts T as U, case-insensitive

struct Codon {
    std::array<Nuc, 3> nt;

    Nuc operator[](int i) const { return nt[static_cast<std::size_t>(i)]; }
    friend auto operator<=>(const Codon&, const Codon&) = default;
};

// Canonical index: first letter varies slowest, C < U < G < A throughout.
int codon_index(Codon c);
Codon codon_from_index(int idx);
Codon parse_codon(std::string_view s);
std::string codon_str(Codon c);
crystal::TensorWord codon_word(Codon c);

enum class AminoAcid : unsigned char {
    Ala, Arg, Asn, Asp, Cys, Gln, Glu, Gly, His, Ile,
    Leu, Lys, Met, Phe, Pro, Ser, Thr, Trp, Tyr, Val,
};

inline constexpr int kNumAminoAcids = 20;

std::string_view three_letter(AminoAcid a);
char one_letter(AminoAcid a);
AminoAcid parse_amino_acid(std::string_view name);  // three-letter, e.g. "Gly"

// Standard eukaryotic code; nullopt for the three stop codons.
std::optional<AminoAcid> translate(Codon c);
bool is_stop(Codon c);

// The 61 sense codons in canonical order, and their dense indexing.
std::span<const Codon> sense_codons();
std::span<const Codon> all_codons();
int sense_index(Codon c);  // throws Error("codon") on stop codons

// All codons translating to `a`, canonical order. Sizes: 3 sextets,
// 5 quadruplets, 1 triplet, 9 doublets, 2 singlets.
const std::vector<Codon>& multiplet(AminoAcid a);

// Dinucleotide representation content and charge.
struct DimerRecord {
    int two_j_h, two_j_v;
    int two_j3_h, two_j3_v;
    int charge;  // transcribed table value
};

const DimerRecord& dimer_record(Nuc first, Nuc second);

enum class ChargeSource : unsigned char { table, formula };

std::string_view charge_source_name(ChargeSource s);
ChargeSource parse_charge_source(std::string_view s);

int charge_table(Nuc first, Nuc second);
// Q = 4*J3H + C_V*(J3V + 1) - 1 with C_V = J_V(J_V+1); disagrees with the
// table on exactly one dimer (CU: formula 3, table 1).
int charge_formula(Nuc first, Nuc second);
int charge(Nuc first, Nuc second, ChargeSource source);

struct CodonRecord {
    Codon codon;
    std::optional<AminoAcid> aa;  // nullopt = stop
    crystal::IrrepLabel irrep;
    crystal::Weight weight;
};

const CodonRecord& codon_record(Codon c);

// Multiplicity of (j_h, j_v) in the codon decomposition; controls whether
// the copy superscript is printed.
int irrep_multiplicity(int two_j_h, int two_j_v);

std::string format_half_int(int two_x);                   // "3/2", "-1/2", "1", "0"
std::string format_irrep(const crystal::IrrepLabel& l);   // "(1/2,1/2)^4"

}  // namespace cct
