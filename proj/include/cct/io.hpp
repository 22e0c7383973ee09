#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cct/aggregate.hpp"
#include "cct/predictions.hpp"
#include "cct/rate_matrix.hpp"

namespace cct::io {

// %.17g: enough digits for an exact double round trip.
std::string format_double(double x);
double parse_double(const std::string& s);  // strict; Error("matrix-number")

// Bundled-table serializations (also the `cct tables` output).
std::string codon_table_tsv();
std::string dimer_table_tsv();

// Matrix CSV: '#' metadata header, then a label row and 61 labeled rows in
// canonical order. Entries round-trip bit-exactly.
std::string matrix_to_csv(const CodonMatrix& m);
CodonMatrix matrix_from_csv(const std::string& text);
void save_matrix(const CodonMatrix& m, const std::filesystem::path& path);
CodonMatrix load_matrix(const std::filesystem::path& path);

std::string matrix_to_json(const CodonMatrix& m);
CodonMatrix matrix_from_json(const std::string& text);

// 20x20 amino-acid matrix, three-letter labels in alphabetical order.
std::string aa_matrix_to_csv(const AminoAcidMatrix& m);
std::string aa_matrix_to_json(const AminoAcidMatrix& m);

// Codon usage TSV: "CODON<TAB>frequency", '#' comments. Stop codons are
// ignored; every sense codon must be present.
CodonUsage usage_from_tsv(const std::string& text);
CodonUsage load_usage(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

// Bundled dataset directory: $CCT_DATA_DIR if set, else the build-time
// default.
std::filesystem::path default_data_dir();

// Loads the four bundled files, verifying each against MANIFEST.sha256 and
// checking the codon/dimer tables against the in-code tables.
ExperimentalDataset load_dataset(const std::filesystem::path& dir);

}  // namespace cct::io
