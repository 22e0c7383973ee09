#include <doctest.h>

#include <map>
#include <set>

#include "cct/code_tables.hpp"
#include "cct/errors.hpp"

using namespace cct;

TEST_SUITE_BEGIN("code_tables");

TEST_CASE("nucleotide signs and parsing") {
    CHECK(h_sign(Nuc::C) == crystal::Sign::plus);
    CHECK(v_sign(Nuc::C) == crystal::Sign::plus);
    CHECK(h_sign(Nuc::U) == crystal::Sign::minus);
    CHECK(v_sign(Nuc::U) == crystal::Sign::plus);
    CHECK(h_sign(Nuc::G) == crystal::Sign::plus);
    CHECK(v_sign(Nuc::G) == crystal::Sign::minus);
    CHECK(h_sign(Nuc::A) == crystal::Sign::minus);
    CHECK(v_sign(Nuc::A) == crystal::Sign::minus);

    CHECK(parse_codon("ugg") == parse_codon("UGG"));
    CHECK(parse_codon("TTT") == parse_codon("UUU"));  // DNA spelling accepted
    CHECK_THROWS_AS(parse_codon("UXG"), Error);
    CHECK_THROWS_AS(parse_codon("UG"), Error);
}

TEST_CASE("translation") {
    CHECK(translate(parse_codon("UGG")) == AminoAcid::Trp);
    CHECK(!translate(parse_codon("UGA")).has_value());
    CHECK(translate(parse_codon("CUA")) == AminoAcid::Leu);
    CHECK(is_stop(parse_codon("UAA")));
    CHECK(is_stop(parse_codon("UAG")));
    CHECK(is_stop(parse_codon("UGA")));

    int stops = 0;
    for (Codon c : all_codons())
        if (is_stop(c)) ++stops;
    CHECK(stops == 3);
    CHECK(sense_codons().size() == 61);
}

TEST_CASE("multiplets") {
    CHECK(multiplet(AminoAcid::Trp) == std::vector<Codon>{parse_codon("UGG")});
    CHECK(multiplet(AminoAcid::Ile) ==
          std::vector<Codon>{parse_codon("AUC"), parse_codon("AUU"), parse_codon("AUA")});
    std::set<Codon> ser(multiplet(AminoAcid::Ser).begin(), multiplet(AminoAcid::Ser).end());
    CHECK(ser == std::set<Codon>{parse_codon("UCC"), parse_codon("UCU"), parse_codon("UCG"),
                                 parse_codon("UCA"), parse_codon("AGC"), parse_codon("AGU")});

    // 3 sextets, 5 quadruplets, 1 triplet, 9 doublets, 2 singlets.
    std::map<std::size_t, int> census;
    std::size_t total = 0;
    for (int a = 0; a < kNumAminoAcids; ++a) {
        std::size_t size = multiplet(static_cast<AminoAcid>(a)).size();
        ++census[size];
        total += size;
    }
    CHECK(census == std::map<std::size_t, int>{{6, 3}, {4, 5}, {3, 1}, {2, 9}, {1, 2}});
    CHECK(total == 61);
}

TEST_CASE("dimer charges") {
    CHECK(charge_table(Nuc::C, Nuc::C) == 7);
    CHECK(charge_table(Nuc::U, Nuc::A) == -5);
    CHECK(charge_formula(Nuc::C, Nuc::C) == 7);
    CHECK(charge_formula(Nuc::U, Nuc::A) == -5);
    CHECK(charge_formula(Nuc::G, Nuc::C) == 5);  // 4*1 + 2*(0+1) - 1
    CHECK(charge_table(Nuc::G, Nuc::C) == 5);

    // Formula and table agree on 15 of 16 dimers; CU is the sole mismatch.
    int agree = 0;
    for (int a = 0; a < kNumNucs; ++a) {
        for (int b = 0; b < kNumNucs; ++b) {
            Nuc first = static_cast<Nuc>(a);
            Nuc second = static_cast<Nuc>(b);
            if (charge_table(first, second) == charge_formula(first, second)) ++agree;
        }
    }
    CHECK(agree == 15);
    CHECK(charge_formula(Nuc::C, Nuc::U) == 3);
    CHECK(charge_table(Nuc::C, Nuc::U) == 1);

    // The sixteen transcribed charges sum to 6.
    int sum = 0;
    for (int a = 0; a < kNumNucs; ++a)
        for (int b = 0; b < kNumNucs; ++b)
            sum += charge_table(static_cast<Nuc>(a), static_cast<Nuc>(b));
    CHECK(sum == 6);

    CHECK(charge(Nuc::C, Nuc::U, ChargeSource::table) == 1);
    CHECK(charge(Nuc::C, Nuc::U, ChargeSource::formula) == 3);
}

TEST_CASE("codon records") {
    const CodonRecord& ggg = codon_record(parse_codon("GGG"));
    CHECK(ggg.irrep == crystal::IrrepLabel{3, 3, 1});
    CHECK(ggg.weight == crystal::Weight{3, -3});

    const CodonRecord& cac = codon_record(parse_codon("CAC"));
    CHECK(cac.irrep == crystal::IrrepLabel{1, 1, 4});
    CHECK(cac.weight == crystal::Weight{1, 1});
    CHECK(format_irrep(cac.irrep) == "(1/2,1/2)^4");
    CHECK(format_irrep(ggg.irrep) == "(3/2,3/2)");

    const CodonRecord& aga = codon_record(parse_codon("AGA"));
    CHECK(aga.irrep == crystal::IrrepLabel{1, 3, 1});
    CHECK(aga.weight == crystal::Weight{-1, -3});
}

TEST_CASE("record weights equal the tensor-word weights") {
    for (Codon c : all_codons())
        CHECK(codon_record(c).weight == crystal::word_weight(codon_word(c)));
}

TEST_CASE("the codon table is exactly the n=3 crystal decomposition") {
    auto derived = crystal::decompose(3);
    int mismatches = 0;
    for (Codon c : all_codons()) {
        const auto& assignment = derived.at(codon_word(c));
        const CodonRecord& rec = codon_record(c);
        if (assignment.irrep != rec.irrep || assignment.weight != rec.weight) ++mismatches;
    }
    CHECK(mismatches == 0);
}

TEST_CASE("the dimer table is exactly the n=2 crystal decomposition") {
    auto derived = crystal::decompose(2);
    for (int a = 0; a < kNumNucs; ++a) {
        for (int b = 0; b < kNumNucs; ++b) {
            Nuc first = static_cast<Nuc>(a);
            Nuc second = static_cast<Nuc>(b);
            crystal::TensorWord w{{h_sign(first), h_sign(second)},
                                  {v_sign(first), v_sign(second)}};
            const auto& assignment = derived.at(w);
            const DimerRecord& rec = dimer_record(first, second);
            CHECK(assignment.irrep.two_j_h == rec.two_j_h);
            CHECK(assignment.irrep.two_j_v == rec.two_j_v);
            CHECK(assignment.weight.two_j3_h == rec.two_j3_h);
            CHECK(assignment.weight.two_j3_v == rec.two_j3_v);
        }
    }
}

TEST_CASE("half-integer formatting") {
    CHECK(format_half_int(3) == "3/2");
    CHECK(format_half_int(-1) == "-1/2");
    CHECK(format_half_int(2) == "1");
    CHECK(format_half_int(0) == "0");
    CHECK(format_half_int(-2) == "-1");
}

TEST_CASE("sense index round trip and stop rejection") {
    for (int i = 0; i < 61; ++i)
        CHECK(sense_index(sense_codons()[static_cast<std::size_t>(i)]) == i);
    CHECK_THROWS_AS(sense_index(parse_codon("UAA")), Error);
}

TEST_SUITE_END();
