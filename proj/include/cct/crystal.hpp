#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace cct::crystal {

// J_3 = +1/2 or -1/2 label of one sl(2) factor.
enum class Sign : unsigned char { minus = 0, plus = 1 };

enum class Axis : unsigned char { H = 0, V = 1 };

// A word in the n-fold tensor power of the (1/2,1/2) crystal: one sign
// sequence per sl(2) factor. The two axes never interact.
struct TensorWord {
    std::vector<Sign> h;
    std::vector<Sign> v;

    std::size_t size() const { return h.size(); }
    friend auto operator<=>(const TensorWord&, const TensorWord&) = default;
};

// Weights and spins are half-integers; stored doubled so they stay exact.
struct Weight {
    int two_j3_h = 0;
    int two_j3_v = 0;
    friend auto operator<=>(const Weight&, const Weight&) = default;
};

struct IrrepLabel {
    int two_j_h = 0;
    int two_j_v = 0;
    int copy = 1;  // 1-based index among repeated (j_h, j_v) components
    friend auto operator<=>(const IrrepLabel&, const IrrepLabel&) = default;
};

// Result of the signature rule on one sign sequence: adjacent (plus,minus)
// pairs are deleted until none remain, leaving minus^a plus^b.
struct SignatureReduction {
    int minus_count = 0;                // a
    int plus_count = 0;                 // b
    std::vector<int> surviving;         // 0-based positions, ascending
};

SignatureReduction reduce_signature(std::span<const Sign> signs);

Weight word_weight(const TensorWord& w);

// f~ on one axis: flips the leftmost surviving plus; absent if none survives.
std::optional<TensorWord> lowering(const TensorWord& w, Axis axis);

// e~ on one axis: flips the rightmost surviving minus; exact inverse of
// lowering where both are defined.
std::optional<TensorWord> raising(const TensorWord& w, Axis axis);

struct WordAssignment {
    IrrepLabel irrep;
    Weight weight;
    TensorWord highest_weight;  // the component's unique top word
};

// Partitions all 4^n words into crystal components and labels each word with
// its irrep, copy index and weight. Copy indices rank components by their
// highest-weight word under nucleotide order C < G < U < A.
std::map<TensorWord, WordAssignment> decompose(int n);

}  // namespace cct::crystal
