#include "cct/crystal.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace cct::crystal {

SignatureReduction reduce_signature(std::span<const Sign> signs) {
    if (signs.empty()) throw std::invalid_argument("reduce_signature: empty sequence");

    // Stack cancellation: an unmatched plus absorbs the next minus.
    std::vector<int> open_plus;
    std::vector<int> minus_survivors;
    for (int i = 0; i < static_cast<int>(signs.size()); ++i) {
        if (signs[i] == Sign::plus) {
            open_plus.push_back(i);
        } else if (!open_plus.empty()) {
            open_plus.pop_back();
        } else {
            minus_survivors.push_back(i);
        }
    }

    SignatureReduction out;
    out.minus_count = static_cast<int>(minus_survivors.size());
    out.plus_count = static_cast<int>(open_plus.size());
    out.surviving = std::move(minus_survivors);
    out.surviving.insert(out.surviving.end(), open_plus.begin(), open_plus.end());
    // All surviving minuses precede all surviving pluses in the word.
    return out;
}

Weight word_weight(const TensorWord& w) {
    auto net = [](const std::vector<Sign>& s) {
        int t = 0;
        for (Sign x : s) t += (x == Sign::plus) ? 1 : -1;
        return t;
    };
    return Weight{net(w.h), net(w.v)};
}

namespace {

std::vector<Sign>& axis_signs(TensorWord& w, Axis axis) {
    return axis == Axis::H ? w.h : w.v;
}

const std::vector<Sign>& axis_signs(const TensorWord& w, Axis axis) {
    return axis == Axis::H ? w.h : w.v;
}

}  // namespace

std::optional<TensorWord> lowering(const TensorWord& w, Axis axis) {
    SignatureReduction red = reduce_signature(axis_signs(w, axis));
    if (red.plus_count == 0) return std::nullopt;
    // Leftmost surviving plus: first plus entry after the minus block.
    int pos = red.surviving[static_cast<std::size_t>(red.minus_count)];
    TensorWord out = w;
    axis_signs(out, axis)[static_cast<std::size_t>(pos)] = Sign::minus;
    return out;
}

std::optional<TensorWord> raising(const TensorWord& w, Axis axis) {
    SignatureReduction red = reduce_signature(axis_signs(w, axis));
    if (red.minus_count == 0) return std::nullopt;
    int pos = red.surviving[static_cast<std::size_t>(red.minus_count) - 1];
    TensorWord out = w;
    axis_signs(out, axis)[static_cast<std::size_t>(pos)] = Sign::plus;
    return out;
}

namespace {

// Raise a single-axis sign sequence to its component top.
std::vector<Sign> raise_to_top(std::vector<Sign> s) {
    for (;;) {
        SignatureReduction red = reduce_signature(s);
        if (red.minus_count == 0) return s;
        s[static_cast<std::size_t>(red.surviving[static_cast<std::size_t>(red.minus_count) - 1])] =
            Sign::plus;
    }
}

// Rank key of one position of a highest-weight word under C < G < U < A.
int nucleotide_rank(Sign h, Sign v) {
    if (h == Sign::plus) return v == Sign::plus ? 0 : 1;   // C, G
    return v == Sign::plus ? 2 : 3;                        // U, A
}

std::vector<int> rank_word(const TensorWord& w) {
    std::vector<int> key(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) key[i] = nucleotide_rank(w.h[i], w.v[i]);
    return key;
}

}  // namespace

std::map<TensorWord, WordAssignment> decompose(int n) {
    if (n < 1) throw std::invalid_argument("decompose: word length must be >= 1");

    const int m = 1 << n;
    auto bits_to_signs = [n](int bits) {
        std::vector<Sign> s(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            s[static_cast<std::size_t>(i)] = (bits >> i) & 1 ? Sign::plus : Sign::minus;
        return s;
    };

    // The two axes factorize: a component is the product of one H component
    // and one V component, identified by the pair of single-axis tops.
    struct Component {
        TensorWord top;
        int two_j_h, two_j_v;
    };
    std::map<TensorWord, Component> components;
    std::map<TensorWord, TensorWord> word_top;

    for (int hb = 0; hb < m; ++hb) {
        std::vector<Sign> h = bits_to_signs(hb);
        std::vector<Sign> h_top = raise_to_top(h);
        for (int vb = 0; vb < m; ++vb) {
            std::vector<Sign> v = bits_to_signs(vb);
            TensorWord top{h_top, raise_to_top(v)};
            Weight tw = word_weight(top);  // top weight equals (j_h, j_v)
            word_top.emplace(TensorWord{h, v}, top);
            components.emplace(top, Component{top, tw.two_j3_h, tw.two_j3_v});
        }
    }

    // Copy indices: rank components sharing (j_h, j_v) by their top word
    // under C < G < U < A.
    std::map<std::pair<int, int>, std::vector<const Component*>> by_irrep;
    for (const auto& [top, comp] : components)
        by_irrep[{comp.two_j_h, comp.two_j_v}].push_back(&comp);

    std::map<TensorWord, int> copy_of_top;
    for (auto& [jj, group] : by_irrep) {
        std::sort(group.begin(), group.end(), [](const Component* a, const Component* b) {
            return rank_word(a->top) < rank_word(b->top);
        });
        for (std::size_t k = 0; k < group.size(); ++k)
            copy_of_top.emplace(group[k]->top, static_cast<int>(k) + 1);
    }

    std::map<TensorWord, WordAssignment> out;
    for (const auto& [word, top] : word_top) {
        const Component& comp = components.at(top);
        out.emplace(word, WordAssignment{
                              IrrepLabel{comp.two_j_h, comp.two_j_v, copy_of_top.at(top)},
                              word_weight(word), top});
    }
    return out;
}

}  // namespace cct::crystal
