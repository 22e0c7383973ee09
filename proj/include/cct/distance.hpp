#pragma once

#include <vector>

#include "cct/code_tables.hpp"

namespace cct {

// The four positive model parameters of the codon eigenvalue operator.
// eta > 1 because transversions are rarer than transitions; strict mode
// enforces the tighter bound eta > 2.
struct ModelParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double eta = 2.0;

    static ModelParams create(double alpha, double beta, double gamma, double eta,
                              bool strict_eta = false);
};

// r = [alpha*Q1 - beta*J1_3V(J1_3V - 1) + 4*gamma*(C_H + C_V)] * 2*(J_3H + eta*J_3V)
// Q1 and J1_3V come from the codon's first dinucleotide; the Casimirs and
// third components from the codon's own irrep record. Exact for integer
// parameter choices: every ingredient is an integer once spins are doubled.
double r_value(Codon c, const ModelParams& p, ChargeSource source = ChargeSource::table);

// d(c1, c2) = |r(c2) - r(c1)|; a pseudometric on codons.
double distance(Codon c1, Codon c2, const ModelParams& p,
                ChargeSource source = ChargeSource::table);

// True iff exactly one of the three positions differs.
bool is_nearest(Codon c1, Codon c2);

// All sense codons at Hamming distance 1 from a sense codon (size <= 9).
std::vector<Codon> sense_neighbors(Codon c);

// Single-nucleotide change classification. delta_h only = transition
// (C<->U, G<->A); delta_v set = transversion (crossing Y/R).
struct ChangeClass {
    int position;  // 1, 2 or 3
    bool delta_h;
    bool delta_v;
};

ChangeClass classify_change(Codon c1, Codon c2);

inline bool is_transition(const ChangeClass& cc) { return cc.delta_h && !cc.delta_v; }
inline bool is_transversion(const ChangeClass& cc) { return cc.delta_v; }

}  // namespace cct
