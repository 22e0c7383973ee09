#pragma once

#include <Eigen/Dense>
#include <string>

#include "cct/distance.hpp"

namespace cct {

// Transition strength F(d): positive, nonincreasing in the codon distance.
// The functional form is not pinned by the model, so three families are
// provided; exponential with lambda = 0.01 is the default scale for
// distances of order 10..300.
struct StrengthFunction {
    enum class Kind : unsigned char { exponential, power_law, constant };

    Kind kind = Kind::exponential;
    double lambda = 0.01;  // exponential: F(d) = exp(-lambda*d)
    double p = 1.0;        // power law:   F(d) = 1/(1 + d/scale)^p
    double scale = 1.0;
    double c = 1.0;        // constant:    F(d) = c

    double operator()(double d) const;

    static StrengthFunction exponential(double lambda);
    static StrengthFunction power_law(double p, double scale);
    static StrengthFunction constant(double c);

    // "exp:lambda=0.01", "pow:p=2,scale=50", "const:c=1"
    std::string str() const;
    static StrengthFunction parse(const std::string& spec);

    friend bool operator==(const StrengthFunction&, const StrengthFunction&) = default;
};

// Labeled 61x61 matrix over the sense codons in canonical order.
// Entry (j, i) is the rate/probability of the change i -> j (columns index
// the source codon); generators have zero column sums, evolution and
// stochastic matrices column sums of one.
struct CodonMatrix {
    enum class Kind : unsigned char { generator, evolution, stochastic };

    Kind kind = Kind::generator;
    Eigen::MatrixXd m;

    ModelParams params;
    StrengthFunction strength;
    ChargeSource charge_source = ChargeSource::table;
};

std::string_view matrix_kind_name(CodonMatrix::Kind k);
CodonMatrix::Kind parse_matrix_kind(std::string_view s);

// Off-diagonal (j,i) = F(d(i,j)) for nearest sense codons, else 0;
// diagonal = -(column sum of off-diagonals).
CodonMatrix build_generator(const ModelParams& p, const StrengthFunction& f,
                            ChargeSource source = ChargeSource::table);

// P(t) = exp(Q t) by scaling-and-squaring with a truncated Taylor series:
// halve until the 1-norm is <= 0.5, sum terms until the next term is below
// 1e-16 of the accumulated sum, then square back.
CodonMatrix evolve(const CodonMatrix& generator, double t);

// One-step matrix I + tau*Q; rejects tau*max|Q_ii| > 1, which would create
// negative probabilities.
CodonMatrix discrete_step(const CodonMatrix& generator, double tau);

// The 1-PAM approximation I + 0.1*Q (time unit 1e8 years).
CodonMatrix pam_matrix(const CodonMatrix& generator);

// Exposed for reuse by tests; operates on a plain matrix.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a);

}  // namespace cct
