#pragma once

// Bloom-Graham type and D'Angelo lower bounds for model hypersurfaces
// Re(w) + F(z, zbar) = 0, F a real polynomial truncated at total degree K.
//
// Pure terms (only z or only zbar) of F equal Re of a holomorphic
// polynomial and are cancelled by the graph w = phi(z); the lowest mixed
// term is what no codimension-one complex graph can absorb. This is exact
// for the model class, not for general hypersurfaces.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crlab/arith.hpp"
#include "crlab/construct.hpp"

namespace crlab {

using MultiIndex = std::vector<int>;

class ModelFunction {
public:
    using Key = std::pair<MultiIndex, MultiIndex>;  // (alpha, beta): z^alpha zbar^beta

    explicit ModelFunction(int n);

    int n() const { return n_; }
    // Accumulates into an existing monomial; zero results are dropped.
    void add(MultiIndex alpha, MultiIndex beta, const GaussianRational &coeff);
    const std::map<Key, GaussianRational> &terms() const { return terms_; }
    // coeff(beta, alpha) == conj(coeff(alpha, beta)) for every monomial.
    bool is_real() const;
    GaussianRational coeff(const MultiIndex &alpha, const MultiIndex &beta) const;

    friend bool operator==(const ModelFunction &, const ModelFunction &) = default;

private:
    int n_;
    std::map<Key, GaussianRational> terms_;
};

int total_degree(const ModelFunction::Key &key);

// Taylor data of f_1(z_1) + ... + f_n(z_n): a^j_m / 2 on z_j^m and zbar_j^m
// for m <= K.
ModelFunction model_from_family(const SequenceFamily &family, int K);

struct PluriharmonicSplit {
    ModelFunction pure;
    ModelFunction mixed;
};

PluriharmonicSplit pluriharmonic_split(const ModelFunction &F);

// phi(z) = -2 sum_{alpha != 0} c_{alpha,0} z^alpha, so Re(phi) cancels the
// pure part of F; monomials above degree K are ignored.
std::map<MultiIndex, GaussianRational> absorbing_graph(const ModelFunction &F, int K);

struct BgTypeResult {
    int K = 0;
    std::optional<int> type;  // empty means ">= K+1"
    std::map<MultiIndex, GaussianRational> graph;
    std::string to_string() const;
};

BgTypeResult bg_type(const ModelFunction &F, int K);

// z_j = coeff_j t^{exp_j}, w = phi(z(t)) or 0.
struct DAngeloWitness {
    std::string kind;  // "graph-slice" | "monomial"
    std::vector<GaussianRational> z_coeff;
    std::vector<int> z_exp;
    bool w_on_graph = true;
    std::map<int, GaussianRational> w_terms;  // degree -> coefficient
    int nu_gamma = 0;
    std::optional<int> nu_r;  // empty when r o gamma vanishes identically
};

struct DAngeloBound {
    int K = 0;
    bool infinite = false;             // ">= K+1"
    std::optional<BigRational> ratio;  // set when !infinite and a curve was found
    std::optional<DAngeloWitness> witness;
    std::string to_string() const;
};

// Searches graph-slice curves (z = c t, w = phi(z)) first, then monomial
// curves with exponents <= budget and w in {phi(z(t)), 0}; coefficients
// c_j range over {0, 1, -1, i}. Returns the largest nu(r o gamma)/nu(gamma)
// found, reported as ">= K+1" once it reaches K+1. Among equal maxima the
// first curve in enumeration order wins.
DAngeloBound dangelo_lower_bound(const ModelFunction &F, int budget, int K);

// Vanishing order of r o gamma for one explicit monomial curve.
DAngeloWitness evaluate_monomial_curve(const ModelFunction &F, int K, const std::vector<GaussianRational> &coeff,
                                       const std::vector<int> &exps, bool w_on_graph);

struct TypeReport {
    BgTypeResult bg;
    DAngeloBound dangelo;
};

TypeReport type_report(const ModelFunction &F, int budget, int K);

} // namespace crlab
