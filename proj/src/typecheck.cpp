#include "crlab/typecheck.hpp"

#include <numeric>
#include <stdexcept>

namespace crlab {

namespace {

bool is_zero_index(const MultiIndex &a)
{
    for (int x : a) {
        if (x != 0) {
            return false;
        }
    }
    return true;
}

int degree(const MultiIndex &a) { return std::accumulate(a.begin(), a.end(), 0); }

// Sparse bivariate polynomial in (t, tbar).
using BiPoly = std::map<std::pair<int, int>, GaussianRational>;

void accumulate(BiPoly &p, int dt, int dtb, const GaussianRational &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = p.try_emplace({dt, dtb}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            p.erase(it);
        }
    }
}

const std::vector<GaussianRational> &coefficient_choices()
{
    static const std::vector<GaussianRational> choices{GaussianRational(0), GaussianRational(1), GaussianRational(-1),
                                                       GaussianRational::i()};
    return choices;
}

// Odometer over [0, base)^n; returns false after the last tuple.
bool advance(std::vector<int> &digits, int base)
{
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < base) {
            return true;
        }
        digits[i] = 0;
    }
    return false;
}

BigRational ratio_of(int nu_r, int nu_gamma)
{
    BigRational r(nu_r, nu_gamma);
    r.canonicalize();
    return r;
}

bool reaches_bound(const DAngeloWitness &w, int K) { return !w.nu_r || ratio_of(*w.nu_r, w.nu_gamma) >= K + 1; }

// Compares ratios where "infinite" dominates every finite value.
bool better(const DAngeloWitness &cand, const DAngeloWitness &best, int K)
{
    auto key = [K](const DAngeloWitness &w) -> std::optional<BigRational> {
        if (!w.nu_r) {
            return std::nullopt;
        }
        if (reaches_bound(w, K)) {
            return std::nullopt;
        }
        return ratio_of(*w.nu_r, w.nu_gamma);
    };
    const auto a = key(cand), b = key(best);
    if (!b) {
        return false;
    }
    if (!a) {
        return true;
    }
    return *a > *b;
}

} // namespace

ModelFunction::ModelFunction(int n) : n_(n)
{
    if (n < 1) {
        throw std::invalid_argument("ModelFunction: n must be >= 1");
    }
}

void ModelFunction::add(MultiIndex alpha, MultiIndex beta, const GaussianRational &coeff)
{
    if (alpha.size() != static_cast<std::size_t>(n_) || beta.size() != static_cast<std::size_t>(n_)) {
        throw std::invalid_argument("ModelFunction::add: multi-index length differs from n");
    }
    for (int x : alpha) {
        if (x < 0) {
            throw std::invalid_argument("ModelFunction::add: negative exponent");
        }
    }
    for (int x : beta) {
        if (x < 0) {
            throw std::invalid_argument("ModelFunction::add: negative exponent");
        }
    }
    Key key{std::move(alpha), std::move(beta)};
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
    }
    if (it->second.is_zero()) {
        terms_.erase(it);
    }
}

GaussianRational ModelFunction::coeff(const MultiIndex &alpha, const MultiIndex &beta) const
{
    const auto it = terms_.find({alpha, beta});
    return it == terms_.end() ? GaussianRational(0) : it->second;
}

bool ModelFunction::is_real() const
{
    for (const auto &[key, c] : terms_) {
        if (coeff(key.second, key.first) != c.conj()) {
            return false;
        }
    }
    return true;
}

int total_degree(const ModelFunction::Key &key) { return degree(key.first) + degree(key.second); }

ModelFunction model_from_family(const SequenceFamily &family, int K)
{
    ModelFunction F(family.n);
    for (int j = 1; j <= family.n; ++j) {
        for (int m = 1; m <= std::min(K, family.M_max); ++m) {
            BigRational half(family.a_at(j, m), 2);
            half.canonicalize();
            MultiIndex e(static_cast<std::size_t>(family.n), 0), zero(static_cast<std::size_t>(family.n), 0);
            e[static_cast<std::size_t>(j - 1)] = m;
            F.add(e, zero, GaussianRational(half));
            F.add(zero, e, GaussianRational(half));
        }
    }
    return F;
}

PluriharmonicSplit pluriharmonic_split(const ModelFunction &F)
{
    PluriharmonicSplit out{ModelFunction(F.n()), ModelFunction(F.n())};
    for (const auto &[key, c] : F.terms()) {
        auto &target = (is_zero_index(key.first) || is_zero_index(key.second)) ? out.pure : out.mixed;
        target.add(key.first, key.second, c);
    }
    return out;
}

std::map<MultiIndex, GaussianRational> absorbing_graph(const ModelFunction &F, int K)
{
    std::map<MultiIndex, GaussianRational> phi;
    for (const auto &[key, c] : F.terms()) {
        if (is_zero_index(key.second) && !is_zero_index(key.first) && total_degree(key) <= K) {
            phi.emplace(key.first, gr_mul(c, GaussianRational(-2)));
        }
    }
    return phi;
}

std::string BgTypeResult::to_string() const { return type ? std::to_string(*type) : ">=" + std::to_string(K + 1); }

BgTypeResult bg_type(const ModelFunction &F, int K)
{
    BgTypeResult out;
    out.K = K;
    const auto split = pluriharmonic_split(F);
    for (const auto &[key, c] : split.mixed.terms()) {
        const int d = total_degree(key);
        if (d <= K && (!out.type || d < *out.type)) {
            out.type = d;
        }
    }
    out.graph = absorbing_graph(F, K);
    return out;
}

std::string DAngeloBound::to_string() const
{
    if (infinite) {
        return ">=" + std::to_string(K + 1);
    }
    return ratio ? crlab::to_string(*ratio) : "none";
}

DAngeloWitness evaluate_monomial_curve(const ModelFunction &F, int K, const std::vector<GaussianRational> &coeff,
                                       const std::vector<int> &exps, bool w_on_graph)
{
    const int n = F.n();
    if (coeff.size() != static_cast<std::size_t>(n) || exps.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("evaluate_monomial_curve: curve dimension differs from model");
    }
    DAngeloWitness w;
    w.z_coeff = coeff;
    w.z_exp = exps;
    w.w_on_graph = w_on_graph;

    // z^alpha along the curve is a single monomial c^alpha t^{<p, alpha>}.
    auto along = [&](const MultiIndex &alpha, bool conjugate) {
        GaussianRational c(1);
        int d = 0;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (alpha[i] == 0) {
                continue;
            }
            const GaussianRational base = conjugate ? coeff[i].conj() : coeff[i];
            c = gr_mul(c, pow(base, static_cast<unsigned long>(alpha[i])));
            d += exps[i] * alpha[i];
        }
        return std::pair{d, c};
    };

    if (w_on_graph) {
        for (const auto &[alpha, c] : absorbing_graph(F, K)) {
            const auto [d, v] = along(alpha, false);
            const GaussianRational term = gr_mul(c, v);
            if (term.is_zero()) {
                continue;
            }
            auto [it, inserted] = w.w_terms.try_emplace(d, term);
            if (!inserted) {
                it->second += term;
                if (it->second.is_zero()) {
                    w.w_terms.erase(it);
                }
            }
        }
    }

    BiPoly r;
    const GaussianRational half(BigRational(1, 2));
    for (const auto &[d, c] : w.w_terms) {
        accumulate(r, d, 0, gr_mul(c, half));
        accumulate(r, 0, d, gr_mul(c.conj(), half));
    }
    for (const auto &[key, c] : F.terms()) {
        if (total_degree(key) > K) {
            continue;
        }
        const auto [da, va] = along(key.first, false);
        const auto [db, vb] = along(key.second, true);
        accumulate(r, da, db, gr_mul(c, gr_mul(va, vb)));
    }

    int nu_gamma = std::numeric_limits<int>::max();
    for (int i = 0; i < n; ++i) {
        if (!coeff[static_cast<std::size_t>(i)].is_zero()) {
            nu_gamma = std::min(nu_gamma, exps[static_cast<std::size_t>(i)]);
        }
    }
    if (!w.w_terms.empty()) {
        nu_gamma = std::min(nu_gamma, w.w_terms.begin()->first);
    }
    if (nu_gamma == std::numeric_limits<int>::max()) {
        throw std::invalid_argument("evaluate_monomial_curve: constant curve");
    }
    w.nu_gamma = nu_gamma;
    for (const auto &[deg, c] : r) {
        const int d = deg.first + deg.second;
        if (!w.nu_r || d < *w.nu_r) {
            w.nu_r = d;
        }
    }
    return w;
}

DAngeloBound dangelo_lower_bound(const ModelFunction &F, int budget, int K)
{
    if (budget < 1) {
        throw std::invalid_argument("dangelo_lower_bound: exponent budget must be >= 1");
    }
    const int n = F.n();
    const auto &choices = coefficient_choices();
    const int nc = static_cast<int>(choices.size());
    DAngeloBound out;
    out.K = K;

    std::optional<DAngeloWitness> best;
    auto consider = [&](DAngeloWitness w) {
        if (!best || better(w, *best, K)) {
            best = std::move(w);
        }
        return reaches_bound(*best, K);
    };

    auto run = [&]() {
        // Graph-slice curves: regular curves t -> (c t, phi(c t)).
        std::vector<int> cdig(static_cast<std::size_t>(n), 0);
        const std::vector<int> ones(static_cast<std::size_t>(n), 1);
        while (advance(cdig, nc)) {
            std::vector<GaussianRational> coeff;
            for (int d : cdig) {
                coeff.push_back(choices[static_cast<std::size_t>(d)]);
            }
            auto w = evaluate_monomial_curve(F, K, coeff, ones, true);
            w.kind = "graph-slice";
            if (consider(std::move(w))) {
                return;
            }
        }
        // Monomial curves.
        std::vector<int> pdig(static_cast<std::size_t>(n), 0);
        do {
            std::vector<int> exps;
            for (int d : pdig) {
                exps.push_back(d + 1);
            }
            std::fill(cdig.begin(), cdig.end(), 0);
            while (advance(cdig, nc)) {
                bool canonical = true;
                std::vector<GaussianRational> coeff;
                for (std::size_t i = 0; i < cdig.size(); ++i) {
                    coeff.push_back(choices[static_cast<std::size_t>(cdig[i])]);
                    if (cdig[i] == 0 && exps[i] != 1) {
                        canonical = false;
                    }
                }
                if (!canonical) {
                    continue;
                }
                for (bool on_graph : {true, false}) {
                    if (on_graph && exps == ones) {
                        continue;
                    }
                    auto w = evaluate_monomial_curve(F, K, coeff, exps, on_graph);
                    w.kind = "monomial";
                    if (consider(std::move(w))) {
                        return;
                    }
                }
            }
        } while (advance(pdig, budget));
    };
    run();

    if (best) {
        if (reaches_bound(*best, K)) {
            out.infinite = true;
        } else {
            out.ratio = ratio_of(*best->nu_r, best->nu_gamma);
        }
        out.witness = std::move(best);
    }
    return out;
}

TypeReport type_report(const ModelFunction &F, int budget, int K)
{
    return {bg_type(F, K), dangelo_lower_bound(F, budget, K)};
}

} // namespace crlab
