#pragma once

// Sequence families a^j_m, eps^j_m and the truncated subharmonic functions
// f_j = sum_m (u_m + v_m) built from them.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crlab/arith.hpp"
#include "crlab/smoothfn.hpp"

namespace crlab {

struct SequenceFamily {
    int n = 1;
    std::vector<int> spikes;
    int M_max = 0;
    // a[j-1][m-1] = a^j_m and eps[j-1][m-1] = eps^j_m.
    std::vector<std::vector<BigInt>> a;
    std::vector<std::vector<BigInt>> eps;

    const BigInt &a_at(int j, int m) const { return a[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(m - 1)]; }
    const BigInt &eps_at(int j, int m) const
    {
        return eps[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(m - 1)];
    }
    // a^j_1 .. a^j_{M_max} as rationals, the outer coefficients of f_j.
    std::vector<BigRational> outer_coefficients(int j) const;

    friend bool operator==(const SequenceFamily &, const SequenceFamily &) = default;
};

// Sequence index that spike s (1-based) raises: s mod n, residue 0 meaning n.
int designated_sequence(int s, int n);

// k_s = k_1 + (s - 1)(n + 1).
std::vector<int> gen_spike_schedule(int n, int S, int k1);

// Right-hand side of the spike inequality at spike s (1-based):
//   k^k (k^{2k} (sum_{m<k} a^q_m + sum_{j != q} sum_{m<=k} a^j_m) + 1),
// k = k_s, q = designated_sequence(s, n).
BigInt spike_rhs(const SequenceFamily &family, int s);

// Fills a^j_1 = j, a^j_m = a^j_{m-1} + 1 off-spike, a^q_{k_s} = rhs + 1 at
// spikes, and eps^j_m = running max of max(m, ceil((a^j_m)^{2/m})).
// Throws InvalidSchedule for gaps <= n, non-increasing spikes, k_1 < 2, or
// M_max below the last spike.
SequenceFamily gen_sequences(int n, const std::vector<int> &spikes, int M_max);

// Recomputes eps from a (same rule as gen_sequences).
std::vector<std::vector<BigInt>> eps_for(const std::vector<std::vector<BigInt>> &a);

struct SpikeWitness {
    std::string kind;  // "schedule" | "monotonicity" | "eps" | "spike"
    int s = 0;         // spike index for kind == "spike"
    int j = 0;
    int m = 0;
    std::string lhs;
    std::string rhs;
};

struct SpikeCheck {
    bool pass = true;
    std::optional<SpikeWitness> witness;
};

// Exact check of every family invariant, spike inequalities last. Stops at
// the first violation.
SpikeCheck verify_spike_conditions(const SequenceFamily &family);

// Family plus the concrete chi / Lambda ingredients and constant C, with
// per-term floating data cached for evaluation.
class SurfaceModel {
public:
    struct Term {
        double a = 0;       // a^j_m (may be inf for astronomically large values)
        double log_a = 0;
        double eps = 0;
        double log_eps = 0;
        double v_coeff = 0; // C m a / eps^m, computed in log space
    };

    SurfaceModel(SequenceFamily family, smooth::SubharmonicityConstant constant);
    // Uses compute_constant_C().
    explicit SurfaceModel(SequenceFamily family);

    const SequenceFamily &family() const { return family_; }
    const smooth::SubharmonicityConstant &constant() const { return constant_; }
    int M_max() const { return family_.M_max; }
    int n() const { return family_.n; }
    const Term &term(int j, int m) const;
    // a^j_m in quad precision (exact for a below 2^113).
    const std::string &a_decimal(int j, int m) const;

    // Same family with C multiplied by `factor`.
    SurfaceModel with_scaled_constant(double factor) const;

private:
    SequenceFamily family_;
    smooth::SubharmonicityConstant constant_;
    std::vector<std::vector<Term>> terms_;
    std::vector<std::vector<std::string>> a_decimal_;
};

using Complex = std::complex<double>;

double eval_u(int m, int j, Complex z, const SurfaceModel &model);
double eval_v(int m, int j, Complex z, const SurfaceModel &model);
double eval_f_trunc(int j, Complex z, const SurfaceModel &model, int M);

struct LaplacianSample {
    double value = 0;
    // Sum of |term| over the individual u_m and v_m Laplacians; the scale
    // against which rounding error is judged.
    double scale = 0;
};

// Closed-form Laplacian 4 d^2/dz dzbar of the truncated f_j. Throws
// OriginSingularity at z = 0.
LaplacianSample laplacian_terms(int j, Complex z, const SurfaceModel &model, int M);
double laplacian_f_trunc(int j, Complex z, const SurfaceModel &model, int M);

struct SubharmonicReport {
    int j = 0;
    int m = 0;  // 0 marks the global random sample set
    double r_inner = 0;
    double r_outer = 0;
    std::size_t samples = 0;
    double min_laplacian = 0;
    // min over samples of value / max(1, scale)
    double min_relative = 0;
    Complex argmin{};
    bool pass = true;
};

inline constexpr int kGlobalSamples = 1000;

// Samples each annulus 1/(2 eps^j_m) < |z| < 1/eps^j_m (m <= M) on a
// log-polar lattice plus kGlobalSamples seeded random points per j. A
// sample passes when value >= -tol * max(1, scale). Reports are ordered by
// (j, m) with the global set of each j last.
std::vector<SubharmonicReport> check_subharmonic(const SurfaceModel &model, int M, int samples_per_annulus,
                                                 double tol, std::uint64_t seed = 0);

// Trapezoidal Fourier extraction of a^j_m from f_j on |z| = r:
//   (2 / r^m) (1/N) sum_k f(r e^{i theta_k}) cos(m theta_k).
// Evaluated in quad precision. Throws RadiusTooLarge unless
// r < 1/(e eps^j_M), std::invalid_argument unless nodes is a power of 2 and
// m >= 1.
double taylor_extract(int j, const SurfaceModel &model, int M, int m, double r, int nodes);

} // namespace crlab
