#include "crlab/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "crlab/error.hpp"
#include "crlab/parallel.hpp"
#include "crlab/random.hpp"

namespace crlab {

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

void validate_schedule(int n, const std::vector<int> &spikes, int M_max)
{
    if (n < 1) {
        throw InvalidSchedule("n must be >= 1");
    }
    if (M_max < 1) {
        throw InvalidSchedule("M_max must be >= 1");
    }
    for (std::size_t s = 0; s < spikes.size(); ++s) {
        if (s == 0 && spikes[0] < 2) {
            throw InvalidSchedule("first spike must be >= 2, got " + std::to_string(spikes[0]));
        }
        if (s > 0 && spikes[s] - spikes[s - 1] <= n) {
            throw InvalidSchedule("spikes " + std::to_string(spikes[s - 1]) + " and " + std::to_string(spikes[s])
                                  + " are not more than n = " + std::to_string(n) + " apart");
        }
    }
    if (!spikes.empty() && spikes.back() > M_max) {
        throw InvalidSchedule("last spike " + std::to_string(spikes.back()) + " exceeds M_max = "
                              + std::to_string(M_max));
    }
}

BigInt pow_ui(const BigInt &base, unsigned long e)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Re(a z^m) by binary powering in the working precision.
template <typename Real>
Real harmonic_term(const Real &a, const Real &x, const Real &y, int m)
{
    Real re = 1, im = 0;
    Real bre = x, bim = y;
    unsigned e = static_cast<unsigned>(m);
    while (e > 0) {
        if (e & 1U) {
            const Real t = re * bre - im * bim;
            im = re * bim + im * bre;
            re = t;
        }
        e >>= 1;
        if (e > 0) {
            const Real t = bre * bre - bim * bim;
            bim = 2 * bre * bim;
            bre = t;
        }
    }
    return a * re;
}

double harmonic_term_double(const SurfaceModel::Term &term, Complex z, int m)
{
    if (std::isfinite(term.a)) {
        return harmonic_term<double>(term.a, z.real(), z.imag(), m);
    }
    const double r = std::abs(z);
    if (r == 0) {
        return 0;
    }
    return std::exp(term.log_a + m * std::log(r)) * std::cos(m * std::arg(z));
}

void check_index(const SurfaceModel &model, int j, int m)
{
    if (j < 1 || j > model.n() || m < 1 || m > model.M_max()) {
        throw std::out_of_range("term index (j=" + std::to_string(j) + ", m=" + std::to_string(m)
                                + ") outside family");
    }
}

} // namespace

std::vector<BigRational> SequenceFamily::outer_coefficients(int j) const
{
    const auto &row = a[static_cast<std::size_t>(j - 1)];
    std::vector<BigRational> out;
    out.reserve(row.size());
    for (const auto &x : row) {
        out.emplace_back(x);
    }
    return out;
}

int designated_sequence(int s, int n)
{
    const int r = s % n;
    return r == 0 ? n : r;
}

std::vector<int> gen_spike_schedule(int n, int S, int k1)
{
    if (n < 1 || S < 1) {
        throw InvalidSchedule("gen_spike_schedule: n and S must be positive");
    }
    if (k1 < 2) {
        throw InvalidSchedule("gen_spike_schedule: k_1 must be >= 2");
    }
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(S));
    for (int s = 1; s <= S; ++s) {
        out.push_back(k1 + (s - 1) * (n + 1));
    }
    return out;
}

BigInt spike_rhs(const SequenceFamily &family, int s)
{
    const int k = family.spikes.at(static_cast<std::size_t>(s - 1));
    const int q = designated_sequence(s, family.n);
    BigInt sum = 0;
    for (int m = 1; m < k; ++m) {
        sum += family.a_at(q, m);
    }
    for (int j = 1; j <= family.n; ++j) {
        if (j == q) {
            continue;
        }
        for (int m = 1; m <= k; ++m) {
            sum += family.a_at(j, m);
        }
    }
    const auto uk = static_cast<unsigned long>(k);
    const BigInt kk = pow_ui(BigInt(k), uk);
    return kk * (kk * kk * sum + 1);
}

std::vector<std::vector<BigInt>> eps_for(const std::vector<std::vector<BigInt>> &a)
{
    std::vector<std::vector<BigInt>> eps;
    eps.reserve(a.size());
    for (const auto &row : a) {
        std::vector<BigInt> e;
        e.reserve(row.size());
        BigInt running = 0;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto m = static_cast<unsigned long>(i + 1);
            BigInt need = iroot_ceil(row[i] * row[i], m);
            if (need < BigInt(m)) {
                need = BigInt(m);
            }
            if (need > running) {
                running = need;
            }
            e.push_back(running);
        }
        eps.push_back(std::move(e));
    }
    return eps;
}

SequenceFamily gen_sequences(int n, const std::vector<int> &spikes, int M_max)
{
    validate_schedule(n, spikes, M_max);
    SequenceFamily fam;
    fam.n = n;
    fam.spikes = spikes;
    fam.M_max = M_max;
    fam.a.assign(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(M_max)));

    std::size_t next_spike = 0;
    for (int m = 1; m <= M_max; ++m) {
        for (int j = 1; j <= n; ++j) {
            auto &row = fam.a[static_cast<std::size_t>(j - 1)];
            row[static_cast<std::size_t>(m - 1)] = (m == 1) ? BigInt(j) : row[static_cast<std::size_t>(m - 2)] + 1;
        }
        if (next_spike < spikes.size() && spikes[next_spike] == m) {
            const int s = static_cast<int>(next_spike) + 1;
            const int q = designated_sequence(s, n);
            fam.a[static_cast<std::size_t>(q - 1)][static_cast<std::size_t>(m - 1)] = spike_rhs(fam, s) + 1;
            ++next_spike;
        }
    }
    fam.eps = eps_for(fam.a);
    return fam;
}

SpikeCheck verify_spike_conditions(const SequenceFamily &family)
{
    auto fail = [](SpikeWitness w) { return SpikeCheck{false, std::move(w)}; };
    const int n = family.n;

    try {
        validate_schedule(n, family.spikes, family.M_max);
    } catch (const InvalidSchedule &e) {
        return fail({"schedule", 0, 0, 0, e.what(), ""});
    }
    if (family.a.size() != static_cast<std::size_t>(n) || family.eps.size() != static_cast<std::size_t>(n)) {
        return fail({"schedule", 0, 0, 0, "sequence count differs from n", ""});
    }
    for (int j = 1; j <= n; ++j) {
        const auto &row = family.a[static_cast<std::size_t>(j - 1)];
        const auto &erow = family.eps[static_cast<std::size_t>(j - 1)];
        if (row.size() != static_cast<std::size_t>(family.M_max) || erow.size() != row.size()) {
            return fail({"schedule", 0, j, 0, "sequence length differs from M_max", ""});
        }
        for (int m = 1; m <= family.M_max; ++m) {
            const BigInt &cur = family.a_at(j, m);
            if (m == 1 ? cur < 1 : cur <= family.a_at(j, m - 1)) {
                return fail({"monotonicity", 0, j, m, to_string(cur),
                             m == 1 ? std::string("1") : to_string(family.a_at(j, m - 1))});
            }
            const BigInt &e = family.eps_at(j, m);
            const auto um = static_cast<unsigned long>(m);
            if (e < BigInt(m) || pow_ui(e, um) < cur * cur || (m > 1 && e < family.eps_at(j, m - 1))) {
                return fail({"eps", 0, j, m, to_string(e), "max(m, ceil(a^(2/m)))"});
            }
        }
    }
    for (std::size_t s = 1; s <= family.spikes.size(); ++s) {
        const int si = static_cast<int>(s);
        const int q = designated_sequence(si, n);
        const int k = family.spikes[s - 1];
        const BigInt rhs = spike_rhs(family, si);
        const BigInt &lhs = family.a_at(q, k);
        if (!(lhs > rhs)) {
            return fail({"spike", si, q, k, to_string(lhs), to_string(rhs)});
        }
    }
    return {};
}

SurfaceModel::SurfaceModel(SequenceFamily family, smooth::SubharmonicityConstant constant)
    : family_(std::move(family)), constant_(constant)
{
    const double logC = std::log(constant_.C);
    terms_.resize(static_cast<std::size_t>(family_.n));
    a_decimal_.resize(static_cast<std::size_t>(family_.n));
    for (int j = 1; j <= family_.n; ++j) {
        auto &row = terms_[static_cast<std::size_t>(j - 1)];
        auto &dec = a_decimal_[static_cast<std::size_t>(j - 1)];
        for (int m = 1; m <= family_.M_max; ++m) {
            Term t;
            const BigInt &a = family_.a_at(j, m);
            const BigInt &e = family_.eps_at(j, m);
            t.log_a = log_of(a);
            t.a = a.get_d();
            if (t.a > 1e300) {
                t.a = std::numeric_limits<double>::infinity();
            }
            t.log_eps = log_of(e);
            t.eps = e.get_d();
            t.v_coeff = std::exp(logC + std::log(static_cast<double>(m)) + t.log_a - m * t.log_eps);
            row.push_back(t);
            dec.push_back(a.get_str(10));
        }
    }
}

SurfaceModel::SurfaceModel(SequenceFamily family) : SurfaceModel(std::move(family), smooth::compute_constant_C()) {}

const SurfaceModel::Term &SurfaceModel::term(int j, int m) const
{
    return terms_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(m - 1)];
}

const std::string &SurfaceModel::a_decimal(int j, int m) const
{
    return a_decimal_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(m - 1)];
}

SurfaceModel SurfaceModel::with_scaled_constant(double factor) const
{
    auto c = constant_;
    c.C *= factor;
    return SurfaceModel(family_, c);
}

double eval_u(int m, int j, Complex z, const SurfaceModel &model)
{
    check_index(model, j, m);
    const auto &term = model.term(j, m);
    const double t = term.eps * term.eps * std::norm(z);
    if (t >= smooth::kChiHigh) {
        return 0;
    }
    const double h = harmonic_term_double(term, z, m);
    return t <= smooth::kChiLow ? h : smooth::chi_eval(t, 0) * h;
}

double eval_v(int m, int j, Complex z, const SurfaceModel &model)
{
    check_index(model, j, m);
    if (z == Complex(0, 0)) {
        return 0;
    }
    const auto &term = model.term(j, m);
    const double x = std::log(std::norm(z)) + 2 * term.log_eps;
    if (x <= -smooth::kLambdaEdge) {
        return 0;
    }
    return term.v_coeff * smooth::lambda_eval(x, 0);
}

double eval_f_trunc(int j, Complex z, const SurfaceModel &model, int M)
{
    if (M > model.M_max()) {
        throw std::out_of_range("eval_f_trunc: M exceeds M_max");
    }
    double s = 0;
    for (int m = 1; m <= M; ++m) {
        s += eval_u(m, j, z, model) + eval_v(m, j, z, model);
    }
    return s;
}

LaplacianSample laplacian_terms(int j, Complex z, const SurfaceModel &model, int M)
{
    if (z == Complex(0, 0)) {
        throw OriginSingularity("laplacian_f_trunc: z = 0");
    }
    if (M > model.M_max()) {
        throw std::out_of_range("laplacian_f_trunc: M exceeds M_max");
    }
    const double r2 = std::norm(z);
    LaplacianSample out;
    for (int m = 1; m <= M; ++m) {
        check_index(model, j, m);
        const auto &term = model.term(j, m);
        const double e2 = term.eps * term.eps;
        const double t = e2 * r2;
        if (t > smooth::kChiLow && t < smooth::kChiHigh) {
            const double h = harmonic_term_double(term, z, m);
            const double du = 4 * (e2 * (m + 1) * smooth::chi_eval(t, 1) * h + e2 * e2 * r2 * smooth::chi_eval(t, 2) * h);
            out.value += du;
            out.scale += std::abs(du);
        }
        const double x = std::log(r2) + 2 * term.log_eps;
        if (x > -smooth::kLambdaEdge && x < smooth::kLambdaEdge) {
            const double dv = 4 * term.v_coeff * smooth::lambda_eval(x, 2) / r2;
            out.value += dv;
            out.scale += std::abs(dv);
        }
    }
    return out;
}

double laplacian_f_trunc(int j, Complex z, const SurfaceModel &model, int M)
{
    return laplacian_terms(j, z, model, M).value;
}

std::vector<SubharmonicReport> check_subharmonic(const SurfaceModel &model, int M, int samples_per_annulus,
                                                 double tol, std::uint64_t seed)
{
    if (M < 1 || M > model.M_max()) {
        throw std::out_of_range("check_subharmonic: M must lie in [1, M_max]");
    }
    if (samples_per_annulus < 1) {
        throw std::invalid_argument("check_subharmonic: samples per annulus must be positive");
    }
    const int n = model.n();
    // Tasks (j, m) for m = 1..M, then m = 0 for the global set.
    const auto per_j = static_cast<std::size_t>(M + 1);
    const std::size_t count = per_j * static_cast<std::size_t>(n);

    auto run = [&](std::size_t idx) {
        const int j = static_cast<int>(idx / per_j) + 1;
        const int slot = static_cast<int>(idx % per_j);
        const int m = slot < M ? slot + 1 : 0;

        SubharmonicReport rep;
        rep.j = j;
        rep.m = m;
        rep.min_laplacian = std::numeric_limits<double>::infinity();
        rep.min_relative = std::numeric_limits<double>::infinity();
        auto visit = [&](Complex z) {
            const auto s = laplacian_terms(j, z, model, M);
            const double rel = s.value / std::max(1.0, s.scale);
            if (s.value < rep.min_laplacian) {
                rep.min_laplacian = s.value;
                rep.argmin = z;
            }
            rep.min_relative = std::min(rep.min_relative, rel);
            if (s.value < -tol * std::max(1.0, s.scale)) {
                rep.pass = false;
            }
            ++rep.samples;
        };

        if (m > 0) {
            const double eps = model.term(j, m).eps;
            rep.r_inner = 0.5 / eps;
            rep.r_outer = 1.0 / eps;
            // Log-polar lattice: radii uniform in log r over the open
            // annulus, angles by the golden-ratio sequence.
            const double lo = std::log(rep.r_inner), hi = std::log(rep.r_outer);
            const double golden = (std::sqrt(5.0) - 1) / 2;
            for (int i = 0; i < samples_per_annulus; ++i) {
                const double lr = lo + (hi - lo) * (i + 0.5) / samples_per_annulus;
                const double frac = std::fmod(golden * i, 1.0);
                visit(std::polar(std::exp(lr), 2 * std::numbers::pi * frac));
            }
        } else {
            rep.r_inner = 0.25 / model.term(j, M).eps;
            rep.r_outer = 2.0 / model.term(j, 1).eps;
            Rng rng(seed ^ (0xA0761D6478BD642FULL * static_cast<std::uint64_t>(j)));
            const double lo = std::log(rep.r_inner), hi = std::log(rep.r_outer);
            for (int i = 0; i < kGlobalSamples; ++i) {
                const double lr = lo + (hi - lo) * rng.unit();
                const double th = 2 * std::numbers::pi * rng.unit();
                visit(std::polar(std::exp(lr), th));
            }
        }
        return rep;
    };
    return parallel_map<SubharmonicReport>(count, run);
}

double taylor_extract(int j, const SurfaceModel &model, int M, int m, double r, int nodes)
{
    if (M < 1 || M > model.M_max()) {
        throw std::out_of_range("taylor_extract: M must lie in [1, M_max]");
    }
    if (j < 1 || j > model.n()) {
        throw std::out_of_range("taylor_extract: variable index out of range");
    }
    if (m < 1) {
        throw std::invalid_argument("taylor_extract: m must be >= 1");
    }
    if (nodes < 1 || (nodes & (nodes - 1)) != 0) {
        throw std::invalid_argument("taylor_extract: nodes must be a power of 2");
    }
    const double limit = 1.0 / (std::numbers::e * model.term(j, M).eps);
    if (!(r > 0) || r >= limit) {
        throw RadiusTooLarge("taylor_extract: r = " + std::to_string(r) + " must satisfy 0 < r < 1/(e eps_M) = "
                             + std::to_string(limit));
    }

    std::vector<Quad> a_q;
    std::vector<Quad> eps_q;
    std::vector<Quad> vcoeff;
    std::vector<double> log_eps;
    for (int l = 1; l <= M; ++l) {
        a_q.emplace_back(model.a_decimal(j, l));
        eps_q.emplace_back(model.term(j, l).eps);
        vcoeff.emplace_back(model.term(j, l).v_coeff);
        log_eps.push_back(model.term(j, l).log_eps);
    }
    const Quad rq(r);
    const Quad two_pi = 2 * boost::math::constants::pi<Quad>();

    // Same branch structure as eval_u / eval_v, carried out in quad precision.
    auto f = [&](const Quad &x, const Quad &y) {
        const Quad r2 = x * x + y * y;
        Quad s = 0;
        for (int l = 1; l <= M; ++l) {
            const auto i = static_cast<std::size_t>(l - 1);
            const Quad t = eps_q[i] * eps_q[i] * r2;
            if (t < smooth::kChiHigh) {
                const Quad h = harmonic_term<Quad>(a_q[i], x, y, l);
                s += t <= smooth::kChiLow ? h : Quad(smooth::chi_eval(static_cast<double>(t), 0)) * h;
            }
            const double arg = std::log(static_cast<double>(r2)) + 2 * log_eps[i];
            if (arg > -smooth::kLambdaEdge) {
                s += vcoeff[i] * Quad(smooth::lambda_eval(arg, 0));
            }
        }
        return s;
    };

    Quad acc = 0;
    for (int k = 0; k < nodes; ++k) {
        const Quad theta = two_pi * k / nodes;
        const Quad c = cos(theta), sn = sin(theta);
        acc += f(rq * c, rq * sn) * cos(m * theta);
    }
    const Quad result = 2 * acc / (nodes * pow(rq, m));
    return static_cast<double>(result);
}

} // namespace crlab
