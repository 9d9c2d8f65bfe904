#include "crlab/obstruct.hpp"

#include <stdexcept>

#include "crlab/error.hpp"
#include "crlab/parallel.hpp"
#include "crlab/random.hpp"

namespace crlab {

namespace {

BigRational max_abs_sq(const Curve &c)
{
    BigRational best = 0;
    auto scan = [&best](const TruncatedSeries &s) {
        for (const auto &x : s.coeffs()) {
            const BigRational v = gr_abs_sq(x);
            if (v > best) {
                best = v;
            }
        }
    };
    scan(c.g);
    for (const auto &h : c.h) {
        scan(h);
    }
    return best;
}

bool fits_unit_disk(const Curve &c, int p)
{
    // |c_k|^2 4^{-p k} <= 1 for every stored coefficient.
    auto ok = [p](const TruncatedSeries &s) {
        for (int k = 1; k <= s.truncation_order(); ++k) {
            const BigRational v = gr_abs_sq(s[k]);
            if (sgn(v) == 0) {
                continue;
            }
            BigInt bound;
            mpz_ui_pow_ui(bound.get_mpz_t(), 4, static_cast<unsigned long>(p) * static_cast<unsigned long>(k));
            if (v > BigRational(bound)) {
                return false;
            }
        }
        return true;
    };
    if (!ok(c.g)) {
        return false;
    }
    for (const auto &h : c.h) {
        if (!ok(h)) {
            return false;
        }
    }
    return true;
}

BigRational random_unit_component(Rng &rng)
{
    const long q = rng.uniform(1, 8);
    const long p = rng.uniform(-q, q);
    return BigRational(p, q);
}

GaussianRational random_coeff(Rng &rng, bool nonzero)
{
    for (;;) {
        GaussianRational c(random_unit_component(rng), random_unit_component(rng));
        c.re.canonicalize();
        c.im.canonicalize();
        const BigRational n2 = gr_abs_sq(c);
        if (n2 > 1 || (nonzero && sgn(n2) == 0)) {
            continue;
        }
        return c;
    }
}

TruncatedSeries random_poly(Rng &rng, int deg, int K)
{
    const int d = static_cast<int>(rng.uniform(1, deg));
    std::vector<GaussianRational> c(static_cast<std::size_t>(K) + 1);
    for (int k = 1; k <= std::min(d, K); ++k) {
        c[static_cast<std::size_t>(k)] = random_coeff(rng, k == d);
    }
    return {K, std::move(c)};
}

} // namespace

NormalizedCurve normalize_curve(const Curve &curve)
{
    validate_curve(curve);
    if (curve.is_constant()) {
        throw ConstantCurve("normalize_curve: curve vanishes identically up to order " + std::to_string(curve.K()));
    }
    NormalizedCurve out;
    int p = 0;
    while (!fits_unit_disk(curve, p)) {
        ++p;
    }
    out.halvings = p;
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(p));
    out.scale = BigRational(BigInt(1), den);
    out.scale.canonicalize();
    out.curve.g = ps_rescale(curve.g, out.scale);
    for (const auto &h : curve.h) {
        out.curve.h.push_back(ps_rescale(h, out.scale));
    }
    out.max_coeff_sq = max_abs_sq(out.curve);
    return out;
}

CompositionBound composition_sum_bound(const TruncatedSeries &h, int k, int m_star)
{
    if (m_star < 1 || k < m_star) {
        throw std::invalid_argument("composition_sum_bound: need k >= m_star >= 1");
    }
    if (!h[0].is_zero()) {
        throw NonvanishingConstantTerm("composition_sum_bound: h(0) != 0");
    }
    CompositionBound out;
    out.k = k;
    out.m_star = m_star;
    const auto uk = static_cast<unsigned long>(k);
    mpz_ui_pow_ui(out.envelope.get_mpz_t(), uk, 4 * uk);

    const int degree = k * m_star;
    const TruncatedSeries hh = h.with_truncation(std::max(degree, h.truncation_order()));
    TruncatedSeries power = hh;
    for (int m = 1; m <= k; ++m) {
        if (m > 1) {
            power = ps_mul(power, hh);
        }
        const BigRational s = gr_abs_sq(power[degree]);
        out.sums_abs_sq.push_back(s);
        if (s > BigRational(out.envelope) && !out.violating_m) {
            out.violating_m = m;
            out.pass = false;
        }
    }
    return out;
}

ObstructionCertificate obstruction_certificate(const Curve &curve, const SequenceFamily &family)
{
    const NormalizedCurve norm = normalize_curve(curve);
    const Curve &c = norm.curve;
    ObstructionCertificate cert;
    cert.scale = norm.scale;

    if (c.h_all_zero()) {
        cert.case_id = 1;
        const auto t = tangency_order(c, family);
        cert.observed_order = t.order;
        cert.leading_coeff = t.first_nonzero_coeff;
        cert.bound_respected = t.order.finite();
        return cert;
    }
    cert.case_id = c.g.is_zero() ? 2 : 3;

    int m_star = c.K() + 1;
    int q = 0;
    for (int j = 1; j <= c.n(); ++j) {
        const auto v = valuation(c.h[static_cast<std::size_t>(j - 1)]);
        if (v.finite() && v.order() < m_star) {
            m_star = v.order();
            q = j;
        }
    }
    const BigRational alpha_sq = gr_abs_sq(c.h[static_cast<std::size_t>(q - 1)][m_star]);
    cert.m_star = m_star;
    cert.q = q;
    cert.alpha_q_msq = alpha_sq;

    // Least c with c^2 |alpha|^2 >= 1, i.e. c = ceil(1/|alpha|).
    BigInt recip_sq = ceil(BigRational(alpha_sq.get_den(), alpha_sq.get_num()));
    const BigInt inv_ceil = iroot_ceil(recip_sq, 2);
    const BigInt k0 = 1 + std::max(BigInt(m_star), inv_ceil);
    if (!k0.fits_sint_p() || k0 > BigInt(family.M_max) + 1) {
        throw TruncationTooSmall("k0 = " + to_string(k0) + " lies beyond every spike of the family");
    }
    cert.k0 = static_cast<int>(k0.get_si());

    for (std::size_t s = 1; s <= family.spikes.size(); ++s) {
        const int ks = family.spikes[s - 1];
        if (designated_sequence(static_cast<int>(s), family.n) == q && ks >= *cert.k0) {
            cert.spike_hit = ks;
            break;
        }
    }
    if (!cert.spike_hit || *cert.spike_hit * m_star > c.K()) {
        throw TruncationTooSmall("no spike of sequence " + std::to_string(q) + " at or beyond k0 = "
                                 + std::to_string(*cert.k0) + " fits within K/m* = " + std::to_string(c.K()) + "/"
                                 + std::to_string(m_star));
    }

    const auto t = tangency_order(c, family);
    cert.observed_order = t.order;
    cert.leading_coeff = t.first_nonzero_coeff;
    cert.bound_respected = t.order.finite() && t.order.order() <= *cert.spike_hit * m_star;
    return cert;
}

Curve random_normalized_curve(Rng &rng, int n, int deg, int K)
{
    if (n < 1 || deg < 1 || K < 1) {
        throw std::invalid_argument("random_normalized_curve: n, deg and K must be positive");
    }
    const long mode = rng.uniform(0, 3);
    Curve c;
    c.g = TruncatedSeries(K);
    c.h.assign(static_cast<std::size_t>(n), TruncatedSeries(K));
    if (mode == 0) {
        c.g = random_poly(rng, deg, K);
        return c;
    }
    if (mode >= 2) {
        c.g = random_poly(rng, deg, K);
    }
    // At least one h_j present; the others are each dropped with chance 1/4.
    const long forced = rng.uniform(1, n);
    for (int j = 1; j <= n; ++j) {
        const bool keep = (j == forced) || rng.uniform(0, 3) != 0;
        if (keep) {
            c.h[static_cast<std::size_t>(j - 1)] = random_poly(rng, deg, K);
        }
    }
    return c;
}

std::vector<BatchEntry> obstruction_batch(const SequenceFamily &family, std::uint64_t seed, int count, int deg,
                                          int K)
{
    if (count < 0) {
        throw std::invalid_argument("obstruction_batch: negative count");
    }
    Rng rng(seed);
    std::vector<Curve> curves;
    curves.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        curves.push_back(random_normalized_curve(rng, family.n, deg, K));
    }
    return parallel_map<BatchEntry>(curves.size(), [&](std::size_t i) {
        BatchEntry e;
        e.index = i;
        e.curve = curves[i];
        try {
            e.certificate = obstruction_certificate(curves[i], family);
        } catch (const TruncationTooSmall &ex) {
            e.error = std::string("TruncationTooSmall: ") + ex.what();
        }
        return e;
    });
}

} // namespace crlab
