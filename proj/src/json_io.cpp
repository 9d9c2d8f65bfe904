#include "crlab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "crlab/error.hpp"

namespace crlab::json_io {

namespace {

const Json &field(const Json &j, const char *key, const std::string &where)
{
    if (!j.is_object()) {
        throw ParseError(where, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(where + "." + key, "missing field");
    }
    return *it;
}

int as_int(const Json &j, const std::string &where)
{
    if (!j.is_number_integer()) {
        throw ParseError(where, "expected an integer");
    }
    return j.get<int>();
}

std::string as_string(const Json &j, const std::string &where)
{
    if (!j.is_string()) {
        throw ParseError(where, "expected a string");
    }
    return j.get<std::string>();
}

const Json &as_array(const Json &j, const std::string &where)
{
    if (!j.is_array()) {
        throw ParseError(where, "expected an array");
    }
    return j;
}

std::string at(const std::string &where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

// Integer that may exceed 64 bits: accepted as JSON integer or string.
BigInt big_from_json(const Json &j, const std::string &where)
{
    if (j.is_number_unsigned()) {
        return BigInt(std::to_string(j.get<std::uint64_t>()));
    }
    if (j.is_number_integer()) {
        return BigInt(std::to_string(j.get<std::int64_t>()));
    }
    if (j.is_string()) {
        return parse_integer(j.get<std::string>(), where);
    }
    throw ParseError(where, "expected an integer or integer string");
}

Json big_to_json_number(const BigInt &x)
{
    if (sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 63) {
        return Json(static_cast<std::uint64_t>(std::stoull(x.get_str())));
    }
    return Json(x.get_str());
}

template <typename T>
Json optional_to_json(const std::optional<T> &v)
{
    return v ? Json(*v) : Json(nullptr);
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

} // namespace

Json to_json(const GaussianRational &x) { return Json{{"re", to_string(x.re)}, {"im", to_string(x.im)}}; }

GaussianRational gaussian_from_json(const Json &j, const std::string &where)
{
    return {parse_rational(as_string(field(j, "re", where), where + ".re"), where + ".re"),
            parse_rational(as_string(field(j, "im", where), where + ".im"), where + ".im")};
}

Json to_json(const TruncatedSeries &s)
{
    Json coeffs = Json::array();
    for (const auto &c : s.coeffs()) {
        coeffs.push_back(to_json(c));
    }
    return Json{{"K", s.truncation_order()}, {"coeffs", coeffs}};
}

TruncatedSeries series_from_json(const Json &j, const std::string &where)
{
    const int K = as_int(field(j, "K", where), where + ".K");
    if (K < 0) {
        throw ParseError(where + ".K", "must be nonnegative");
    }
    const auto &arr = as_array(field(j, "coeffs", where), where + ".coeffs");
    if (arr.size() != static_cast<std::size_t>(K) + 1) {
        throw ParseError(where + ".coeffs", "expected " + std::to_string(K + 1) + " coefficients, got "
                                                + std::to_string(arr.size()));
    }
    std::vector<GaussianRational> c;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        c.push_back(gaussian_from_json(arr[i], at(where + ".coeffs", i)));
    }
    return {K, std::move(c)};
}

Json to_json(const Valuation &v)
{
    if (v.finite()) {
        return Json(v.order());
    }
    return Json(v.to_string());
}

Json to_json(const SequenceFamily &f)
{
    Json a = Json::array(), eps = Json::array();
    for (const auto &row : f.a) {
        Json r = Json::array();
        for (const auto &x : row) {
            r.push_back(x.get_str());
        }
        a.push_back(r);
    }
    for (const auto &row : f.eps) {
        Json r = Json::array();
        for (const auto &x : row) {
            r.push_back(big_to_json_number(x));
        }
        eps.push_back(r);
    }
    return Json{{"n", f.n}, {"spikes", f.spikes}, {"M_max", f.M_max}, {"a", a}, {"eps", eps}};
}

SequenceFamily family_from_json(const Json &j, const std::string &where)
{
    SequenceFamily f;
    f.n = as_int(field(j, "n", where), where + ".n");
    if (f.n < 1) {
        throw ParseError(where + ".n", "must be >= 1");
    }
    f.M_max = as_int(field(j, "M_max", where), where + ".M_max");
    const auto &spikes = as_array(field(j, "spikes", where), where + ".spikes");
    for (std::size_t i = 0; i < spikes.size(); ++i) {
        f.spikes.push_back(as_int(spikes[i], at(where + ".spikes", i)));
    }
    auto read_rows = [&](const char *key, bool strings_only) {
        const std::string w = where + "." + key;
        const auto &rows = as_array(field(j, key, where), w);
        if (rows.size() != static_cast<std::size_t>(f.n)) {
            throw ParseError(w, "expected " + std::to_string(f.n) + " sequences");
        }
        std::vector<std::vector<BigInt>> out;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto &row = as_array(rows[r], at(w, r));
            if (row.size() != static_cast<std::size_t>(f.M_max)) {
                throw ParseError(at(w, r), "expected " + std::to_string(f.M_max) + " entries");
            }
            std::vector<BigInt> vals;
            for (std::size_t i = 0; i < row.size(); ++i) {
                const std::string wi = at(at(w, r), i);
                vals.push_back(strings_only ? parse_integer(as_string(row[i], wi), wi) : big_from_json(row[i], wi));
            }
            out.push_back(std::move(vals));
        }
        return out;
    };
    f.a = read_rows("a", true);
    f.eps = read_rows("eps", false);
    return f;
}

Json to_json(const Curve &c)
{
    Json h = Json::array();
    for (const auto &s : c.h) {
        h.push_back(to_json(s));
    }
    return Json{{"K", c.K()}, {"g", to_json(c.g)}, {"h", h}};
}

Curve curve_from_json(const Json &j, const std::string &where)
{
    Curve c;
    const int K = as_int(field(j, "K", where), where + ".K");
    c.g = series_from_json(field(j, "g", where), where + ".g");
    const auto &h = as_array(field(j, "h", where), where + ".h");
    if (h.empty()) {
        throw ParseError(where + ".h", "expected at least one component");
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        c.h.push_back(series_from_json(h[i], at(where + ".h", i)));
    }
    auto check = [&](const TruncatedSeries &s, const std::string &w) {
        if (s.truncation_order() != K) {
            throw ParseError(w + ".K", "component order differs from curve K = " + std::to_string(K));
        }
        if (!s[0].is_zero()) {
            throw ParseError(w + ".coeffs[0]", "curve components must vanish at t = 0");
        }
    };
    check(c.g, where + ".g");
    for (std::size_t i = 0; i < c.h.size(); ++i) {
        check(c.h[i], at(where + ".h", i));
    }
    return c;
}

Json to_json(const ModelFunction &F)
{
    Json out = Json::array();
    for (const auto &[key, c] : F.terms()) {
        out.push_back(Json{{"alpha", key.first}, {"beta", key.second}, {"coeff", to_json(c)}});
    }
    return out;
}

ModelFunction model_from_json(const Json &j, const std::string &where)
{
    const auto &arr = as_array(j, where);
    if (arr.empty()) {
        throw ParseError(where, "expected at least one monomial");
    }
    const std::size_t n = as_array(field(arr[0], "alpha", at(where, 0)), at(where, 0) + ".alpha").size();
    if (n == 0) {
        throw ParseError(at(where, 0) + ".alpha", "empty multi-index");
    }
    ModelFunction F(static_cast<int>(n));
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string wi = at(where, i);
        MultiIndex idx[2];
        const char *keys[2] = {"alpha", "beta"};
        for (int b = 0; b < 2; ++b) {
            const std::string wk = wi + "." + keys[b];
            const auto &e = as_array(field(arr[i], keys[b], wi), wk);
            if (e.size() != n) {
                throw ParseError(wk, "expected " + std::to_string(n) + " exponents");
            }
            for (std::size_t k = 0; k < e.size(); ++k) {
                const int v = as_int(e[k], at(wk, k));
                if (v < 0) {
                    throw ParseError(at(wk, k), "negative exponent");
                }
                idx[b].push_back(v);
            }
        }
        if (total_degree({idx[0], idx[1]}) == 0) {
            throw ParseError(wi, "constant term: the model must vanish at the origin");
        }
        F.add(idx[0], idx[1], gaussian_from_json(field(arr[i], "coeff", wi), wi + ".coeff"));
    }
    if (!F.is_real()) {
        throw ParseError(where, "model is not real: coeff(beta, alpha) must equal conj(coeff(alpha, beta))");
    }
    return F;
}

Json to_json(const SpikeCheck &c)
{
    Json out{{"pass", c.pass}};
    if (c.witness) {
        const auto &w = *c.witness;
        out["witness"] = Json{{"kind", w.kind}, {"s", w.s}, {"j", w.j}, {"m", w.m}, {"lhs", w.lhs}, {"rhs", w.rhs}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

Json to_json(const TangencyResult &t)
{
    return Json{{"order", to_json(t.order)},
                {"first_nonzero_coeff", t.first_nonzero_coeff ? to_json(*t.first_nonzero_coeff) : Json(nullptr)},
                {"composed", to_json(t.composed)}};
}

Json to_json(const XmCheckResult &r)
{
    Json slices = Json::array();
    for (const auto &s : r.slices) {
        slices.push_back(Json{{"j", s.j},
                              {"order", to_json(s.order)},
                              {"coeff", s.coeff ? to_json(*s.coeff) : Json(nullptr)},
                              {"pass", s.pass}});
    }
    return Json{{"m", r.m}, {"pass", r.pass}, {"slices", slices}};
}

Json to_json(const SubharmonicReport &r)
{
    return Json{{"j", r.j},
                {"m", r.m},
                {"r_inner", r.r_inner},
                {"r_outer", r.r_outer},
                {"samples", r.samples},
                {"min_laplacian", r.min_laplacian},
                {"min_relative", r.min_relative},
                {"argmin", complex_to_json(r.argmin)},
                {"pass", r.pass}};
}

Json to_json(const smooth::SubharmonicityConstant &c)
{
    return Json{{"C", c.C},
                {"chi_d1_sup", c.chi_d1_sup},
                {"chi_d2_sup", c.chi_d2_sup},
                {"lambda_dd_min", c.lambda_dd_min},
                {"safety", c.safety}};
}

Json to_json(const NormalizedCurve &c)
{
    return Json{{"curve", to_json(c.curve)},
                {"scale", to_string(c.scale)},
                {"halvings", c.halvings},
                {"max_coeff_sq", to_string(c.max_coeff_sq)}};
}

Json to_json(const CompositionBound &b)
{
    Json sums = Json::array();
    for (const auto &s : b.sums_abs_sq) {
        sums.push_back(to_string(s));
    }
    return Json{{"pass", b.pass},
                {"k", b.k},
                {"m_star", b.m_star},
                {"envelope", b.envelope.get_str()},
                {"sums_abs_sq", sums},
                {"violating_m", optional_to_json(b.violating_m)}};
}

Json to_json(const ObstructionCertificate &c)
{
    return Json{{"case", c.case_id},
                {"m_star", optional_to_json(c.m_star)},
                {"q", optional_to_json(c.q)},
                {"alpha_q_msq", c.alpha_q_msq ? Json(to_string(*c.alpha_q_msq)) : Json(nullptr)},
                {"k0", optional_to_json(c.k0)},
                {"spike_hit", optional_to_json(c.spike_hit)},
                {"observed_order", to_json(c.observed_order)},
                {"K", c.observed_order.truncation()},
                {"leading_coeff", c.leading_coeff ? to_json(*c.leading_coeff) : Json(nullptr)},
                {"scale", to_string(c.scale)},
                {"bound_respected", c.bound_respected}};
}

ObstructionCertificate certificate_from_json(const Json &j, const std::string &where)
{
    auto opt_int = [&](const char *key) -> std::optional<int> {
        const auto &v = field(j, key, where);
        if (v.is_null()) {
            return std::nullopt;
        }
        return as_int(v, where + "." + key);
    };
    ObstructionCertificate c;
    c.case_id = as_int(field(j, "case", where), where + ".case");
    c.m_star = opt_int("m_star");
    c.q = opt_int("q");
    c.k0 = opt_int("k0");
    c.spike_hit = opt_int("spike_hit");
    const auto &a = field(j, "alpha_q_msq", where);
    if (!a.is_null()) {
        c.alpha_q_msq = parse_rational(as_string(a, where + ".alpha_q_msq"), where + ".alpha_q_msq");
    }
    const int K = as_int(field(j, "K", where), where + ".K");
    const auto &o = field(j, "observed_order", where);
    if (o.is_number_integer()) {
        c.observed_order = Valuation::at(o.get<int>(), K);
    } else {
        if (as_string(o, where + ".observed_order") != Valuation::beyond(K).to_string()) {
            throw ParseError(where + ".observed_order", "expected an integer or \">=K+1\"");
        }
        c.observed_order = Valuation::beyond(K);
    }
    const auto &lc = field(j, "leading_coeff", where);
    if (!lc.is_null()) {
        c.leading_coeff = gaussian_from_json(lc, where + ".leading_coeff");
    }
    c.scale = parse_rational(as_string(field(j, "scale", where), where + ".scale"), where + ".scale");
    const auto &b = field(j, "bound_respected", where);
    if (!b.is_boolean()) {
        throw ParseError(where + ".bound_respected", "expected a boolean");
    }
    c.bound_respected = b.get<bool>();
    return c;
}

Json to_json(const BgTypeResult &b)
{
    Json graph = Json::array();
    for (const auto &[alpha, c] : b.graph) {
        graph.push_back(Json{{"alpha", alpha}, {"coeff", to_json(c)}});
    }
    return Json{{"K", b.K},
                {"bg_type", b.type ? Json(*b.type) : Json(b.to_string())},
                {"witness", Json{{"graph_w", graph}}}};
}

Json to_json(const DAngeloWitness &w)
{
    Json z = Json::array();
    for (std::size_t i = 0; i < w.z_coeff.size(); ++i) {
        z.push_back(Json{{"coeff", to_json(w.z_coeff[i])}, {"exp", w.z_exp[i]}});
    }
    Json wt = Json::array();
    for (const auto &[d, c] : w.w_terms) {
        wt.push_back(Json{{"deg", d}, {"coeff", to_json(c)}});
    }
    return Json{{"kind", w.kind},
                {"z", z},
                {"w", w.w_on_graph ? "graph" : "zero"},
                {"w_terms", wt},
                {"nu_gamma", w.nu_gamma},
                {"nu_r", w.nu_r ? Json(*w.nu_r) : Json("infinite")}};
}

Json to_json(const DAngeloBound &b)
{
    return Json{{"K", b.K},
                {"dangelo_lower", b.infinite || !b.ratio ? Json(b.to_string()) : Json(to_string(*b.ratio))},
                {"witness", b.witness ? to_json(*b.witness) : Json(nullptr)}};
}

Json to_json(const TypeReport &r)
{
    return Json{{"bg_type", to_json(r.bg)}, {"dangelo", to_json(r.dangelo)}};
}

Json read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path, "cannot open file");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(path, std::string("invalid JSON: ") + e.what());
    }
}

void write_file(const std::string &path, const Json &j)
{
    std::ofstream out(path);
    if (!out) {
        throw ParseError(path, "cannot open file for writing");
    }
    out << j.dump(2) << '\n';
}

} // namespace crlab::json_io
