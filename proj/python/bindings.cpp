// Python module crlab._core. Structured values cross the boundary as JSON
// text in the same encodings the CLI reads and writes; crlab/__init__.py
// turns them into dicts.

#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crlab/cli.hpp"
#include "crlab/error.hpp"
#include "crlab/json_io.hpp"

namespace py = pybind11;
using namespace crlab;
using json_io::Json;

namespace {

SequenceFamily family_arg(const std::string &text) { return json_io::family_from_json(Json::parse(text)); }
Curve curve_arg(const std::string &text) { return json_io::curve_from_json(Json::parse(text)); }
ModelFunction model_arg(const std::string &text) { return json_io::model_from_json(Json::parse(text)); }
TruncatedSeries series_arg(const std::string &text) { return json_io::series_from_json(Json::parse(text), "series"); }

template <typename T>
std::string dump(const T &value)
{
    return json_io::to_json(value).dump();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact and numerical tools for infinite-type hypersurface germs";

    static py::exception<Error> base(m, "CrlabError");
    static py::exception<ParseError> parse(m, "ParseError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const ParseError &e) {
            py::set_error(parse, e.what());
        } catch (const Error &e) {
            py::set_error(base, e.what());
        } catch (const Json::exception &e) {
            py::set_error(parse, e.what());
        }
    });

    m.def("series_mul", [](const std::string &a, const std::string &b) {
        return dump(ps_mul(series_arg(a), series_arg(b)));
    });
    m.def("series_pow", [](const std::string &h, unsigned k) { return dump(ps_pow(series_arg(h), k)); });
    m.def("series_compose", [](const std::vector<std::string> &a, const std::string &h) {
        std::vector<BigRational> coeffs;
        for (const auto &s : a) {
            coeffs.push_back(parse_rational(s, "a"));
        }
        return dump(ps_compose_outer(coeffs, series_arg(h)));
    });
    m.def("series_valuation", [](const std::string &s) { return dump(valuation(series_arg(s))); });

    m.def("gen_sequences", [](int n, const std::vector<int> &spikes, int M_max) {
        return dump(gen_sequences(n, spikes, M_max));
    });
    m.def("verify_spike_conditions", [](const std::string &f) { return dump(verify_spike_conditions(family_arg(f))); });
    m.def("constant_C", [](double safety) { return dump(smooth::compute_constant_C(safety)); }, py::arg("safety") = 2.0);
    m.def("chi", &smooth::chi_eval, py::arg("t"), py::arg("order") = 0);
    m.def("lambda_profile", &smooth::lambda_eval, py::arg("x"), py::arg("order") = 0);

    m.def(
        "eval_f",
        [](const std::string &f, int j, std::complex<double> z, int M) {
            const SurfaceModel model(family_arg(f));
            return eval_f_trunc(j, z, model, M);
        },
        py::arg("family"), py::arg("j"), py::arg("z"), py::arg("M"));
    m.def(
        "check_subharmonic",
        [](const std::string &f, int M, int samples, double tol, std::uint64_t seed, double c_scale) {
            const SurfaceModel model = SurfaceModel(family_arg(f)).with_scaled_constant(c_scale);
            Json out = Json::array();
            for (const auto &r : check_subharmonic(model, M, samples, tol, seed)) {
                out.push_back(json_io::to_json(r));
            }
            return out.dump();
        },
        py::arg("family"), py::arg("M"), py::arg("samples") = 200, py::arg("tol") = 1e-9, py::arg("seed") = 0,
        py::arg("c_scale") = 1.0);
    m.def(
        "taylor_extract",
        [](const std::string &f, int j, int M, int mm, double r, int nodes) {
            const SurfaceModel model(family_arg(f));
            return taylor_extract(j, model, M, mm, r, nodes);
        },
        py::arg("family"), py::arg("j"), py::arg("M"), py::arg("m"), py::arg("r") = 1e-3, py::arg("nodes") = 4096);

    m.def("tangency", [](const std::string &f, const std::string &c) {
        return dump(tangency_order(curve_arg(c), family_arg(f)));
    });
    m.def("xm_check", [](const std::string &f, int mm) { return dump(xm_tangency_check(family_arg(f), mm)); });
    m.def("obstruct", [](const std::string &f, const std::string &c) {
        return dump(obstruction_certificate(curve_arg(c), family_arg(f)));
    });
    m.def(
        "obstruct_batch",
        [](const std::string &f, std::uint64_t seed, int count, int deg, int K) {
            Json out = Json::array();
            for (const auto &e : obstruction_batch(family_arg(f), seed, count, deg, K)) {
                Json row{{"index", e.index}, {"curve", json_io::to_json(e.curve)}};
                if (e.certificate) {
                    row["certificate"] = json_io::to_json(*e.certificate);
                } else {
                    row["error"] = e.error;
                }
                out.push_back(row);
            }
            return out.dump();
        },
        py::arg("family"), py::arg("seed") = 42, py::arg("count") = 100, py::arg("deg") = 5, py::arg("K") = 36);

    m.def("bg_type", [](const std::string &F, int K) { return dump(bg_type(model_arg(F), K)); });
    m.def(
        "dangelo_bound",
        [](const std::string &F, int budget, int K) { return dump(dangelo_lower_bound(model_arg(F), budget, K)); },
        py::arg("model"), py::arg("budget"), py::arg("K"));
    m.def("model_from_family", [](const std::string &f, int K) { return dump(model_from_family(family_arg(f), K)); });

    m.def("run_cli", [](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
