#include "crlab/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crlab/error.hpp"

namespace crlab::cli {

namespace {

using json_io::Json;

struct RunConfig {
    std::string command;
    std::string family_path;
    std::string curve_path;
    std::string model_path;
    std::string curves_dir;
    std::string out_path;
    std::string report_path;
    std::string csv_path;
    std::string format = "json";
    int n = 1;
    std::vector<int> spikes;
    int S = 0;
    int k1 = 0;
    int M_max = 0;
    int M = 0;
    int K = 36;
    int m = 0;
    int j = 1;
    std::vector<int> ms;
    int samples = 200;
    int nodes = 4096;
    int count = 100;
    int deg = 5;
    int budget = 6;
    double tol = 1e-9;
    double r = 1e-3;
    double c_scale = 1.0;
    std::uint64_t seed = 42;
};

struct Outcome {
    Json config;
    Json results;
    bool pass = true;
    // Extra file (family JSON for gen-seq) written alongside the report.
    std::optional<Json> artifact;
};

Json make_report(const RunConfig &cfg, const Outcome &o)
{
    return Json{{"command", cfg.command}, {"config", o.config}, {"results", o.results}, {"pass", o.pass}};
}

SequenceFamily load_family(const std::string &path)
{
    auto fam = json_io::family_from_json(json_io::read_file(path), path);
    const auto check = verify_spike_conditions(fam);
    if (!check.pass && check.witness->kind != "spike") {
        throw ParseError(path, "family violates the " + check.witness->kind + " invariant at j = "
                                   + std::to_string(check.witness->j) + ", m = " + std::to_string(check.witness->m));
    }
    return fam;
}

Outcome cmd_gen_seq(const RunConfig &cfg)
{
    std::vector<int> spikes = cfg.spikes;
    if (spikes.empty() && cfg.S > 0) {
        spikes = gen_spike_schedule(cfg.n, cfg.S, cfg.k1 > 0 ? cfg.k1 : cfg.n + 2);
    }
    const int M_max = cfg.M_max > 0 ? cfg.M_max : (spikes.empty() ? 1 : spikes.back());
    const auto fam = gen_sequences(cfg.n, spikes, M_max);
    const auto check = verify_spike_conditions(fam);
    Outcome o;
    o.config = Json{{"n", cfg.n}, {"spikes", spikes}, {"M_max", M_max}};
    o.results = Json{{"family", json_io::to_json(fam)}, {"spike_check", json_io::to_json(check)}};
    o.pass = check.pass;
    o.artifact = json_io::to_json(fam);
    return o;
}

Outcome cmd_check_subharmonic(const RunConfig &cfg)
{
    auto fam = load_family(cfg.family_path);
    const int M = cfg.M > 0 ? cfg.M : fam.M_max;
    SurfaceModel model(std::move(fam));
    if (cfg.c_scale != 1.0) {
        model = model.with_scaled_constant(cfg.c_scale);
    }
    const auto reports = check_subharmonic(model, M, cfg.samples, cfg.tol, cfg.seed);
    Outcome o;
    o.config = Json{{"family", cfg.family_path}, {"M", M},          {"samples", cfg.samples},
                    {"tol", cfg.tol},            {"seed", cfg.seed}, {"c_scale", cfg.c_scale}};
    Json arr = Json::array();
    double global_min = INFINITY;
    for (const auto &r : reports) {
        arr.push_back(json_io::to_json(r));
        o.pass = o.pass && r.pass;
        global_min = std::min(global_min, r.min_relative);
    }
    o.results = Json{{"smooth_ingredients", json_io::to_json(model.constant())},
                     {"annuli", arr},
                     {"min_relative", global_min}};
    return o;
}

Outcome cmd_taylor_extract(const RunConfig &cfg)
{
    auto fam = load_family(cfg.family_path);
    const int M = cfg.M > 0 ? cfg.M : fam.M_max;
    const SurfaceModel model(std::move(fam));
    std::vector<int> ms = cfg.ms;
    if (ms.empty()) {
        for (int m = 1; m <= M; ++m) {
            ms.push_back(m);
        }
    }
    Outcome o;
    o.config = Json{{"family", cfg.family_path}, {"j", cfg.j}, {"M", M}, {"m", ms}, {"r", cfg.r}, {"nodes", cfg.nodes}};
    Json rows = Json::array();
    for (int m : ms) {
        const double got = taylor_extract(cfg.j, model, M, m, cfg.r, cfg.nodes);
        const double expected = m <= M ? model.term(cfg.j, m).a : 0.0;
        const double scale = m <= M ? expected : model.term(cfg.j, M).a;
        const double err = std::abs(got - expected) / scale;
        const bool ok = err <= 1e-10;
        o.pass = o.pass && ok;
        rows.push_back(Json{{"m", m}, {"extracted", got}, {"expected", expected}, {"relative_error", err}, {"pass", ok}});
    }
    o.results = Json{{"smooth_ingredients", json_io::to_json(model.constant())}, {"coefficients", rows}};
    return o;
}

Outcome cmd_tangency(const RunConfig &cfg)
{
    const auto fam = load_family(cfg.family_path);
    const auto curve = json_io::curve_from_json(json_io::read_file(cfg.curve_path), cfg.curve_path);
    const auto t = tangency_order(curve, fam);
    Outcome o;
    o.config = Json{{"family", cfg.family_path}, {"curve", cfg.curve_path}};
    o.results = json_io::to_json(t);
    o.pass = t.order.finite();
    return o;
}

Outcome cmd_xm_check(const RunConfig &cfg)
{
    const auto fam = load_family(cfg.family_path);
    const auto r = xm_tangency_check(fam, cfg.m);
    Outcome o;
    o.config = Json{{"family", cfg.family_path}, {"m", cfg.m}};
    o.results = json_io::to_json(r);
    o.pass = r.pass;
    return o;
}

Outcome cmd_obstruct(const RunConfig &cfg)
{
    const auto fam = load_family(cfg.family_path);
    const auto curve = json_io::curve_from_json(json_io::read_file(cfg.curve_path), cfg.curve_path);
    Outcome o;
    o.config = Json{{"family", cfg.family_path}, {"curve", cfg.curve_path}};
    try {
        const auto cert = obstruction_certificate(curve, fam);
        o.results = json_io::to_json(cert);
        o.pass = cert.bound_respected;
    } catch (const TruncationTooSmall &e) {
        o.results = Json{{"error", "TruncationTooSmall"}, {"message", e.what()}};
        o.pass = false;
    }
    return o;
}

Outcome cmd_obstruct_batch(const RunConfig &cfg)
{
    const auto fam = load_family(cfg.family_path);
    const auto entries = obstruction_batch(fam, cfg.seed, cfg.count, cfg.deg, cfg.K);
    Outcome o;
    o.config = Json{{"family", cfg.family_path}, {"seed", cfg.seed}, {"count", cfg.count}, {"deg", cfg.deg}, {"K", cfg.K}};
    if (!cfg.curves_dir.empty()) {
        std::filesystem::create_directories(cfg.curves_dir);
    }
    Json arr = Json::array();
    int too_small = 0, violated = 0, infinite = 0;
    for (const auto &e : entries) {
        Json item{{"index", e.index}};
        if (!cfg.curves_dir.empty()) {
            std::ostringstream name;
            name << "curve_" << std::setw(4) << std::setfill('0') << e.index << ".json";
            json_io::write_file((std::filesystem::path(cfg.curves_dir) / name.str()).string(), json_io::to_json(e.curve));
            item["curve_file"] = name.str();
        }
        if (e.certificate) {
            item["certificate"] = json_io::to_json(*e.certificate);
            violated += e.certificate->bound_respected ? 0 : 1;
            infinite += e.certificate->observed_order.finite() ? 0 : 1;
        } else {
            item["error"] = e.error;
            ++too_small;
        }
        arr.push_back(item);
    }
    o.pass = too_small == 0 && violated == 0 && infinite == 0;
    o.results = Json{{"summary",
                      {{"count", entries.size()},
                       {"truncation_too_small", too_small},
                       {"bound_violations", violated},
                       {"infinite_orders", infinite}}},
                     {"certificates", arr}};
    return o;
}

ModelFunction load_model(const RunConfig &cfg)
{
    if (!cfg.model_path.empty()) {
        return json_io::model_from_json(json_io::read_file(cfg.model_path), cfg.model_path);
    }
    if (!cfg.family_path.empty()) {
        return model_from_family(load_family(cfg.family_path), cfg.K);
    }
    throw ParseError("--model", "either --model or --family is required");
}

Outcome cmd_bg_type(const RunConfig &cfg)
{
    const auto F = load_model(cfg);
    const auto b = bg_type(F, cfg.K);
    Outcome o;
    o.config = Json{{"model", cfg.model_path}, {"family", cfg.family_path}, {"K", cfg.K}};
    o.results = json_io::to_json(b);
    return o;
}

Outcome cmd_dangelo_bound(const RunConfig &cfg)
{
    const auto F = load_model(cfg);
    const auto rep = type_report(F, cfg.budget, cfg.K);
    Outcome o;
    o.config = Json{{"model", cfg.model_path}, {"family", cfg.family_path}, {"budget", cfg.budget}, {"K", cfg.K}};
    o.results = json_io::to_json(rep);
    // An empty mixed part must give an infinite lower bound.
    o.pass = rep.bg.type.has_value() || rep.dangelo.infinite;
    return o;
}

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream f(path);
    if (!f) {
        throw ParseError(path, "cannot open file for writing");
    }
    f << text;
}

std::string csv_double(double v)
{
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

} // namespace

std::string plot_csv(const Json &report)
{
    const std::string cmd = report.value("command", "");
    std::ostringstream s;
    if (cmd == "check-subharmonic") {
        s << "j,m,r_or_annulus,value\n";
        for (const auto &a : report["results"].value("annuli", Json::array())) {
            s << a["j"].get<int>() << ',' << a["m"].get<int>() << ',' << csv_double(a["r_inner"].get<double>()) << ':'
              << csv_double(a["r_outer"].get<double>()) << ',' << csv_double(a["min_laplacian"].get<double>()) << '\n';
        }
        return s.str();
    }
    if (cmd == "taylor-extract") {
        s << "j,m,r_or_annulus,value,relative_error\n";
        const int j = report["config"].value("j", 1);
        const double r = report["config"].value("r", 0.0);
        for (const auto &row : report["results"].value("coefficients", Json::array())) {
            s << j << ',' << row["m"].get<int>() << ',' << csv_double(r) << ','
              << csv_double(row["extracted"].get<double>()) << ',' << csv_double(row["relative_error"].get<double>())
              << '\n';
        }
        return s.str();
    }
    throw UnsupportedReportKind("no CSV layout for command '" + cmd + "'");
}

void emit_plot_csv(const Json &report, const std::string &path) { write_text(path, plot_csv(report)); }

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"crlab: infinite-type pseudoconvex hypersurface germs, exactly and numerically"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_report = [&cfg](CLI::App *sub) {
        sub->add_option("--report", cfg.report_path, "Report path (default: stdout)");
        sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--csv", cfg.csv_path, "Also write a plotting CSV here");
    };

    auto *gen = app.add_subcommand("gen-seq", "Generate a sequence family satisfying the spike inequalities");
    gen->add_option("--n", cfg.n, "Number of z-variables")->required();
    gen->add_option("--spikes", cfg.spikes, "Spike indices k_1,k_2,...")->delimiter(',');
    gen->add_option("--S", cfg.S, "Number of spikes (minimal-gap schedule, used when --spikes is absent)");
    gen->add_option("--k1", cfg.k1, "First spike for --S (default n+2)");
    gen->add_option("--mmax", cfg.M_max, "Truncation M_max (default: last spike)");
    gen->add_option("--out", cfg.out_path, "Family JSON output path");
    add_report(gen);

    auto *sub = app.add_subcommand("check-subharmonic", "Sample the Laplacian of each truncated f_j");
    sub->add_option("--family", cfg.family_path)->required();
    sub->add_option("--M", cfg.M, "Truncation (default M_max)");
    sub->add_option("--samples", cfg.samples, "Samples per annulus");
    sub->add_option("--tol", cfg.tol);
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--c-scale", cfg.c_scale, "Multiply the constant C (sabotage runs)");
    add_report(sub);

    auto *tay = app.add_subcommand("taylor-extract", "Recover a^j_m by trapezoidal Fourier extraction");
    tay->add_option("--family", cfg.family_path)->required();
    tay->add_option("--j", cfg.j);
    tay->add_option("--M", cfg.M);
    tay->add_option("--m", cfg.ms, "Coefficient indices (default 1..M)")->delimiter(',');
    tay->add_option("--r", cfg.r);
    tay->add_option("--nodes", cfg.nodes);
    add_report(tay);

    auto *tan = app.add_subcommand("tangency", "Exact tangency order of a curve");
    tan->add_option("--family", cfg.family_path)->required();
    tan->add_option("--curve", cfg.curve_path)->required();
    tan->add_option("--out", cfg.report_path);
    add_report(tan);

    auto *xm = app.add_subcommand("xm-check", "Tangency of the X_m slice curves");
    xm->add_option("--family", cfg.family_path)->required();
    xm->add_option("--m", cfg.m)->required();
    xm->add_option("--out", cfg.report_path);
    add_report(xm);

    auto *obs = app.add_subcommand("obstruct", "Obstruction certificate for one curve");
    obs->add_option("--family", cfg.family_path)->required();
    obs->add_option("--curve", cfg.curve_path)->required();
    obs->add_option("--out", cfg.report_path);
    add_report(obs);

    auto *batch = app.add_subcommand("obstruct-batch", "Certificates for seeded random curves");
    batch->add_option("--family", cfg.family_path)->required();
    batch->add_option("--curves", cfg.curves_dir, "Directory receiving the generated curves");
    batch->add_option("--seed", cfg.seed);
    batch->add_option("--count", cfg.count);
    batch->add_option("--deg", cfg.deg);
    batch->add_option("--K", cfg.K);
    batch->add_option("--out", cfg.report_path);
    add_report(batch);

    auto *bg = app.add_subcommand("bg-type", "Bloom-Graham type of a model");
    bg->add_option("--model", cfg.model_path);
    bg->add_option("--family", cfg.family_path, "Use the Taylor model of a family instead");
    bg->add_option("--K", cfg.K)->required();
    bg->add_option("--out", cfg.report_path);
    add_report(bg);

    auto *da = app.add_subcommand("dangelo-bound", "D'Angelo type lower bound of a model");
    da->add_option("--model", cfg.model_path);
    da->add_option("--family", cfg.family_path, "Use the Taylor model of a family instead");
    da->add_option("--budget", cfg.budget);
    da->add_option("--K", cfg.K)->required();
    da->add_option("--out", cfg.report_path);
    add_report(da);

    std::vector<std::string> argv_store{"crlab"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &a : argv_store) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kInputError;
    }

    try {
        Outcome o;
        const auto *chosen = app.get_subcommands().front();
        cfg.command = chosen->get_name();
        if (cfg.command == "gen-seq") {
            o = cmd_gen_seq(cfg);
        } else if (cfg.command == "check-subharmonic") {
            o = cmd_check_subharmonic(cfg);
        } else if (cfg.command == "taylor-extract") {
            o = cmd_taylor_extract(cfg);
        } else if (cfg.command == "tangency") {
            o = cmd_tangency(cfg);
        } else if (cfg.command == "xm-check") {
            o = cmd_xm_check(cfg);
        } else if (cfg.command == "obstruct") {
            o = cmd_obstruct(cfg);
        } else if (cfg.command == "obstruct-batch") {
            o = cmd_obstruct_batch(cfg);
        } else if (cfg.command == "bg-type") {
            o = cmd_bg_type(cfg);
        } else {
            o = cmd_dangelo_bound(cfg);
        }

        const Json report = make_report(cfg, o);
        if (o.artifact && !cfg.out_path.empty()) {
            json_io::write_file(cfg.out_path, *o.artifact);
        }
        const std::string text = cfg.format == "csv" ? plot_csv(report) : report.dump(2) + "\n";
        if (cfg.report_path.empty() && !(o.artifact && !cfg.out_path.empty())) {
            out << text;
        } else if (!cfg.report_path.empty()) {
            write_text(cfg.report_path, text);
        }
        if (!cfg.csv_path.empty()) {
            emit_plot_csv(report, cfg.csv_path);
        }
        if (!o.pass) {
            err << cfg.command << ": check failed; witness embedded in the report\n";
        }
        return o.pass ? kPass : kMathFailure;
    } catch (const ParseError &e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const UnsupportedReportKind &e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument &e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::out_of_range &e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    }
}

} // namespace crlab::cli
