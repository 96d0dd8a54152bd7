#include <kelvin/bvp.hpp>
#include <kelvin/kernel.hpp>
#include <kelvin/parallel.hpp>
#include <kelvin/sampled.hpp>
#include <kelvin/transforms.hpp>
#include <kelvin/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <list>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::json;
using namespace kelvin;

namespace {

enum Exit { ok = 0, verify_failed = 1, bad_input = 2, no_convergence = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---- output

void emit_json(const json& j, std::ostream& os, int depth = 0) {
    const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) { os << "{}"; return; }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad << json(it.key()).dump() << ": ";
                emit_json(it.value(), os, depth + 1);
            }
            os << "\n" << close << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) { os << "[]"; return; }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                emit_json(j[i], os, depth + 1);
            }
            os << "\n" << close << "]";
            return;
        }
        case json::value_t::number_float: {
            double v = j.get<double>();
            os << (std::isfinite(v) ? num(v) : "null");
            return;
        }
        default:
            os << j.dump();
    }
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream& os) const {
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << "\n";
        };
        line(header);
        for (const auto& r : rows) line(r);
    }
};

// ---- options: every value is held as text so a JSON config can fill what the flags left unset

struct Options {
    std::map<std::string, std::string> text;
    std::map<std::string, CLI::Option*> opts;

    void add(CLI::App* app, const std::string& key, const std::string& help, const std::string& def = "") {
        text[key] = def;
        opts[key] = app->add_option("--" + key, text[key], help);
        if (!def.empty()) opts[key]->default_str(def);
    }

    void merge(const json& cfg) {
        for (auto& [key, opt] : opts) {
            if (opt->count() > 0 || !cfg.contains(key)) continue;
            const json& v = cfg[key];
            if (v.is_array()) {
                std::string s;
                for (const auto& e : v) {
                    if (!s.empty()) s += ",";
                    s += e.is_number() ? num(e.get<double>()) : e.get<std::string>();
                }
                text[key] = s;
            } else if (v.is_number()) {
                text[key] = num(v.get<double>());
            } else if (v.is_string()) {
                text[key] = v.get<std::string>();
            } else if (v.is_boolean()) {
                text[key] = v.get<bool>() ? "true" : "false";
            } else {
                throw InputError("config: unsupported value for '" + key + "'");
            }
        }
    }

    bool has(const std::string& key) const { return !text.at(key).empty(); }

    double number(const std::string& key) const {
        const std::string& s = text.at(key);
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw InputError("--" + key + ": not a number: '" + s + "'");
        }
    }

    // "a,b,c" or "lo:hi:n" (n evenly spaced points); must be non-empty and strictly increasing.
    std::vector<double> grid(const std::string& key) const {
        const std::string& s = text.at(key);
        std::vector<double> out;
        auto parse = [&](const std::string& t) {
            try {
                std::size_t used = 0;
                double v = std::stod(t, &used);
                if (used != t.size() || !std::isfinite(v)) throw std::invalid_argument(t);
                return v;
            } catch (const std::exception&) {
                throw InputError("--" + key + ": bad value '" + t + "'");
            }
        };
        if (std::count(s.begin(), s.end(), ':') == 2 && s.find(',') == std::string::npos) {
            auto a = s.find(':'), b = s.rfind(':');
            double lo = parse(s.substr(0, a)), hi = parse(s.substr(a + 1, b - a - 1));
            double n = parse(s.substr(b + 1));
            if (n < 1 || n != std::floor(n)) throw InputError("--" + key + ": point count must be a positive integer");
            if (n == 1) out.push_back(lo);
            for (int i = 0; n > 1 && i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
        } else {
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) out.push_back(parse(item));
        }
        if (out.empty()) throw InputError("--" + key + ": empty grid");
        for (std::size_t i = 1; i < out.size(); ++i)
            if (!(out[i] > out[i - 1])) throw InputError("--" + key + ": grid must be strictly increasing");
        return out;
    }

    Tolerance tolerance() const {
        Tolerance t{number("abs-tol"), number("rel-tol"), 30};
        if (!(t.abs_tol > 0) || !(t.rel_tol > 0)) throw InputError("tolerances must be positive");
        return t;
    }
};

SampledFunction read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open");
    std::string line;
    if (std::getline(in, line) && !line.empty() && line.back() == '\r') line.pop_back();
    // Output of forward-f / forward-g (tau,value and x,value) is accepted as input too.
    if (line != "grid,value" && line != "tau,value" && line != "x,value")
        throw InputError(path + ": row 1: header must be 'grid,value'");
    std::vector<double> grid, values;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw InputError(path + ": row " + std::to_string(row) + ": expected two columns");
        double x, v;
        try {
            std::size_t u1 = 0, u2 = 0;
            std::string a = line.substr(0, comma), b = line.substr(comma + 1);
            x = std::stod(a, &u1);
            v = std::stod(b, &u2);
            if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(line);
        } catch (const std::exception&) {
            throw InputError(path + ": row " + std::to_string(row) + ": malformed number");
        }
        if (!std::isfinite(x) || !std::isfinite(v) || x < 0)
            throw InputError(path + ": row " + std::to_string(row) + ": values must be finite, grid nonnegative");
        if (!grid.empty() && !(x > grid.back()))
            throw InputError(path + ": row " + std::to_string(row) + ": grid not strictly increasing");
        grid.push_back(x);
        values.push_back(v);
    }
    if (grid.empty()) throw InputError(path + ": no data rows");
    return SampledFunction(grid, values);
}

struct Run {
    const Options& o;
    std::string out_path;
    bool serial = false;
    ExecPolicy policy() const { return serial ? ExecPolicy::Serial : ExecPolicy::Parallel; }
};

struct Leaf {
    std::string group, name;
    CLI::App* app;
    Options o;

    void add(const std::string& key, const std::string& help, const std::string& def = "") { o.add(app, key, help, def); }
};

void add_common(Leaf& l) {
    l.add("abs-tol", "absolute tolerance", "1e-14");
    l.add("rel-tol", "relative tolerance", "1e-11");
}

// ---- commands

Table run_kernel(const Run& run) {
    const auto& o = run.o;
    auto xs = o.grid("x"), taus = o.grid("tau");
    for (double x : xs)
        if (!(x > 0)) throw InputError("--x: points must be positive");
    std::vector<KernelMethod> methods;
    const std::string m = o.text.at("method");
    if (m == "all") methods = {KernelMethod::Definition, KernelMethod::MellinBarnes, KernelMethod::FourierCosine};
    else if (m == "definition") methods = {KernelMethod::Definition};
    else if (m == "mellin-barnes") methods = {KernelMethod::MellinBarnes};
    else if (m == "fourier-cosine") methods = {KernelMethod::FourierCosine};
    else throw InputError("--method: unknown '" + m + "'");
    const Tolerance tol = o.tolerance();
    std::optional<ContourSpec> contour;
    if (o.has("abscissa")) {
        contour = ContourSpec{o.number("abscissa"), o.number("half-height"), int(o.number("panels"))};
        contour->validate();
    }
    struct Job {
        double x, tau;
        KernelMethod method;
    };
    std::vector<Job> jobs;
    for (double x : xs)
        for (double t : taus)
            for (auto k : methods) jobs.push_back({x, t, k});
    auto values = map_indices(
        jobs.size(),
        [&](std::size_t i) {
            const Job& j = jobs[i];
            switch (j.method) {
                case KernelMethod::Definition: return kernel_definition(j.x, j.tau);
                case KernelMethod::MellinBarnes:
                    return kernel_mellin_barnes(j.x, j.tau, contour ? *contour : kernel_contour(j.x, j.tau),
                                                Tolerance{tol.abs_tol * 1e-8, tol.rel_tol, tol.max_subdivisions});
                case KernelMethod::FourierCosine:
                    return kernel_fourier_cosine(j.x, j.tau, Tolerance{tol.abs_tol * 1e-4, tol.rel_tol, tol.max_subdivisions});
            }
            return KernelValue{};
        },
        run.policy());
    Table t{{"x", "tau", "method", "value", "errEstimate"}, {}};
    for (std::size_t i = 0; i < jobs.size(); ++i)
        t.rows.push_back({num(jobs[i].x), num(jobs[i].tau), method_name(jobs[i].method), num(values[i].value),
                          num(values[i].err_estimate)});
    return t;
}

TestFunction fixture_f(const Options& o) { return make_test_function(o.grid("rates")); }

IndexFunction fixture_g(const Options& o) {
    const std::string f = o.text.at("fixture");
    if (f == "gaussian-bump") return gaussian_bump_datum(o.number("sigma"));
    if (f == "wedge-datum") return reference_boundary_datum();
    throw InputError("--fixture: unknown index fixture '" + f + "'");
}

InversionVariant variant_of(const Options& o) {
    const std::string v = o.text.at("variant");
    if (v == "corrected") return InversionVariant::Corrected;
    if (v == "published") return InversionVariant::Published;
    if (v == "published-alt-scaling") return InversionVariant::PublishedAltScaling;
    throw InputError("--variant: unknown '" + v + "'");
}

void report_warnings(const Inversion& inv) {
    for (const auto& w : inv.warnings) std::cerr << "warning: " << w << "\n";
}

Table sampled_table(const char* a, const SampledFunction& s) {
    Table t{{a, "value"}, {}};
    for (std::size_t i = 0; i < s.size(); ++i) t.rows.push_back({num(s.grid()[i]), num(s.values()[i])});
    return t;
}

Table with_reference(const Table& t, const std::vector<double>& xs, const std::function<double(double)>& ref) {
    Table out{{t.header[0], "value", "reference", "absError"}, {}};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double v = std::stod(t.rows[i][1]), r = ref(xs[i]);
        out.rows.push_back({t.rows[i][0], t.rows[i][1], num(r), num(std::abs(v - r))});
    }
    return out;
}

Table run_transform(const std::string& op, const Run& run) {
    const auto& o = run.o;
    const Tolerance tol = o.tolerance();
    const bool from_csv = o.has("input");
    if (op == "forward-f") {
        auto taus = o.grid("tau");
        if (from_csv) return sampled_table("tau", forward_f(read_csv(o.text.at("input")), taus, tol, run.policy()));
        ForwardMethod m = ForwardMethod::Auto;
        const std::string ms = o.text.at("method");
        if (ms == "mellin-barnes") m = ForwardMethod::MellinBarnes;
        else if (ms == "composition") m = ForwardMethod::Composition;
        else if (ms == "direct") m = ForwardMethod::Direct;
        else if (ms != "auto") throw InputError("--method: unknown '" + ms + "'");
        return sampled_table("tau", forward_f(fixture_f(o), taus, tol, m, run.policy()));
    }
    if (op == "forward-g") {
        auto xs = o.grid("x");
        if (from_csv) return sampled_table("x", forward_g(read_csv(o.text.at("input")), xs, tol, run.policy()));
        return sampled_table("x", forward_g(fixture_g(o), xs, tol, run.policy()));
    }
    InversionOptions opt;
    opt.variant = variant_of(o);
    opt.policy = run.policy();
    opt.tau_cap = o.number("tau-cap");
    opt.ctl.rel_tol = o.number("series-tol");
    opt.ctl.max_terms = int(o.number("max-terms"));
    opt.ctl.validate();
    auto xs = o.grid("x");
    if (op == "inverse-f") {
        if (from_csv) {
            auto inv = inverse_f(read_csv(o.text.at("input")), xs, opt);
            report_warnings(inv);
            return sampled_table("x", inv.result);
        }
        // Forward-then-inverse round trip on the test-function fixture.
        TestFunction f = fixture_f(o);
        auto inv = inverse_f(continue_forward_f(f, tol), xs, opt);
        report_warnings(inv);
        return with_reference(sampled_table("x", inv.result), xs, [&](double x) { return f(x); });
    }
    if (op == "inverse-g") {
        if (from_csv) {
            auto inv = inverse_g(read_csv(o.text.at("input")), xs, opt);
            report_warnings(inv);
            return sampled_table("x", inv.result);
        }
        IndexFunction g = fixture_g(o);
        auto inv = inverse_g(GTransform{g, tol}, xs, opt);
        report_warnings(inv);
        return with_reference(sampled_table("x", inv.result), xs, [&](double x) { return x <= g.support_end ? g.g(x) : 0.0; });
    }
    throw InputError("transform: unknown operation '" + op + "'");
}

Table run_bvp(const std::string& op, const Run& run) {
    const auto& o = run.o;
    const Tolerance tol = o.tolerance();
    const double beta = o.number("beta");
    const bool from_csv = o.has("input");
    std::optional<SampledFunction> sampled;
    if (from_csv) sampled = read_csv(o.text.at("input"));
    IndexFunction g = from_csv ? as_index_function(*sampled) : fixture_g(o);
    auto rs = o.grid("r");
    if (op == "trace") {
        auto tr = boundary_trace(g, beta, rs, tol, run.policy());
        auto G = forward_g(g, rs, tol, run.policy());
        Table t{{"r", "atZero", "atBeta", "forwardG"}, {}};
        for (std::size_t i = 0; i < rs.size(); ++i)
            t.rows.push_back({num(rs[i]), num(tr.at_zero.values()[i]), num(tr.at_beta.values()[i]), num(G.values()[i])});
        return t;
    }
    std::vector<double> thetas;
    for (double f : o.grid("theta-frac")) thetas.push_back(f * beta);
    std::vector<WedgeParams> pts;
    for (double r : rs)
        for (double th : thetas) {
            WedgeParams w{beta, r, th};
            w.validate();
            pts.push_back(w);
        }
    if (op == "solve") {
        auto u = map_indices(pts.size(), [&](std::size_t i) { return wedge_solution(g, pts[i], tol); }, run.policy());
        Table t{{"r", "theta", "value"}, {}};
        for (std::size_t i = 0; i < pts.size(); ++i) t.rows.push_back({num(pts[i].r), num(pts[i].theta), num(u[i])});
        return t;
    }
    if (op == "residual") {
        const bool study = o.text.at("study") == "true";
        Table t{{"r", "theta", "residual", "hR", "hTheta"}, {}};
        if (study) t.header.push_back("order");
        for (const auto& w : pts) {
            auto rep = pde_residual(g, w, default_steps(w), run.policy());
            std::vector<std::string> row{num(w.r), num(w.theta), num(rep.residual), num(rep.steps.h_r), num(rep.steps.h_theta)};
            if (study) row.push_back(num(residual_convergence(g, w, study_steps(w), run.policy()).order));
            t.rows.push_back(row);
        }
        return t;
    }
    throw InputError("bvp: unknown operation '" + op + "'");
}

json verify_json(const std::vector<SuiteReport>& reports, const VerifyConfig& cfg, bool timing) {
    json j;
    j["seed"] = cfg.seed;
    bool all = true;
    j["suites"] = json::array();
    for (const auto& r : reports) {
        json s;
        s["suite"] = r.suite;
        s["passed"] = r.passed();
        all = all && r.passed();
        s["cases"] = json::array();
        for (const auto& c : r.cases)
            s["cases"].push_back({{"id", c.id},
                                  {"status", c.pass ? "pass" : "fail"},
                                  {"measured", c.measured},
                                  {"relation", c.relation},
                                  {"threshold", c.threshold}});
        s["diagnostics"] = json::array();
        for (const auto& d : r.diagnostics) s["diagnostics"].push_back({{"id", d.id}, {"value", d.value}, {"note", d.note}});
        if (timing) s["wallTime"] = r.wall_time;
        j["suites"].push_back(s);
    }
    j["passed"] = all;
    return j;
}

int exit_for(const NumericError& e) {
    switch (e.kind()) {
        case ErrorKind::Input:
        case ErrorKind::Domain: return bad_input;
        default: return no_convergence;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kelvin-kernel index transforms: kernel evaluation, forward and inverse transforms, wedge problem"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, out_path;
    bool serial = false;
    app.add_option("--config", config_path, "JSON config; command-line flags take precedence");
    app.add_option("--out", out_path, "write output here instead of stdout");
    app.add_flag("--serial", serial, "evaluate grid points serially");

    // One option set per leaf command.
    std::list<Leaf> leaves;
    auto leaf = [&](CLI::App* parent, const std::string& group, const std::string& name, const std::string& help) -> Leaf& {
        leaves.push_back({group, name, parent->add_subcommand(name, help), {}});
        return leaves.back();
    };

    auto& kernel = leaf(&app, "", "kernel", "evaluate the kernel on an (x, tau) grid");
    add_common(kernel);
    kernel.add("x", "x grid: a,b,c or lo:hi:n");
    kernel.add("tau", "tau grid");
    kernel.add("method", "definition | mellin-barnes | fourier-cosine | all", "all");
    kernel.add("abscissa", "contour abscissa for mellin-barnes (default: automatic)");
    kernel.add("half-height", "contour half height", "40");
    kernel.add("panels", "contour panels", "16");

    auto* transform = app.add_subcommand("transform", "forward and inverse index transforms");
    transform->require_subcommand(1);
    auto& ff = leaf(transform, "transform", "forward-f", "(Ff)(tau) of a test function or CSV samples");
    auto& fg = leaf(transform, "transform", "forward-g", "(Gg)(x) of an index fixture or CSV samples");
    auto& iff = leaf(transform, "transform", "inverse-f", "invert F; without --input, a round trip on the fixture");
    auto& ig = leaf(transform, "transform", "inverse-g", "invert G; without --input, a round trip on the fixture");
    for (Leaf* l : {&ff, &fg, &iff, &ig}) {
        add_common(*l);
        l->add("input", "samples as CSV with header grid,value");
    }
    ff.add("tau", "tau grid");
    ff.add("method", "auto | mellin-barnes | composition | direct", "auto");
    for (Leaf* l : {&ff, &iff}) l->add("rates", "decay rates of the test-function fixture", "1,2,3");
    for (Leaf* l : {&fg, &iff, &ig}) l->add("x", "x grid");
    for (Leaf* l : {&fg, &ig}) {
        l->add("fixture", "gaussian-bump | wedge-datum", "gaussian-bump");
        l->add("sigma", "width of the gaussian-bump fixture", "0.6");
    }
    for (Leaf* l : {&iff, &ig}) {
        l->add("variant", "corrected | published | published-alt-scaling", "corrected");
        l->add("tau-cap", "largest tau used by the inversion", "30");
        l->add("series-tol", "relative tolerance of the inversion kernel series", "1e-15");
        l->add("max-terms", "term cap of the inversion kernel series", "600");
    }

    auto* bvp = app.add_subcommand("bvp", "wedge boundary value problem");
    bvp->require_subcommand(1);
    for (const char* name : {"solve", "residual", "trace"}) {
        auto& l = leaf(bvp, "bvp", name, std::string(name) + " on an (r, theta) grid");
        add_common(l);
        l.add("beta", "wedge angle", num(pi / 2.0));
        l.add("r", "r grid", "0.5,1,2");
        l.add("fixture", "gaussian-bump | wedge-datum", "wedge-datum");
        l.add("sigma", "width of the gaussian-bump fixture", "0.6");
        l.add("input", "boundary datum g(tau) as CSV with header grid,value");
        if (l.name != "trace") l.add("theta-frac", "theta as fractions of beta", "0.25,0.75");
        if (l.name == "residual") l.add("study", "also measure the convergence order (true|false)", "false");
    }

    auto& verify = leaf(&app, "", "verify", "run verification suites and print a JSON report");
    std::string suite = "all";
    bool timing = false;
    verify.app->add_option("suite", suite, "specfun | quadrature | kernel | transforms | bvp | all");
    verify.add("seed", "seed for randomized cases", "20240601");
    verify.app->add_flag("--timing", timing, "include wall times (breaks byte-identical output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : bad_input;
    }

    if (const char* env = std::getenv("KELVIN_THREADS")) {
        int n = std::atoi(env);
        if (n < 1) {
            std::cerr << "error: KELVIN_THREADS must be a positive integer\n";
            return bad_input;
        }
        set_worker_count(n);
    }

    std::ostringstream out;
    int code = ok;
    try {
        Leaf* active = nullptr;
        for (auto& l : leaves)
            if (l.app->parsed()) active = &l;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw InputError(config_path + ": cannot open");
            json cfg;
            try {
                cfg = json::parse(in);
            } catch (const json::exception& e) {
                throw InputError(config_path + ": " + e.what());
            }
            if (!cfg.is_object()) throw InputError(config_path + ": expected a JSON object");
            active->o.merge(cfg);
        }
        Run run{active->o, out_path, serial};
        if (active->name == "kernel") {
            run_kernel(run).write(out);
        } else if (active->group == "transform") {
            run_transform(active->name, run).write(out);
        } else if (active->group == "bvp") {
            run_bvp(active->name, run).write(out);
        } else {
            const auto& names = suite_names();
            if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
                throw InputError("verify: unknown suite '" + suite + "'");
            VerifyConfig cfg;
            double seed = run.o.number("seed");
            if (seed < 0 || seed != std::floor(seed)) throw InputError("--seed: must be a nonnegative integer");
            cfg.seed = static_cast<std::uint64_t>(seed);
            cfg.policy = run.policy();
            auto reports = run_verify(suite, cfg);
            json j = verify_json(reports, cfg, timing);
            emit_json(j, out);
            out << "\n";
            if (!j["passed"].get<bool>()) code = verify_failed;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return no_convergence;
    }

    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!(f << out.str())) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return bad_input;
        }
    }
    return code;
}
