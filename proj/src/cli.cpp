#include "powexp/cli.hpp"

#include "powexp/errors.hpp"
#include "powexp/gennormal.hpp"
#include "powexp/ode.hpp"
#include "powexp/series.hpp"
#include "powexp/stirling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

namespace powexp::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double parse_double(const std::string& flag, const std::string& text) {
    std::string_view s = text;
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || std::isnan(v))
        throw UsageError(flag + ": not a number: '" + text + "'");
    return v;
}

Json num(double v) {
    if (std::isfinite(v))
        return v;
    if (std::isnan(v))
        return "nan";
    return v > 0 ? "inf" : "-inf";
}

std::string csv_cell(const Json& v) {
    switch (v.type()) {
    case Json::value_t::number_float:
        return format_number(v.get<double>());
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
    case Json::value_t::boolean:
        return v.dump();
    case Json::value_t::string: {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos)
            return s;
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"')
                quoted += '"';
            quoted += c;
        }
        return quoted + "\"";
    }
    default:
        return v.dump();
    }
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

struct Record {
    explicit Record(std::string c = {}) : command(std::move(c)) {}

    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::object();
    Json diagnostics = Json::object();
    std::optional<Table> table; // preferred CSV rendering when present
    bool converged = true;
};

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
}

// Scalar records become a one-row table of every non-array field.
Table flatten(const Record& r) {
    Table t;
    std::vector<Json> row;
    t.columns.push_back("command");
    row.push_back(r.command);
    for (const Json* section : {&r.inputs, &r.outputs, &r.diagnostics}) {
        for (auto it = section->begin(); it != section->end(); ++it) {
            if (it.value().is_structured())
                continue;
            t.columns.push_back(it.key());
            row.push_back(it.value());
        }
    }
    t.rows.push_back(std::move(row));
    return t;
}

void emit(std::ostream& os, const Record& r, const std::string& format) {
    if (format == "csv") {
        write_csv(os, r.table ? *r.table : flatten(r));
        return;
    }
    Json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["outputs"] = r.outputs;
    j["diagnostics"] = r.diagnostics;
    if (r.table) {
        j["outputs"]["columns"] = r.table->columns;
        Json rows = Json::array();
        for (const auto& row : r.table->rows)
            rows.push_back(row);
        j["outputs"]["rows"] = rows;
    }
    os << j.dump(2) << '\n';
}

void add_series_diagnostics(Record& r, const SeriesEval& e) {
    r.diagnostics["terms_used"] = e.terms_used;
    r.diagnostics["last_term_magnitude"] = num(e.last_term_magnitude);
    r.diagnostics["cancellation_index"] = num(e.cancellation_index);
    r.diagnostics["converged"] = e.converged;
    r.converged = r.converged && e.converged;
}

Sign parse_sign(const std::string& s) { return s == "pos" ? Sign::Pos : Sign::Neg; }

std::vector<double> parse_list(const std::string& flag, const std::vector<std::string>& items) {
    std::vector<double> out;
    out.reserve(items.size());
    for (const auto& s : items)
        out.push_back(parse_double(flag, s));
    return out;
}

// "m4=1,m5=0,m8=5"
std::vector<MomentValue> parse_moments(const std::string& text) {
    std::vector<MomentValue> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (item.size() < 4 || item[0] != 'm' || eq == std::string::npos)
            throw UsageError("--moments: expected entries like m4=1.5, got '" + item + "'");
        int order = 0;
        const std::string key = item.substr(1, eq - 1);
        auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), order);
        if (ec != std::errc() || ptr != key.data() + key.size() || order < 0)
            throw UsageError("--moments: bad order in '" + item + "'");
        out.push_back({order, parse_double("--moments", item.substr(eq + 1))});
    }
    if (out.empty())
        throw UsageError("--moments: empty list");
    return out;
}

std::vector<double> read_data(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("--data: cannot open '" + path + "'");
    std::vector<double> out;
    std::string token;
    while (in >> token) {
        std::stringstream parts(token);
        std::string cell;
        while (std::getline(parts, cell, ','))
            if (!cell.empty())
                out.push_back(parse_double("--data", cell));
    }
    return out;
}

std::vector<double> make_grid(double from, double to, int points) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid.push_back(points == 1 ? from : from + (to - from) * i / (points - 1));
    return grid;
}

struct Options {
    // common
    std::string tol_text = "1e-10";
    int max_terms = 200;
    std::string format;

    int n = 2;
    std::vector<int> n_list;
    std::string sign = "neg";
    std::string from_text, to_text, x_text;
    std::string m_text = "0", sigma_text = "1";
    std::string form = "bracket";
    int order = 2;
    std::string method = "gamma";
    std::string moments_text, data_path;
    std::vector<std::string> z_items;
    int eq = 13;
    std::string series = "auto";
    std::string k1_text = "0", k2_text = "0";
    std::string grid_from_text = "0.1", grid_to_text = "1.2";
    int grid_points = 23;
    int which = 1;
    std::string out_path;
};

struct Common {
    double tol;
    TruncationPolicy policy;
};

Common resolve_common(Record& r, const Options& o) {
    const double tol = parse_double("--tol", o.tol_text);
    if (!(std::isfinite(tol) && tol > 0.0))
        throw UsageError("--tol: must be finite and positive");
    r.inputs["tol"] = tol;
    r.inputs["max_terms"] = o.max_terms;
    TruncationPolicy p;
    p.max_terms = o.max_terms;
    p.rel_tol = tol;
    return {tol, p};
}

Record cmd_integrate(const Options& o) {
    Record r{"integrate"};
    const double a = parse_double("--from", o.from_text);
    const double b = parse_double("--to", o.to_text);
    r.inputs["n"] = o.n;
    r.inputs["sign"] = o.sign;
    r.inputs["from"] = num(a);
    r.inputs["to"] = num(b);
    const Common c = resolve_common(r, o);
    const SeriesEval e = definite_integral(a, b, o.n, parse_sign(o.sign), c.policy);
    r.outputs["value"] = num(e.value);
    add_series_diagnostics(r, e);
    return r;
}

Record cmd_antideriv(const Options& o) {
    Record r{"antideriv"};
    const double x = parse_double("--x", o.x_text);
    r.inputs["n"] = o.n;
    r.inputs["sign"] = o.sign;
    r.inputs["x"] = num(x);
    r.inputs["form"] = o.form;
    const Common c = resolve_common(r, o);
    const SeriesQuery q{x, o.n, parse_sign(o.sign)};
    const SeriesEval e = o.form == "maclaurin" ? maclaurin_antiderivative(q, c.policy)
                                               : antiderivative(q, c.policy);
    r.outputs["value"] = num(e.value);
    add_series_diagnostics(r, e);
    return r;
}

GenNormal distribution(Record& r, const Options& o) {
    const double m = parse_double("--m", o.m_text);
    const double sigma = parse_double("--sigma", o.sigma_text);
    r.inputs["n"] = o.n;
    r.inputs["m"] = num(m);
    r.inputs["sigma"] = num(sigma);
    return GenNormal(m, sigma, o.n);
}

Record cmd_pdf(const Options& o) {
    Record r{"pdf"};
    const GenNormal d = distribution(r, o);
    const double x = parse_double("--x", o.x_text);
    r.inputs["x"] = num(x);
    resolve_common(r, o);
    r.outputs["pdf"] = num(pdf(d, x));
    r.outputs["z"] = num(d.standardize(x));
    return r;
}

Record cmd_cdf(const Options& o) {
    Record r{"cdf"};
    const GenNormal d = distribution(r, o);
    const double x = parse_double("--x", o.x_text);
    r.inputs["x"] = num(x);
    const Common c = resolve_common(r, o);
    const SeriesEval e = cdf(d, x, c.policy);
    r.outputs["cdf"] = num(e.value);
    add_series_diagnostics(r, e);
    return r;
}

Record cmd_moments(const Options& o) {
    Record r{"moments"};
    const GenNormal d = distribution(r, o);
    r.inputs["order"] = o.order;
    r.inputs["method"] = o.method;
    resolve_common(r, o);
    if (o.order < 0)
        throw DomainError("moments: order must be >= 0");
    if (o.method == "kn") {
        if (o.order % o.n != 0)
            throw DomainError("moments: --method kn needs an order divisible by n");
        const MomentValue mv = moment_kn(d, o.order / o.n);
        r.outputs["value"] = num(mv.value);
        r.diagnostics["k"] = o.order / o.n;
    } else if (o.order % 2 == 1) {
        r.outputs["value"] = num(odd_moment(d, o.order).value);
    } else if (o.method == "recurrence") {
        const RecurrenceMoment rm = central_moment_recurrence(d, o.order);
        r.outputs["value"] = num(rm.moment.value);
        r.diagnostics["fundamental_order"] = rm.fundamental_order;
        r.diagnostics["steps"] = rm.steps;
    } else {
        r.outputs["value"] = num(central_moment_gamma(d, o.order).value);
    }
    return r;
}

Record cmd_shape(const Options& o) {
    Record r{"shape"};
    r.inputs["n"] = o.n;
    resolve_common(r, o);
    if (o.moments_text.empty() == o.data_path.empty())
        throw UsageError("shape: exactly one of --moments or --data is required");
    std::vector<MomentValue> moments;
    if (!o.moments_text.empty()) {
        r.inputs["moments"] = o.moments_text;
        moments = parse_moments(o.moments_text);
    } else {
        r.inputs["data"] = o.data_path;
        const std::vector<double> data = read_data(o.data_path);
        if (o.n < 2 || o.n % 2 != 0)
            throw DomainError("shape: n must be an even integer >= 2");
        moments = empirical_central_moments(data, 2 * o.n);
        r.diagnostics["sample_size"] = data.size();
    }
    const ShapeStats s = generalized_shape(moments, o.n);
    r.outputs["skew_coeff"] = num(s.skew_coeff);
    r.outputs["skew_sign"] = s.skew_sign;
    r.outputs["kurtosis"] = num(s.kurtosis);
    r.outputs["kurtosis_excess"] = num(s.kurtosis_excess);
    return r;
}

Record cmd_mvpdf(const Options& o) {
    Record r{"mvpdf"};
    const std::vector<double> z = parse_list("--z", o.z_items);
    r.inputs["n"] = o.n_list;
    Json zs = Json::array();
    for (double v : z)
        zs.push_back(num(v));
    r.inputs["z"] = zs;
    resolve_common(r, o);
    std::vector<GenNormal> parts;
    for (int n : o.n_list)
        parts.emplace_back(0.0, 1.0, n);
    r.outputs["value"] = num(multivariate_pdf(MultivariateGenNormal(std::move(parts)), z));
    return r;
}

Record cmd_ode_check(const Options& o) {
    Record r{"ode-check"};
    const double k1 = parse_double("--k1", o.k1_text);
    const double k2 = parse_double("--k2", o.k2_text);
    const double from = parse_double("--grid-from", o.grid_from_text);
    const double to = parse_double("--grid-to", o.grid_to_text);
    r.inputs["n"] = o.n;
    r.inputs["eq"] = o.eq;
    r.inputs["series"] = o.series;
    r.inputs["k1"] = num(k1);
    r.inputs["k2"] = num(k2);
    r.inputs["grid_from"] = num(from);
    r.inputs["grid_to"] = num(to);
    r.inputs["grid_points"] = o.grid_points;
    const Common c = resolve_common(r, o);
    if (!(std::isfinite(from) && std::isfinite(to) && from <= to))
        throw UsageError("ode-check: need finite --grid-from <= --grid-to");

    const std::vector<double> grid = make_grid(from, to, o.grid_points);
    const Equation eq = o.eq == 13 ? Equation::Eq13 : Equation::Eq14;
    Series series = o.series == "f" ? Series::F : Series::G;
    if (o.series == "auto") {
        const PairingAudit audit = pairing_audit(o.n, grid, c.policy);
        Json pairing = Json::object();
        pairing["f"] = audit.f_solves ? Json(to_string(*audit.f_solves)) : Json(nullptr);
        pairing["g"] = audit.g_solves ? Json(to_string(*audit.g_solves)) : Json(nullptr);
        r.outputs["pairing"] = pairing;
        if (audit.f_solves == eq)
            series = Series::F;
        else if (audit.g_solves == eq)
            series = Series::G;
        else
            throw DomainError("ode-check: neither f nor g solves equation " + std::string(to_string(eq)) +
                              " on this grid");
    }
    SolutionSpec spec;
    spec.k1 = k1;
    spec.k2 = k2;
    spec.particular = series;
    spec.truncation = c.policy;
    const ResidualReport rep = residual({o.n, eq}, spec, grid);

    r.outputs["particular"] = to_string(series);
    r.outputs["max_abs_residual"] = num(rep.max_abs_residual);
    r.diagnostics["terms_used"] = rep.max_terms_used;
    r.diagnostics["converged"] = rep.converged;
    r.converged = rep.converged;
    Table t{{"x", "residual"}, {}};
    for (std::size_t i = 0; i < rep.grid.size(); ++i)
        t.rows.push_back({num(rep.grid[i]), num(rep.residuals[i])});
    r.table = std::move(t);
    return r;
}

Record cmd_stirling(const Options& o) {
    Record r{"stirling"};
    r.inputs["n"] = o.n;
    resolve_common(r, o);
    const FactorialReport f = stirling_report(o.n);
    const WallisPartial w = wallis_partial(o.n);
    if (2 * o.n <= 100)
        r.outputs["exact"] = factorial(2 * o.n).str();
    r.outputs["log_exact"] = num(f.log_exact);
    r.outputs["approx49"] = num(f.approx49);
    r.outputs["approx50"] = num(f.approx50);
    r.outputs["rel_err49"] = num(f.rel_err49);
    r.outputs["rel_err50"] = num(f.rel_err50);
    r.outputs["ratio_49_over_50"] = num(f.ratio_49_over_50);
    r.outputs["wallis_raw"] = num(w.raw);
    r.outputs["wallis_corrected"] = num(w.corrected);
    r.diagnostics["exact_from_integer"] = f.exact_from_integer;
    return r;
}

Record cmd_figures(const Options& o) {
    Record r{"figures"};
    r.inputs["which"] = o.which;
    Table t;
    auto x_at = [](int i) { return (i - 200) / 100.0; };
    if (o.which == 1) {
        t.columns = {"x", "y_n2", "y_n4", "y_n6"};
        for (int i = 0; i <= 400; ++i) {
            const double x = x_at(i);
            t.rows.push_back({x, rect_limit(x, 2), rect_limit(x, 4), rect_limit(x, 6)});
        }
    } else if (o.which == 2) {
        r.inputs["n"] = o.n;
        t.columns = {"x", "y_n" + std::to_string(o.n), "y_limit"};
        for (int i = 0; i <= 400; ++i) {
            const double x = x_at(i);
            t.rows.push_back({x, rect_limit(x, o.n), rect_limit(x, kInfiniteOrder)});
        }
    } else {
        t.columns = {"n", "z_abs", "ordinate"};
        for (int n = 2; n <= 40; n += 2) {
            const InflexionPoints p = inflexion_points(n);
            t.rows.push_back({n, p.z_abs, p.ordinate});
        }
    }
    r.table = std::move(t);
    return r;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--tol", o.tol_text, "Tolerance (series rel_tol)")->capture_default_str();
    sub->add_option("--max-terms", o.max_terms, "Series term cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void add_sign(CLI::App* sub, Options& o) {
    sub->add_option("--sign", o.sign, "Integrand e^{x^n} (pos) or e^{-x^n} (neg)")
        ->check(CLI::IsMember({"pos", "neg"}))
        ->capture_default_str();
}

void add_distribution(CLI::App* sub, Options& o) {
    sub->add_option("--n", o.n, "Even order n")->required();
    sub->add_option("--m", o.m_text, "Location")->capture_default_str();
    sub->add_option("--sigma", o.sigma_text, "Scale")->capture_default_str();
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '\r', ' ');
    return s;
}

} // namespace

std::string format_number(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Series antiderivatives of e^{+-x^n}, order-(n/2) normal distributions, ODE "
                 "residual checks and Stirling comparisons.",
                 "powexp"};
    app.require_subcommand(1);

    auto* integrate = app.add_subcommand("integrate", "Definite integral of e^{+-x^n}; bounds accept inf/-inf");
    integrate->add_option("--n", o.n, "Order n >= 1")->required();
    add_sign(integrate, o);
    integrate->add_option("--from", o.from_text, "Lower bound")->required();
    integrate->add_option("--to", o.to_text, "Upper bound")->required();

    auto* antideriv = app.add_subcommand("antideriv", "Antiderivative of e^{+-x^n} with F(0) = 0");
    antideriv->add_option("--n", o.n, "Order n >= 1")->required();
    add_sign(antideriv, o);
    antideriv->add_option("--x", o.x_text, "Evaluation point")->required();
    antideriv->add_option("--form", o.form, "Series form")
        ->check(CLI::IsMember({"bracket", "maclaurin"}))
        ->capture_default_str();

    auto* pdf_cmd = app.add_subcommand("pdf", "Density of the order-(n/2) normal distribution");
    add_distribution(pdf_cmd, o);
    pdf_cmd->add_option("--x", o.x_text, "Evaluation point")->required();

    auto* cdf_cmd = app.add_subcommand("cdf", "Distribution function P(X <= x)");
    add_distribution(cdf_cmd, o);
    cdf_cmd->add_option("--x", o.x_text, "Evaluation point")->required();

    auto* moments = app.add_subcommand("moments", "Central moment of the given order");
    add_distribution(moments, o);
    moments->add_option("--order", o.order, "Moment order")->required();
    moments->add_option("--method", o.method, "Evaluation route")
        ->check(CLI::IsMember({"gamma", "recurrence", "kn"}))
        ->capture_default_str();

    auto* shape = app.add_subcommand("shape", "Generalized skewness and kurtosis");
    shape->add_option("--n", o.n, "Reference order n (even)")->required();
    auto* mopt = shape->add_option("--moments", o.moments_text, "Central moments, e.g. m4=1,m5=0,m8=5");
    auto* dopt = shape->add_option("--data", o.data_path, "File of samples (whitespace or comma separated)");
    mopt->excludes(dopt);

    auto* mvpdf = app.add_subcommand("mvpdf", "Density of independent standardized components");
    mvpdf->add_option("--n", o.n_list, "Component orders, e.g. 2,4,6")->required()->delimiter(',');
    mvpdf->add_option("--z", o.z_items, "Standardized coordinates")->required()->delimiter(',');

    auto* ode = app.add_subcommand("ode-check", "Residuals of the f/g series against ODE 13 or 14");
    ode->add_option("--n", o.n, "Order n >= 1")->required();
    ode->add_option("--eq", o.eq, "13: x y'' - (n-1) y' - n^2 x^{2n-1} y = n x^n; 14: same operator = -(n-1)")->check(CLI::IsMember({13, 14}))->capture_default_str();
    ode->add_option("--series", o.series, "Particular series")
        ->check(CLI::IsMember({"f", "g", "auto"}))
        ->capture_default_str();
    ode->add_option("--k1", o.k1_text, "Coefficient of e^{x^n}")->capture_default_str();
    ode->add_option("--k2", o.k2_text, "Coefficient of e^{-x^n}")->capture_default_str();
    ode->add_option("--grid-from", o.grid_from_text, "First grid point")->capture_default_str();
    ode->add_option("--grid-to", o.grid_to_text, "Last grid point")->capture_default_str();
    ode->add_option("--grid-points", o.grid_points, "Number of grid points")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* stirling = app.add_subcommand("stirling", "Stirling-type approximations of (2n)!");
    stirling->add_option("--n", o.n, "n >= 1")->required();

    auto* figures = app.add_subcommand("figures", "Data behind the figures (CSV by default)");
    figures->add_option("--which", o.which, "Figure number")->required()->check(CLI::Range(1, 3));
    auto* fig_n = figures->add_option("--n", o.n, "Finite order for figure 2 (default 100)");
    figures->add_option("--out", o.out_path, "Output file (stdout when omitted)");

    for (auto* sub : {integrate, antideriv, pdf_cmd, cdf_cmd, moments, shape, mvpdf, ode, stirling, figures})
        add_common(sub, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << one_line(e.what()) << '\n';
        return kUsage;
    }
    if (app.got_subcommand(figures) && fig_n->count() == 0)
        o.n = 100;

    std::string kind;
    std::string reason;
    int code = kOk;
    try {
        Record rec;
        if (app.got_subcommand(integrate))
            rec = cmd_integrate(o);
        else if (app.got_subcommand(antideriv))
            rec = cmd_antideriv(o);
        else if (app.got_subcommand(pdf_cmd))
            rec = cmd_pdf(o);
        else if (app.got_subcommand(cdf_cmd))
            rec = cmd_cdf(o);
        else if (app.got_subcommand(moments))
            rec = cmd_moments(o);
        else if (app.got_subcommand(shape))
            rec = cmd_shape(o);
        else if (app.got_subcommand(mvpdf))
            rec = cmd_mvpdf(o);
        else if (app.got_subcommand(ode))
            rec = cmd_ode_check(o);
        else if (app.got_subcommand(stirling))
            rec = cmd_stirling(o);
        else
            rec = cmd_figures(o);

        const bool is_figures = app.got_subcommand(figures);
        const std::string format = !o.format.empty() ? o.format : (is_figures ? "csv" : "json");
        if (is_figures && !o.out_path.empty()) {
            std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
            if (!file)
                throw IoError("cannot open '" + o.out_path + "' for writing");
            emit(file, rec, format);
            if (!file.flush())
                throw IoError("write to '" + o.out_path + "' failed");
        } else {
            emit(out, rec, format);
        }
        if (!rec.converged) {
            kind = "non_converged";
            reason = "series did not meet the truncation rule within --max-terms " +
                     std::to_string(o.max_terms);
            code = kNonConverged;
        }
    } catch (const UsageError& e) {
        kind = "usage", reason = e.what(), code = kUsage;
    } catch (const DivergentIntegral& e) {
        kind = "divergent", reason = e.what(), code = kDomain;
    } catch (const DomainError& e) {
        kind = "domain", reason = e.what(), code = kDomain;
    } catch (const OverflowError& e) {
        kind = "overflow", reason = e.what(), code = kDomain;
    } catch (const ArithmeticOverflow& e) {
        kind = "overflow", reason = e.what(), code = kDomain;
    } catch (const IoError& e) {
        kind = "io", reason = e.what(), code = kDomain;
    } catch (const std::invalid_argument& e) {
        kind = "invalid_input", reason = e.what(), code = kDomain;
    }
    if (code != kOk)
        err << "error: " << kind << ": " << one_line(reason) << '\n';
    return code;
}

} // namespace powexp::cli
