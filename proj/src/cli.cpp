#include "qdescent/cli.hpp"

#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdescent/descent.hpp"
#include "qdescent/norm_checks.hpp"
#include "qdescent/oracle.hpp"
#include "qdescent/parser.hpp"
#include "qdescent/zeros.hpp"

namespace qdescent::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string domain = "Z";
    std::string form;
    std::string point;
    unsigned window = kDefaultWindow;
    std::string format = "text";
    bool trace = false;
    std::size_t dim = 0;
    unsigned height = 2;
    unsigned box = 2;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    std::string n;
};

/// Thrown for usage problems that are neither parse nor domain errors.
class UsageError : public Error {
public:
    using Error::Error;
};

Json point_json(const Point& y) {
    Json arr = Json::array();
    for (const auto& e : y) arr.push_back(to_string(e));
    return arr;
}

Json step_record(std::size_t index, const DescentStep& s) {
    Json rec;
    rec["step"] = index;
    rec["b"] = to_string(s.b);
    rec["norm_b"] = norm(s.b).get_str();
    rec["y"] = point_json(s.y);
    rec["v"] = point_json(s.v);
    rec["A"] = to_string(s.A);
    rec["B"] = to_string(s.B);
    rec["C"] = to_string(s.C);
    rec["b_next"] = to_string(s.b_next);
    rec["norm_b_next"] = norm(s.b_next).get_str();
    rec["x_next"] = to_string(s.x_next);
    return rec;
}

std::string render_value(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s = "(";
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k > 0) s += ',';
            s += render_value(v[k]);
        }
        return s + ")";
    }
    return v.dump();
}

/// One "key=value" line per record, fields in record order.
std::string render_record(const Json& rec) {
    std::string line;
    for (const auto& [key, value] : rec.items()) {
        if (!line.empty()) line += ' ';
        line += key + "=" + render_value(value);
    }
    return line;
}

Json steps_json(const DescentTrace& trace) {
    Json steps = Json::array();
    for (std::size_t k = 0; k < trace.steps.size(); ++k) steps.push_back(step_record(k, trace.steps[k]));
    return steps;
}

struct Problem {
    Domain dom;
    QuadraticPolynomial f;
    std::optional<FractionPoint> x;
};

Problem load(const Options& opt, bool need_point) {
    const Domain dom = Domain::parse(opt.domain);
    if (opt.form.empty()) throw UsageError("--form is required");
    std::optional<FractionPoint> x;
    if (need_point) {
        if (opt.point.empty()) throw UsageError("--point is required");
        x = parse_point(opt.point, dom);
    }
    std::size_t d = opt.dim;
    if (d == 0) d = x ? x->dim() : infer_dimension(opt.form);
    if (x && x->dim() != d)
        throw UsageError("--point has " + std::to_string(x->dim()) + " coordinates, expected " + std::to_string(d));
    QuadraticPolynomial f = parse_form(opt.form, dom, d);
    return {dom, std::move(f), std::move(x)};
}

int cmd_descend(const Options& opt, std::ostream& out) {
    const Problem p = load(opt, true);
    const DescentTrace trace = descend(p.f, *p.x, opt.window);
    const std::string result = to_string(trace.result);
    if (opt.format == "json") {
        Json doc;
        doc["domain"] = p.dom.name();
        doc["form"] = format_form(p.f);
        doc["start"] = to_string(*p.x);
        doc["steps"] = steps_json(trace);
        doc["result"] = result;
        out << doc.dump() << '\n';
        return kOk;
    }
    if (opt.trace)
        for (const auto& rec : steps_json(trace)) out << render_record(rec) << '\n';
    out << result << '\n';
    return kOk;
}

int cmd_represent(const Options& opt, std::ostream& out) {
    const Problem p = load(opt, true);
    const Representation rep = adc_represent(p.f, *p.x, opt.window);
    if (opt.format == "json") {
        Json doc;
        doc["domain"] = p.dom.name();
        doc["form"] = format_form(p.f);
        doc["start"] = to_string(*p.x);
        doc["steps"] = steps_json(rep.trace);
        doc["result"] = to_string(rep.y);
        doc["value"] = to_string(rep.value);
        out << doc.dump() << '\n';
        return kOk;
    }
    if (opt.trace)
        for (const auto& rec : steps_json(rep.trace)) out << render_record(rec) << '\n';
    out << to_string(rep.y) << '\n' << "value=" << to_string(rep.value) << '\n';
    return kOk;
}

// Shared "checked=<n> failures=<k>" reporting.
int emit_report(const Options& opt, std::ostream& out, const std::string& check, const std::string& domain,
                std::size_t checked, const std::vector<std::string>& failures, const std::vector<std::string>& notes,
                Json extra = Json::object()) {
    if (opt.format == "json") {
        Json doc;
        doc["check"] = check;
        doc["domain"] = domain;
        for (const auto& [k, v] : extra.items()) doc[k] = v;
        doc["checked"] = checked;
        doc["failures"] = failures;
        doc["notes"] = notes;
        out << doc.dump() << '\n';
    } else {
        out << "checked=" << checked << " failures=" << failures.size() << '\n';
        for (const auto& line : failures) out << line << '\n';
        for (const auto& line : notes) out << "note: " << line << '\n';
    }
    return failures.empty() ? kOk : kInputError;
}

int cmd_check_euclidean(const Options& opt, std::ostream& out) {
    const Problem p = load(opt, false);
    const EuclideanReport report = check_euclidean(p.f.quadratic_part(), opt.height, opt.box, opt.window);
    std::vector<std::string> lines;
    for (const auto& fail : report.failures)
        lines.push_back(to_string(fail.point) + " window=" + std::to_string(fail.window) +
                        " min_norm=" + fail.min_norm.get_str());
    return emit_report(opt, out, "euclidean", p.dom.name(), report.checked, lines, {},
                       Json{{"form", format_form(p.f)}});
}

int cmd_check_adc(const Options& opt, std::ostream& out) {
    const Problem p = load(opt, false);
    const AdcReport report = verify_adc(p.f, SearchBox{opt.box, opt.height}, opt.window);
    auto describe = [](const AdcEntry& e) {
        std::string s = to_string(e.kind) + " x=" + to_string(e.x) + " value=" + to_string(e.value);
        if (e.descent_y) s += " descent=" + to_string(*e.descent_y);
        if (e.brute_y) s += " brute=" + to_string(*e.brute_y);
        return s;
    };
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    for (const auto& e : report.failures) failures.push_back(describe(e));
    for (const auto& e : report.notes) notes.push_back(describe(e));
    return emit_report(opt, out, "adc", p.dom.name(), report.checked, failures, notes,
                       Json{{"form", format_form(p.f)}, {"corroborated", report.corroborated}});
}

int cmd_check_norm_axioms(const Options& opt, std::ostream& out) {
    const Domain dom = Domain::parse(opt.domain);
    const AxiomReport report = check_norm_axioms(dom, opt.samples, opt.seed);
    std::vector<std::string> lines;
    for (const auto& fail : report.failures) lines.push_back(fail.axiom + " " + fail.witness);
    return emit_report(opt, out, "norm-axioms", dom.name(), report.checked, lines, {});
}

int cmd_check_n2(const Options& opt, std::ostream& out) {
    Options with_form = opt;
    if (with_form.form.empty()) with_form.form = "x^2";
    const Problem p = load(with_form, false);
    const std::vector<Element> elements = p.dom.kind() == DomainKind::PrimeFieldPolynomials
                                              ? elements_in_box(p.dom, opt.height)
                                              : elements_by_norm(p.dom, opt.height);
    const N2Report report = check_n2(p.f, elements, opt.window);
    std::vector<std::string> lines;
    for (const auto& fail : report.failures) lines.push_back(to_string(fail.a) + " " + fail.reason);
    return emit_report(opt, out, "n2", p.dom.name(), report.checked, lines, {}, Json{{"form", format_form(p.f)}});
}

// First (a, b, c), a <= b <= c, with a^2 + b^2 + c^2 = n.
std::optional<Point> three_square_base(const mpz_class& n) {
    mpz_class a = 0;
    while (3 * a * a <= n) {
        mpz_class b = a;
        while (a * a + 2 * b * b <= n) {
            const mpz_class rest = n - a * a - b * b;
            mpz_class c;
            mpz_sqrt(c.get_mpz_t(), rest.get_mpz_t());
            if (c * c == rest) return Point{Element::integer(a), Element::integer(b), Element::integer(c)};
            ++b;
        }
        ++a;
    }
    return std::nullopt;
}

int cmd_three_squares(const Options& opt, std::ostream& out) {
    if (opt.n.empty() || opt.n.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("n must be a positive decimal integer");
    const mpz_class n(opt.n, 10);
    if (n < 1) throw UsageError("n must be positive");
    if (is_excluded_from_three_squares(n)) {
        if (opt.format == "json") {
            Json doc;
            doc["n"] = n.get_str();
            doc["representable"] = false;
            out << doc.dump() << '\n';
        } else {
            out << "not representable\n";
        }
        return kNotRepresentable;
    }

    const Domain dom = Domain::integers();
    QuadraticPolynomial f(dom, 3);
    for (std::size_t k = 0; k < 3; ++k) f.set_quad(k, k, Element::one(dom));
    f.set_constant(Element::integer(-n));

    const std::optional<Point> base = three_square_base(n);
    if (!base) throw InvariantViolation("no three-square representation found for " + n.get_str());
    const FractionPoint start = random_rational_zero(f, *base, opt.seed, 2);
    const DescentTrace trace = descend(f, start, opt.window);

    if (opt.format == "json") {
        Json doc;
        doc["n"] = n.get_str();
        doc["representable"] = true;
        doc["form"] = format_form(f);
        doc["base"] = to_string(*base);
        doc["start"] = to_string(start);
        doc["steps"] = steps_json(trace);
        doc["result"] = to_string(trace.result);
        out << doc.dump() << '\n';
        return kOk;
    }
    out << "base=" << to_string(*base) << '\n' << "start=" << to_string(start) << '\n';
    if (opt.trace)
        for (const auto& rec : steps_json(trace)) out << render_record(rec) << '\n';
    out << "result=" << to_string(trace.result) << '\n';
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Descent from rational to integral zeros of quadratic polynomials", "qdescent"};
    app.require_subcommand(1);

    const std::vector<std::string> formats{"text", "json"};
    auto add_domain = [&](CLI::App* sub) {
        sub->add_option("--domain", opt.domain, "Z, Zi or Fpt:<p>")->capture_default_str();
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "text or json")->check(CLI::IsMember(formats))->capture_default_str();
    };
    auto add_form = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--form", opt.form, "polynomial in x1..xd (aliases x, y, z, w)");
        if (required) o->required();
        sub->add_option("--dim", opt.dim, "number of variables (default: inferred)");
    };
    auto add_window = [&](CLI::App* sub) {
        sub->add_option("--window", opt.window, "oracle search window")->capture_default_str();
    };

    auto* descend_cmd = app.add_subcommand("descend", "descend a rational zero to an integral zero");
    auto* represent_cmd = app.add_subcommand("represent", "represent q(x) by an integral point");
    for (auto* sub : {descend_cmd, represent_cmd}) {
        add_domain(sub);
        add_form(sub, true);
        sub->add_option("--point", opt.point, "a1,...,ad/b")->required();
        add_window(sub);
        add_format(sub);
        sub->add_flag("--trace", opt.trace, "print one record per descent step");
    }

    auto* check_cmd = app.add_subcommand("check", "verification harnesses");
    check_cmd->require_subcommand(1);
    auto* euclidean_cmd = check_cmd->add_subcommand("euclidean", "search for Euclidean-property counterexamples");
    auto* adc_cmd = check_cmd->add_subcommand("adc", "cross-check the ADC property against brute force");
    auto* axioms_cmd = check_cmd->add_subcommand("norm-axioms", "sample the norm axioms");
    auto* n2_cmd = check_cmd->add_subcommand("n2", "norm-1 elements are units");
    for (auto* sub : {euclidean_cmd, adc_cmd, axioms_cmd, n2_cmd}) {
        add_domain(sub);
        add_format(sub);
    }
    for (auto* sub : {euclidean_cmd, adc_cmd}) {
        add_form(sub, true);
        sub->add_option("--height", opt.height, "denominator bound")->capture_default_str();
        sub->add_option("--box", opt.box, "numerator bound")->capture_default_str();
        add_window(sub);
    }
    add_form(n2_cmd, false);
    n2_cmd->add_option("--height", opt.height, "element bound (norm; degree for Fpt)")->capture_default_str();
    add_window(n2_cmd);
    axioms_cmd->add_option("--samples", opt.samples)->capture_default_str();
    axioms_cmd->add_option("--seed", opt.seed)->capture_default_str();

    auto* squares_cmd = app.add_subcommand("three-squares", "write n as a sum of three squares via descent");
    squares_cmd->add_option("n", opt.n, "positive integer")->required();
    squares_cmd->add_option("--seed", opt.seed)->capture_default_str();
    add_window(squares_cmd);
    add_format(squares_cmd);
    squares_cmd->add_flag("--trace", opt.trace, "print one record per descent step");

    std::vector<std::string> argv_storage{"qdescent"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (descend_cmd->parsed()) return cmd_descend(opt, out);
        if (represent_cmd->parsed()) return cmd_represent(opt, out);
        if (euclidean_cmd->parsed()) return cmd_check_euclidean(opt, out);
        if (adc_cmd->parsed()) return cmd_check_adc(opt, out);
        if (axioms_cmd->parsed()) return cmd_check_norm_axioms(opt, out);
        if (n2_cmd->parsed()) return cmd_check_n2(opt, out);
        if (squares_cmd->parsed()) return cmd_three_squares(opt, out);
    } catch (const OracleFailure& e) {
        err << "error: " << e.what() << '\n';
        return kOracleNotFound;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kInputError;
}

} // namespace qdescent::cli
