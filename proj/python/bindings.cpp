#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "qdescent/descent.hpp"
#include "qdescent/errors.hpp"
#include "qdescent/norm_checks.hpp"
#include "qdescent/oracle.hpp"
#include "qdescent/parser.hpp"
#include "qdescent/zeros.hpp"

namespace py = pybind11;
using namespace qdescent;

namespace {

py::int_ to_py(const mpz_class& n) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(n.get_str().c_str(), nullptr, 10));
}

py::object to_py(const mpq_class& q) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_py(q.get_num()), to_py(q.get_den()));
}

mpz_class from_py(const py::int_& n) { return mpz_class(py::str(n).cast<std::string>()); }

FractionPoint as_point(const py::object& x, const Domain& dom) {
    if (py::isinstance<py::str>(x)) return parse_point(x.cast<std::string>(), dom);
    if (py::isinstance<FractionPoint>(x)) return x.cast<FractionPoint>();
    return FractionPoint::integral(x.cast<Point>());
}

py::object outcome_to_py(const OracleOutcome& out) {
    if (const auto* r = std::get_if<OracleResult>(&out)) return py::cast(*r);
    return py::cast(std::get<OracleNotFound>(out));
}

// A Python oracle returns y (a list of Elements) or None; value and norm are derived here
// and the descent re-validates them anyway.
Oracle wrap_oracle(py::object fn) {
    return [fn = std::move(fn)](const QuadraticPolynomial& f, const FractionPoint& x) -> OracleOutcome {
        py::gil_scoped_acquire gil;
        const py::object y = fn(f, x);
        if (y.is_none()) return OracleNotFound{0};
        Point point = y.cast<Point>();
        if (point.size() != x.dim()) throw PreconditionError("oracle returned a point of the wrong dimension");
        const FractionPoint diff = FractionPoint::unreduced(point_sub(x.num(), point_scale(x.den(), point)), x.den());
        FractionElement value = eval_f2(f, diff);
        mpq_class n = ext_norm(value);
        return OracleResult{std::move(point), std::move(value), std::move(n)};
    };
}

std::string repr_of(const char* kind, const std::string& body) { return std::string(kind) + "('" + body + "')"; }

} // namespace

PYBIND11_MODULE(qdescent, m) {
    m.doc() = "Descent from rational to integral zeros of quadratic polynomials over Z, Z[i] and F_p[t].";

    auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
    py::register_exception<DomainMismatch>(m, "DomainMismatch", error.ptr());
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", error.ptr());
    py::register_exception<OracleFailure>(m, "OracleFailure", error.ptr());
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

    py::class_<Domain>(m, "Domain")
        .def_static("integers", &Domain::integers)
        .def_static("gaussian_integers", &Domain::gaussian_integers)
        .def_static("prime_field_polynomials", &Domain::prime_field_polynomials, py::arg("p"))
        .def_static("parse", &Domain::parse, py::arg("text"))
        .def_property_readonly("name", &Domain::name)
        .def_property_readonly("characteristic", &Domain::characteristic)
        .def(py::self == py::self)
        .def("__repr__", [](const Domain& d) { return repr_of("Domain", d.name()); })
        .def("__str__", &Domain::name);

    py::class_<Element>(m, "Element")
        .def(py::init([](const std::string& text, const Domain& dom) { return parse_element(text, dom); }),
             py::arg("text"), py::arg("domain"))
        .def_static("integer", [](const py::int_& n) { return Element::integer(from_py(n)); })
        .def_property_readonly("domain", &Element::domain)
        .def("is_zero", &Element::is_zero)
        .def("is_unit", [](const Element& e) { return is_unit(e); })
        .def("norm", [](const Element& e) { return to_py(norm(e)); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("__str__", [](const Element& e) { return to_string(e); })
        .def("__repr__", [](const Element& e) { return repr_of("Element", to_string(e)); });

    py::class_<FractionElement>(m, "FractionElement")
        .def("is_zero", &FractionElement::is_zero)
        .def("is_integral", &FractionElement::is_integral)
        .def("ext_norm", [](const FractionElement& e) { return to_py(ext_norm(e)); })
        .def(py::self == py::self)
        .def("__str__", [](const FractionElement& e) { return to_string(e); })
        .def("__repr__", [](const FractionElement& e) { return repr_of("FractionElement", to_string(e)); });

    py::class_<FractionPoint>(m, "FractionPoint")
        .def(py::init([](const std::string& text, const Domain& dom) { return parse_point(text, dom); }),
             py::arg("text"), py::arg("domain"))
        .def_property_readonly("num", &FractionPoint::num)
        .def_property_readonly("den", &FractionPoint::den)
        .def_property_readonly("dim", &FractionPoint::dim)
        .def_property_readonly("domain", &FractionPoint::domain)
        .def("reduced", [](const FractionPoint& x) { return reduce_point(x); })
        .def("is_integral", [](const FractionPoint& x) { return is_integral(x); })
        .def(py::self == py::self)
        .def("__str__", [](const FractionPoint& x) { return to_string(x); })
        .def("__repr__", [](const FractionPoint& x) { return repr_of("FractionPoint", to_string(x)); });

    py::class_<QuadraticPolynomial>(m, "QuadraticPolynomial")
        .def(py::init([](const std::string& text, const Domain& dom, std::optional<std::size_t> dim) {
                 return parse_form(text, dom, dim.value_or(infer_dimension(text)));
             }),
             py::arg("text"), py::arg("domain"), py::arg("dim") = py::none())
        .def_property_readonly("dim", &QuadraticPolynomial::dim)
        .def_property_readonly("domain", &QuadraticPolynomial::domain)
        .def("is_form", &QuadraticPolynomial::is_form)
        .def("quadratic_part", &QuadraticPolynomial::quadratic_part)
        .def("quad", &QuadraticPolynomial::quad, py::arg("i"), py::arg("j"))
        .def("lin", &QuadraticPolynomial::lin, py::arg("i"))
        .def("constant", &QuadraticPolynomial::constant)
        .def(
            "__call__",
            [](const QuadraticPolynomial& f, const py::object& x) { return eval(f, as_point(x, f.domain())); },
            py::arg("x"))
        .def(py::self == py::self)
        .def("__str__", &format_form)
        .def("__repr__", [](const QuadraticPolynomial& f) { return repr_of("QuadraticPolynomial", format_form(f)); });

    m.def("parse_form", &parse_form, py::arg("text"), py::arg("domain"), py::arg("dim"));
    m.def("format_form", &format_form, py::arg("f"));
    m.def("parse_point", &parse_point, py::arg("text"), py::arg("domain"));
    m.def("parse_element", &parse_element, py::arg("text"), py::arg("domain"));
    m.def("reduce_point", py::overload_cast<const Point&, const Element&>(&reduce_point), py::arg("a"), py::arg("b"));

    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("y", &OracleResult::y)
        .def_readonly("value", &OracleResult::value)
        .def_property_readonly("vnorm", [](const OracleResult& r) { return to_py(r.vnorm); });
    py::class_<OracleNotFound>(m, "OracleNotFound")
        .def_property_readonly("min_norm", [](const OracleNotFound& r) { return to_py(r.min_norm); });

    m.def(
        "euclidean_step",
        [](const QuadraticPolynomial& f, const py::object& x, unsigned window) {
            return outcome_to_py(euclidean_step(f, as_point(x, f.domain()), window));
        },
        py::arg("f"), py::arg("x"), py::arg("window") = kDefaultWindow,
        "OracleResult with an admissible y, or OracleNotFound with the smallest norm seen.");

    py::class_<DescentStep>(m, "DescentStep")
        .def_readonly("x", &DescentStep::x)
        .def_readonly("y", &DescentStep::y)
        .def_readonly("v", &DescentStep::v)
        .def_readonly("A", &DescentStep::A)
        .def_readonly("B", &DescentStep::B)
        .def_readonly("C", &DescentStep::C)
        .def_readonly("b", &DescentStep::b)
        .def_readonly("b_next", &DescentStep::b_next)
        .def_readonly("x_next", &DescentStep::x_next)
        .def_property_readonly("vnorm", [](const DescentStep& s) { return to_py(s.vnorm); });

    py::class_<DescentTrace>(m, "DescentTrace")
        .def_readonly("start", &DescentTrace::start)
        .def_readonly("steps", &DescentTrace::steps)
        .def_readonly("result", &DescentTrace::result);

    m.def(
        "descend",
        [](const QuadraticPolynomial& f, const py::object& x, const py::object& oracle, unsigned window) {
            const FractionPoint start = as_point(x, f.domain());
            if (oracle.is_none()) return descend(f, start, window);
            return descend(f, start, wrap_oracle(oracle));
        },
        py::arg("f"), py::arg("x"), py::arg("oracle") = py::none(), py::arg("window") = kDefaultWindow,
        "Descend a rational zero to an integral zero. `oracle(f, x)` may replace the built-in search;\n"
        "it returns an integral point y or None.");

    py::class_<Representation>(m, "Representation")
        .def_readonly("y", &Representation::y)
        .def_readonly("value", &Representation::value)
        .def_readonly("trace", &Representation::trace);

    m.def(
        "adc_represent",
        [](const QuadraticPolynomial& q, const py::object& x, unsigned window) {
            return adc_represent(q, as_point(x, q.domain()), window);
        },
        py::arg("q"), py::arg("x"), py::arg("window") = kDefaultWindow);

    py::class_<EuclideanFailure>(m, "EuclideanFailure")
        .def_readonly("point", &EuclideanFailure::point)
        .def_readonly("window", &EuclideanFailure::window)
        .def_property_readonly("min_norm", [](const EuclideanFailure& e) { return to_py(e.min_norm); });
    py::class_<EuclideanReport>(m, "EuclideanReport")
        .def_readonly("checked", &EuclideanReport::checked)
        .def_readonly("failures", &EuclideanReport::failures);
    m.def("check_euclidean", &check_euclidean, py::arg("f"), py::arg("height"), py::arg("box"),
          py::arg("window") = kDefaultWindow);

    py::enum_<AdcFinding>(m, "AdcFinding")
        .value("Inapplicable", AdcFinding::Inapplicable)
        .value("Unrepresented", AdcFinding::Unrepresented)
        .value("Inconsistent", AdcFinding::Inconsistent)
        .value("Mismatch", AdcFinding::Mismatch);
    py::class_<AdcEntry>(m, "AdcEntry")
        .def_readonly("kind", &AdcEntry::kind)
        .def_readonly("x", &AdcEntry::x)
        .def_readonly("value", &AdcEntry::value)
        .def_readonly("descent_y", &AdcEntry::descent_y)
        .def_readonly("brute_y", &AdcEntry::brute_y)
        .def_readonly("detail", &AdcEntry::detail);
    py::class_<AdcReport>(m, "AdcReport")
        .def_readonly("checked", &AdcReport::checked)
        .def_readonly("corroborated", &AdcReport::corroborated)
        .def_readonly("failures", &AdcReport::failures)
        .def_readonly("notes", &AdcReport::notes);
    m.def(
        "verify_adc",
        [](const QuadraticPolynomial& q, unsigned coeff_bound, unsigned height, unsigned window) {
            return verify_adc(q, SearchBox{coeff_bound, height}, window);
        },
        py::arg("q"), py::arg("coeff_bound"), py::arg("height"), py::arg("window") = kDefaultWindow);

    py::class_<AxiomFailure>(m, "AxiomFailure")
        .def_readonly("axiom", &AxiomFailure::axiom)
        .def_readonly("witness", &AxiomFailure::witness);
    py::class_<AxiomReport>(m, "AxiomReport")
        .def_readonly("checked", &AxiomReport::checked)
        .def_readonly("failures", &AxiomReport::failures);
    m.def("check_norm_axioms", &check_norm_axioms, py::arg("domain"), py::arg("samples"), py::arg("seed"));

    m.def("chord_zero", &chord_zero, py::arg("f"), py::arg("y0"), py::arg("w"));
    m.def(
        "random_rational_zero",
        [](const QuadraticPolynomial& f, const Point& y0, std::uint64_t seed, const py::int_& height_min) {
            return random_rational_zero(f, y0, seed, from_py(height_min));
        },
        py::arg("f"), py::arg("y0"), py::arg("seed"), py::arg("height_min") = 1);
    m.def(
        "brute_integral_zero",
        [](const QuadraticPolynomial& f, unsigned coeff_bound) {
            return brute_integral_zero(f, SearchBox{coeff_bound, 0});
        },
        py::arg("f"), py::arg("coeff_bound"));
}
