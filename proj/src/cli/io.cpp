#include "kronlift/io.hpp"

#include <fstream>
#include <sstream>

#include "kronlift/errors.hpp"

namespace kronlift::io {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
    throw ParseError("field '" + field + "': " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& context = "")
{
    const std::string name = context.empty() ? key : context + "." + key;
    if (!obj.is_object())
        field_error(context.empty() ? "<root>" : context, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end())
        field_error(name, "missing");
    return *it;
}

double number(const json& v, const std::string& field)
{
    if (!v.is_number())
        field_error(field, "expected a number, got " + std::string(v.type_name()));
    return v.get<double>();
}

std::uint64_t count(const json& v, const std::string& field)
{
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        field_error(field, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

std::vector<double> number_array(const json& v, const std::string& field)
{
    if (!v.is_array())
        field_error(field, "expected an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

Matrix matrix(const json& v, const std::string& field, std::size_t rows, std::size_t cols)
{
    if (!v.is_array())
        field_error(field, "expected an array of rows");
    if (v.size() != rows)
        field_error(field, "expected " + std::to_string(rows) + " rows, got " + std::to_string(v.size()));
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string row_name = field + "[" + std::to_string(i) + "]";
        const auto row = number_array(v[i], row_name);
        if (row.size() != cols)
            field_error(row_name, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
    if (!m.allFinite())
        field_error(field, "entries must be finite");
    return m;
}

json matrix_json(const Matrix& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const Vector& v)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(v(i));
    return out;
}

void append_matrix(std::ostringstream& os, const char* key, const Matrix& m)
{
    os << "  \"" << key << "\": [\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        os << "    " << row.dump() << (i + 1 < m.rows() ? ",\n" : "\n");
    }
    os << "  ],\n";
}

LinearOperatorSpec operator_from_json(const json& v, const std::string& field)
{
    LinearOperatorSpec op;
    if (v.is_null())
        return op;
    if (!v.is_array())
        field_error(field, "expected an array of {order, coefficient} terms");
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string term = field + "[" + std::to_string(i) + "]";
        OperatorTerm t;
        t.order = static_cast<int>(count(require(v[i], "order", term), term + ".order"));
        const json& c = require(v[i], "coefficient", term);
        t.coefficient = c.is_number() ? std::vector<double>{c.get<double>()} : number_array(c, term + ".coefficient");
        op.terms.push_back(std::move(t));
    }
    return op;
}

json operator_to_json(const LinearOperatorSpec& op)
{
    json out = json::array();
    for (const auto& t : op.terms)
        out.push_back({{"order", t.order}, {"coefficient", t.coefficient}});
    return out;
}

} // namespace

json system_to_json(const PolynomialSystem& sys)
{
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["n"] = sys.n;
    doc["D"] = matrix_json(sys.D);
    if (sys.G)
        doc["G"] = matrix_json(*sys.G);
    if (sys.R)
        doc["R"] = matrix_json(*sys.R);
    doc["b"] = vector_json(sys.b);
    doc["meta"] = sys.meta;
    return doc;
}

PolynomialSystem system_from_json(const json& doc)
{
    if (!doc.is_object())
        field_error("<root>", "expected an object");
    const json& version = require(doc, "schema_version");
    if (!version.is_number_integer() || version.get<std::int64_t>() != kSchemaVersion)
        field_error("schema_version", "unsupported value " + version.dump() + ", expected "
                                          + std::to_string(kSchemaVersion));

    PolynomialSystem sys;
    sys.n = count(require(doc, "n"), "n");
    if (sys.n == 0)
        field_error("n", "must be at least 1");
    const std::size_t n = sys.n;
    sys.D = matrix(require(doc, "D"), "D", n, n);
    if (doc.contains("G") && !doc["G"].is_null())
        sys.G = matrix(doc["G"], "G", n, n * n);
    if (doc.contains("R") && !doc["R"].is_null())
        sys.R = matrix(doc["R"], "R", n, n * n * n);
    const auto b = number_array(require(doc, "b"), "b");
    if (b.size() != n)
        field_error("b", "expected " + std::to_string(n) + " entries, got " + std::to_string(b.size()));
    sys.b = Eigen::Map<const Vector>(b.data(), static_cast<Eigen::Index>(n));
    if (!sys.b.allFinite())
        field_error("b", "entries must be finite");
    if (doc.contains("meta")) {
        if (!doc["meta"].is_string())
            field_error("meta", "expected a string");
        sys.meta = doc["meta"].get<std::string>();
    }
    return sys;
}

std::string format_system(const PolynomialSystem& sys)
{
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema_version\": " << kSchemaVersion << ",\n";
    os << "  \"n\": " << sys.n << ",\n";
    append_matrix(os, "D", sys.D);
    if (sys.G)
        append_matrix(os, "G", *sys.G);
    if (sys.R)
        append_matrix(os, "R", *sys.R);
    os << "  \"b\": " << vector_json(sys.b).dump() << ",\n";
    os << "  \"meta\": " << json(sys.meta).dump() << "\n";
    os << "}\n";
    return os.str();
}

json parse_json(const std::string& text, const std::string& origin)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("error while reading '" + path.string() + "'");
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out)
        throw IoError("error while writing '" + path.string() + "'");
}

PolynomialSystem load_system(const std::filesystem::path& path)
{
    return system_from_json(parse_json(read_file(path), path.string()));
}

void save_system(const std::filesystem::path& path, const PolynomialSystem& sys)
{
    write_file(path, format_system(sys));
}

MwrProblem problem_from_json(const json& doc)
{
    if (!doc.is_object())
        field_error("<root>", "expected an object");
    MwrProblem pr;
    const auto domain = number_array(require(doc, "domain"), "domain");
    if (domain.size() != 2)
        field_error("domain", "expected [a, b]");
    pr.a = domain[0];
    pr.b = domain[1];
    pr.p = operator_from_json(doc.value("p", json()), "p");
    pr.r = operator_from_json(doc.value("r", json()), "r");
    pr.L = operator_from_json(doc.value("L", json()), "L");

    const json& f = require(doc, "f");
    if (f.is_number())
        pr.f = Forcing::constant(f.get<double>());
    else if (f.is_array())
        pr.f = Forcing::polynomial(number_array(f, "f"));
    else if (f.is_object() && f.contains("node_values"))
        pr.f = Forcing::node_values(number_array(f["node_values"], "f.node_values"));
    else
        field_error("f", "expected a number, a coefficient array or {\"node_values\": [...]}");

    pr.n_basis = count(require(doc, "n_basis"), "n_basis");
    const std::string basis = doc.value("basis", std::string("chebyshev"));
    if (basis == "chebyshev")
        pr.basis = BasisKind::Chebyshev;
    else if (basis == "monomial")
        pr.basis = BasisKind::Monomial;
    else
        field_error("basis", "unknown basis '" + basis + "'");

    if (doc.contains("bc")) {
        const json& bcs = doc["bc"];
        if (!bcs.is_array())
            field_error("bc", "expected an array");
        for (std::size_t i = 0; i < bcs.size(); ++i) {
            const std::string name = "bc[" + std::to_string(i) + "]";
            BoundaryCondition c;
            c.at = number(require(bcs[i], "at", name), name + ".at");
            c.value = number(require(bcs[i], "value", name), name + ".value");
            const json& kind = require(bcs[i], "kind", name);
            if (kind == "value")
                c.kind = BoundaryKind::Value;
            else if (kind == "derivative")
                c.kind = BoundaryKind::Derivative;
            else
                field_error(name + ".kind", "expected \"value\" or \"derivative\"");
            pr.bc.push_back(c);
        }
    }
    try {
        pr.validate();
    } catch (const Error& e) {
        throw ParseError(std::string("problem: ") + e.what());
    }
    return pr;
}

json problem_to_json(const MwrProblem& problem)
{
    json doc;
    doc["domain"] = {problem.a, problem.b};
    doc["p"] = operator_to_json(problem.p);
    doc["r"] = operator_to_json(problem.r);
    doc["L"] = operator_to_json(problem.L);
    switch (problem.f.kind()) {
    case Forcing::Kind::Polynomial: doc["f"] = problem.f.data(); break;
    case Forcing::Kind::NodeValues: doc["f"] = {{"node_values", problem.f.data()}}; break;
    case Forcing::Kind::Function: throw DomainError("problem_to_json: callable forcing cannot be serialised");
    }
    doc["n_basis"] = problem.n_basis;
    doc["basis"] = problem.basis == BasisKind::Chebyshev ? "chebyshev" : "monomial";
    json bcs = json::array();
    for (const auto& c : problem.bc)
        bcs.push_back({{"at", c.at},
                       {"kind", c.kind == BoundaryKind::Value ? "value" : "derivative"},
                       {"value", c.value}});
    doc["bc"] = bcs;
    return doc;
}

} // namespace kronlift::io
