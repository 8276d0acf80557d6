#include "dstab/problem.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dstab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& where,
                       const std::string& what) {
    throw InputError(origin + ": " + where + ": " + what);
}

Vec read_vector(const json& j, const std::string& origin, const std::string& where) {
    if (!j.is_array()) fail(origin, where, "expected an array of numbers");
    Vec out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) fail(origin, where, "expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

RealMatrix read_matrix(const json& j, const std::string& origin, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(origin, where, "expected a nonempty array of rows");
    const std::size_t n = j.size();
    RealMatrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
        const Vec row = read_vector(j[r], origin, where);
        if (row.size() != n) fail(origin, where, "matrix must be square");
        for (std::size_t c = 0; c < n; ++c) m.at(r, c) = row[c];
    }
    return m;
}

UncertainPolynomial read_system(const json& j, std::size_t parameter_count,
                                const std::string& origin) {
    if (j.contains("state_space")) {
        const json& ss = j.at("state_space");
        if (!ss.contains("a0")) fail(origin, "/system/state_space", "missing field 'a0'");
        RealMatrix a0 = read_matrix(ss.at("a0"), origin, "/system/state_space/a0");
        std::vector<RealMatrix> a;
        if (!ss.contains("a") || !ss.at("a").is_array())
            fail(origin, "/system/state_space", "missing per-parameter matrix array 'a'");
        for (const auto& ai : ss.at("a"))
            a.push_back(read_matrix(ai, origin, "/system/state_space/a"));
        if (a.size() != parameter_count)
            fail(origin, "/system/state_space/a",
                 "expected one matrix per parameter (" + std::to_string(parameter_count) + ")");
        return UncertainPolynomial::from_state_space(std::move(a0), std::move(a));
    }

    if (j.contains("monomials")) {
        const json& mono = j.at("monomials");
        if (!mono.contains("degree") || !mono.at("degree").is_number_unsigned())
            fail(origin, "/system/monomials", "missing nonnegative integer field 'degree'");
        const unsigned degree = mono.at("degree").get<unsigned>();
        if (!mono.contains("coefficients") || !mono.at("coefficients").is_array())
            fail(origin, "/system/monomials", "missing array field 'coefficients'");
        const json& lists = mono.at("coefficients");
        if (lists.size() != static_cast<std::size_t>(degree) + 1)
            fail(origin, "/system/monomials/coefficients",
                 "expected degree+1 = " + std::to_string(degree + 1) + " term lists");
        std::vector<std::vector<MonomialTerm>> coefficients;
        for (const auto& terms : lists) {
            std::vector<MonomialTerm> list;
            if (!terms.is_array())
                fail(origin, "/system/monomials/coefficients", "each power needs a term array");
            for (const auto& t : terms) {
                MonomialTerm term;
                if (!t.contains("coeff") || !t.at("coeff").is_number())
                    fail(origin, "/system/monomials/coefficients", "term missing number 'coeff'");
                term.coeff = t.at("coeff").get<double>();
                if (!t.contains("exponents"))
                    fail(origin, "/system/monomials/coefficients", "term missing 'exponents'");
                for (const auto& e : t.at("exponents")) {
                    if (!e.is_number_unsigned())
                        fail(origin, "/system/monomials/coefficients",
                             "exponents must be nonnegative integers");
                    term.exponents.push_back(e.get<unsigned>());
                }
                if (term.exponents.size() != parameter_count)
                    fail(origin, "/system/monomials/coefficients",
                         "exponent vector length must equal the parameter count");
                list.push_back(std::move(term));
            }
            coefficients.push_back(std::move(list));
        }
        return UncertainPolynomial::from_monomials(degree, parameter_count,
                                                   std::move(coefficients));
    }

    fail(origin, "/system", "expected either 'state_space' or 'monomials'");
}

BoundaryPiece read_piece(const json& j, const std::string& origin, std::size_t index) {
    const std::string where = "/region/" + std::to_string(index);
    if (!j.contains("delta")) fail(origin, where, "missing sweep interval 'delta'");
    const Vec interval = read_vector(j.at("delta"), origin, where + "/delta");
    if (interval.size() != 2) fail(origin, where + "/delta", "expected [lower, upper]");

    if (j.contains("half_plane")) {
        const json& hp = j.at("half_plane");
        if (!hp.contains("sigma") || !hp.at("sigma").is_number())
            fail(origin, where + "/half_plane", "missing number 'sigma'");
        return BoundaryPiece::half_plane(hp.at("sigma").get<double>(), interval[0], interval[1]);
    }
    if (j.contains("disk")) {
        const json& d = j.at("disk");
        if (!d.contains("center") || !d.contains("radius"))
            fail(origin, where + "/disk", "needs 'center' and 'radius'");
        const Vec c = read_vector(d.at("center"), origin, where + "/disk/center");
        if (c.size() != 2) fail(origin, where + "/disk/center", "expected [re, im]");
        if (!d.at("radius").is_number() || !(d.at("radius").get<double>() > 0.0))
            fail(origin, where + "/disk/radius", "radius must be a positive number");
        return BoundaryPiece::disk(Complex{c[0], c[1]}, d.at("radius").get<double>(), interval[0],
                                   interval[1]);
    }
    fail(origin, where, "expected either 'half_plane' or 'disk'");
}

}  // namespace

Problem parse_problem(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // Convert the byte offset into a line number for the message.
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw InputError(origin + ":" + std::to_string(line) + ": " + e.what());
    }

    try {
        if (!doc.contains("parameters")) fail(origin, "/", "missing object 'parameters'");
        const json& params = doc.at("parameters");
        if (!params.contains("lower") || !params.contains("upper"))
            fail(origin, "/parameters", "needs 'lower' and 'upper' arrays");
        Vec lower = read_vector(params.at("lower"), origin, "/parameters/lower");
        Vec upper = read_vector(params.at("upper"), origin, "/parameters/upper");
        if (lower.size() != upper.size())
            fail(origin, "/parameters", "'lower' and 'upper' lengths disagree");

        std::optional<Vec> nominal;
        if (params.contains("nominal"))
            nominal = read_vector(params.at("nominal"), origin, "/parameters/nominal");

        if (!doc.contains("system")) fail(origin, "/", "missing object 'system'");
        UncertainPolynomial poly = read_system(doc.at("system"), lower.size(), origin);
        if (poly.degree() < 1) fail(origin, "/system", "the family must have degree >= 1");

        if (!doc.contains("region") || !doc.at("region").is_array() || doc.at("region").empty())
            fail(origin, "/", "missing nonempty array 'region'");
        DRegion region;
        for (std::size_t p = 0; p < doc.at("region").size(); ++p)
            region.pieces.push_back(read_piece(doc.at("region")[p], origin, p));

        ParameterBox box = nominal ? ParameterBox(lower, upper, *nominal)
                                   : ParameterBox(lower, upper);

        Problem problem{doc.value("name", std::string{}),
                        std::move(poly),
                        std::move(box),
                        nominal.has_value(),
                        std::move(region),
                        doc.value("multilinear", false)};
        return problem;
    } catch (const json::exception& e) {
        throw InputError(origin + ": " + e.what());
    }
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open problem file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str(), path);
}

}  // namespace dstab
