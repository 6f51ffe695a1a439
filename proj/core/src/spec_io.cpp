#include "gdfractal/spec_io.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <json.hpp>

#include "gdfractal/errors.hpp"

namespace gdfractal {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// expression grammar
//
//   product  := ['-'] factor ('*' factor)*
//   factor   := atom ['^' exponent]
//   atom     := integer ['/' integer] | identifier
//   exponent := rational | '(' rational ')'
//   sum      := product (('+'|'-') product)*
// ---------------------------------------------------------------------------

struct ExprParser {
    const std::string& text;
    const std::map<std::string, Generator>& gens;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(1, int(pos) + 1, message + " in expression '" + text + "'");
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    std::string lex_digits() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected digits");
        return text.substr(start, pos - start);
    }

    std::string lex_identifier() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected an identifier");
        return text.substr(start, pos - start);
    }

    Rational lex_rational() {
        bool negative = eat('-');
        std::string num = lex_digits();
        std::string den = eat('/') ? lex_digits() : "1";
        Rational q = rational_from_string(num + "/" + den);
        return negative ? -q : q;
    }

    Rational lex_exponent() {
        if (eat('(')) {
            Rational q = lex_rational();
            if (!eat(')')) fail("expected ')'");
            return q;
        }
        return lex_rational();
    }

    Monomial parse_factor() {
        skip_ws();
        if (pos >= text.size()) fail("expected a factor");
        Monomial base;
        if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::string num = lex_digits();
            std::string den = eat('/') ? lex_digits() : "1";
            Rational q = rational_from_string(num + "/" + den);
            if (sgn(q) <= 0) fail("rational factor must be positive");
            base = factor_rational(q);
        } else {
            std::string name = lex_identifier();
            auto it = gens.find(name);
            if (it == gens.end()) fail("unknown generator '" + name + "'");
            base = Monomial::generator(it->second);
        }
        if (eat('^')) return base.pow(lex_exponent());
        return base;
    }

    // signed product
    SignedMonomial parse_product() {
        skip_ws();
        int sign = eat('-') ? -1 : 1;
        Monomial m = parse_factor();
        while (eat('*')) m = m.times(parse_factor());
        return SignedMonomial{sign, m};
    }

    MonomialSum parse_sum() {
        skip_ws();
        MonomialSum acc;
        if (eat('0')) {
            skip_ws();
            if (pos >= text.size()) return acc;
            fail("unexpected trailing input after 0");
        }
        SignedMonomial first = parse_product();
        acc += MonomialSum::of(first.magnitude).scaled(Rational(first.sign));
        while (true) {
            skip_ws();
            if (pos >= text.size()) break;
            if (eat('+')) {
                Monomial m = parse_factor();
                while (eat('*')) m = m.times(parse_factor());
                acc += MonomialSum::of(m);
            } else if (eat('-')) {
                Monomial m = parse_factor();
                while (eat('*')) m = m.times(parse_factor());
                acc -= MonomialSum::of(m);
            } else {
                fail("expected '+' or '-'");
            }
        }
        return acc;
    }
};

std::pair<int, int> line_col_of(const std::string& text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

const json& require(const json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(path, std::string("missing field '") + key + "'");
    return *it;
}

}  // namespace

SignedMonomial parse_ratio_expression(const std::string& text,
                                      const std::map<std::string, Generator>& gens) {
    ExprParser p{text, gens};
    SignedMonomial m = p.parse_product();
    if (!p.at_end()) p.fail("unexpected trailing input");
    return m;
}

std::optional<Monomial> parse_gap_expression(const std::string& text,
                                             const std::map<std::string, Generator>& gens) {
    std::string trimmed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed == "0") return std::nullopt;
    ExprParser p{text, gens};
    SignedMonomial m = p.parse_product();
    if (!p.at_end()) p.fail("unexpected trailing input");
    if (m.sign < 0) p.fail("gap widths must be nonnegative");
    return m.magnitude;
}

MonomialSum parse_sum_expression(const std::string& text,
                                 const std::map<std::string, Generator>& gens) {
    ExprParser p{text, gens};
    return p.parse_sum();
}

std::map<std::string, Generator> generator_table(const ProblemSpec& spec) {
    std::map<std::string, Generator> table;
    for (const auto& decl : spec.generators) {
        if (decl.kind == "abstract") {
            std::optional<Rational> approx;
            if (decl.approx) approx = rational_from_string(*decl.approx);
            table.emplace(decl.name, Generator::abstract(decl.name, approx));
        } else {
            table.emplace(decl.name, Generator::prime(Integer(decl.name.c_str())));
        }
    }
    return table;
}

Digraph graph_of(const ProblemSpec& spec) {
    std::map<std::string, VertexId> index;
    for (size_t i = 0; i < spec.vertices.size(); ++i)
        index[spec.vertices[i]] = VertexId(i);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& e : spec.edges) edges.push_back({index.at(e.from), index.at(e.to)});
    return Digraph::make(int(spec.vertices.size()), edges);
}

VertexId vertex_index(const ProblemSpec& spec, const std::string& name) {
    auto it = std::find(spec.vertices.begin(), spec.vertices.end(), name);
    if (it == spec.vertices.end())
        throw ValidationError("/query", "unknown vertex '" + name + "'");
    return VertexId(it - spec.vertices.begin());
}

ParamPoint params_of(const ProblemSpec& spec) {
    if (spec.family)
        throw ValidationError("/family", "equal-gap family specs have no explicit parameters");
    auto gens = generator_table(spec);
    ParamPoint p;
    p.graph = graph_of(spec);
    const int n = p.graph.vertex_count();
    p.ratios.resize(n);
    p.gaps.resize(n);
    p.base_points.assign(n, MonomialSum::zero());

    // edges arrive in declaration order, which is the out-list order
    for (const auto& e : spec.edges) {
        VertexId v = vertex_index(spec, e.from);
        p.ratios[size_t(v)].push_back(parse_ratio_expression(*e.ratio, gens));
    }
    for (VertexId v = 0; v < n; ++v) {
        auto it = spec.gaps.find(spec.vertices[size_t(v)]);
        if (it == spec.gaps.end()) continue;
        for (const auto& expr : it->second)
            p.gaps[size_t(v)].push_back(parse_gap_expression(expr, gens));
    }
    for (const auto& [name, expr] : spec.base_points)
        p.base_points[size_t(vertex_index(spec, name))] = parse_sum_expression(expr, gens);
    return p;
}

GdIfs build_system(const ProblemSpec& spec) {
    auto gens = generator_table(spec);
    if (spec.family) {
        Digraph g = graph_of(spec);
        Rational delta = rational_from_string(spec.family->delta);
        std::vector<std::vector<Monomial>> mags(g.vertex_count());
        std::vector<std::vector<int>> signs(g.vertex_count());
        for (const auto& [name, exprs] : spec.family->magnitudes) {
            VertexId v = vertex_index(spec, name);
            for (const auto& expr : exprs) {
                SignedMonomial m = parse_ratio_expression(expr, gens);
                mags[size_t(v)].push_back(m.magnitude);
                signs[size_t(v)].push_back(m.sign);
            }
        }
        for (const auto& [name, row] : spec.family->signs) {
            VertexId v = vertex_index(spec, name);
            signs[size_t(v)] = row;
        }
        return build_equal_gap_family(g, delta, mags, signs);
    }
    return build_gdifs(params_of(spec));
}

ProblemSpec parse_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        auto [line, col] = line_col_of(text, err.byte);
        throw ParseError(line, col, err.what());
    }
    if (!doc.is_object()) throw ValidationError("/", "top level must be an object");

    ProblemSpec spec;
    spec.schema = require(doc, "schema", "/").get<std::string>();
    if (spec.schema != "gdfractal/1")
        throw ValidationError("/schema", "unsupported schema '" + spec.schema + "'");

    if (doc.contains("generators")) {
        for (size_t i = 0; i < doc["generators"].size(); ++i) {
            const auto& g = doc["generators"][i];
            std::string path = "/generators/" + std::to_string(i);
            GeneratorDecl decl;
            decl.name = require(g, "name", path).get<std::string>();
            decl.kind = require(g, "kind", path).get<std::string>();
            if (g.contains("approx")) decl.approx = g["approx"].get<std::string>();
            if (decl.kind != "abstract" && decl.kind != "prime")
                throw ValidationError(path + "/kind", "kind must be 'abstract' or 'prime'");
            if (decl.kind == "abstract") {
                if (!decl.approx)
                    throw ValidationError(path, "abstract generators need an approx value");
                if (decl.name.empty() ||
                    std::all_of(decl.name.begin(), decl.name.end(),
                                [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                    throw ValidationError(path + "/name",
                                          "abstract generator names must not be numeric");
                Rational a = rational_from_string(*decl.approx);
                if (sgn(a) <= 0)
                    throw ValidationError(path + "/approx", "approx must be positive");
            }
            spec.generators.push_back(std::move(decl));
        }
    }
    {
        std::set<std::string> names;
        for (const auto& g : spec.generators)
            if (!names.insert(g.name).second)
                throw ValidationError("/generators", "duplicate generator '" + g.name + "'");
    }

    for (const auto& v : require(doc, "vertices", "/"))
        spec.vertices.push_back(v.get<std::string>());
    if (spec.vertices.empty()) throw ValidationError("/vertices", "at least one vertex required");
    {
        std::set<std::string> names(spec.vertices.begin(), spec.vertices.end());
        if (names.size() != spec.vertices.size())
            throw ValidationError("/vertices", "duplicate vertex names");
    }
    auto known_vertex = [&](const std::string& name) {
        return std::find(spec.vertices.begin(), spec.vertices.end(), name) != spec.vertices.end();
    };

    const auto& edges = require(doc, "edges", "/");
    for (size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        std::string path = "/edges/" + std::to_string(i);
        EdgeDecl decl;
        decl.from = require(e, "from", path).get<std::string>();
        decl.to = require(e, "to", path).get<std::string>();
        if (e.contains("ratio")) decl.ratio = e["ratio"].get<std::string>();
        if (!known_vertex(decl.from)) throw ValidationError(path + "/from", "unknown vertex");
        if (!known_vertex(decl.to)) throw ValidationError(path + "/to", "unknown vertex");
        spec.edges.push_back(std::move(decl));
    }

    if (doc.contains("gaps"))
        for (const auto& [name, arr] : doc["gaps"].items()) {
            if (!known_vertex(name)) throw ValidationError("/gaps/" + name, "unknown vertex");
            for (const auto& s : arr) spec.gaps[name].push_back(s.get<std::string>());
        }
    if (doc.contains("base_points"))
        for (const auto& [name, s] : doc["base_points"].items()) {
            if (!known_vertex(name))
                throw ValidationError("/base_points/" + name, "unknown vertex");
            spec.base_points[name] = s.get<std::string>();
        }
    if (doc.contains("family")) {
        FamilyDecl fam;
        const auto& f = doc["family"];
        fam.delta = require(f, "delta", "/family").get<std::string>();
        for (const auto& [name, arr] : require(f, "magnitudes", "/family").items()) {
            if (!known_vertex(name))
                throw ValidationError("/family/magnitudes/" + name, "unknown vertex");
            for (const auto& s : arr) fam.magnitudes[name].push_back(s.get<std::string>());
        }
        if (f.contains("signs"))
            for (const auto& [name, arr] : f["signs"].items()) {
                if (!known_vertex(name))
                    throw ValidationError("/family/signs/" + name, "unknown vertex");
                for (const auto& s : arr) fam.signs[name].push_back(s.get<int>());
            }
        spec.family = std::move(fam);
    }
    if (doc.contains("query"))
        for (const auto& v : doc["query"]) {
            std::string name = v.get<std::string>();
            if (!known_vertex(name)) throw ValidationError("/query", "unknown vertex '" + name + "'");
            spec.query.push_back(name);
        }
    if (doc.contains("numeric")) {
        const auto& n = doc["numeric"];
        if (n.contains("precision")) spec.numeric.precision = n["precision"].get<int>();
        if (n.contains("depth")) spec.numeric.depth = n["depth"].get<int>();
        if (n.contains("max_intervals"))
            spec.numeric.max_intervals = n["max_intervals"].get<std::size_t>();
        if (spec.numeric.precision < 32)
            throw ValidationError("/numeric/precision", "precision must be at least 32 bits");
    }

    // semantic validation
    Digraph g = graph_of(spec);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.out_degree(v) < 2)
            throw ValidationError("/edges", "vertex '" + spec.vertices[size_t(v)] +
                                                "' has out-degree " +
                                                std::to_string(g.out_degree(v)) +
                                                "; every vertex needs at least 2 out-edges");

    auto gens = generator_table(spec);
    if (spec.family) {
        for (size_t i = 0; i < spec.edges.size(); ++i)
            if (spec.edges[i].ratio)
                throw ValidationError("/edges/" + std::to_string(i),
                                      "family specs must not carry per-edge ratios");
        if (!spec.gaps.empty())
            throw ValidationError("/gaps", "family specs fix every gap to delta");
        Rational delta = rational_from_string(spec.family->delta);
        if (sgn(delta) <= 0) throw ValidationError("/family/delta", "delta must be positive");
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            const std::string& name = spec.vertices[size_t(v)];
            auto it = spec.family->magnitudes.find(name);
            if (it == spec.family->magnitudes.end() ||
                int(it->second.size()) != g.out_degree(v))
                throw ValidationError("/family/magnitudes/" + name,
                                      "expected one magnitude per out-edge");
            for (const auto& expr : it->second) parse_ratio_expression(expr, gens);
        }
    } else {
        NumericOptions numeric;
        numeric.precision = spec.numeric.precision;
        for (size_t i = 0; i < spec.edges.size(); ++i) {
            if (!spec.edges[i].ratio)
                throw ValidationError("/edges/" + std::to_string(i), "edge needs a ratio");
            SignedMonomial r = parse_ratio_expression(*spec.edges[i].ratio, gens);
            Sign below_one = certified_sign(
                MonomialSum::of(Rational(1)) - MonomialSum::of(r.magnitude), numeric);
            if (below_one == Sign::negative || below_one == Sign::zero)
                throw ValidationError("/edges/" + std::to_string(i) + "/ratio",
                                      "|ratio| must be below 1, got " + r.magnitude.to_string());
            if (below_one == Sign::indeterminate)
                throw ValidationError("/edges/" + std::to_string(i) + "/ratio",
                                      "|ratio| < 1 could not be certified");
        }
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            const std::string& name = spec.vertices[size_t(v)];
            auto it = spec.gaps.find(name);
            size_t have = it == spec.gaps.end() ? 0 : it->second.size();
            if (int(have) != g.out_degree(v) - 1)
                throw ValidationError("/gaps/" + name,
                                      "expected " + std::to_string(g.out_degree(v) - 1) +
                                          " gap entries, got " + std::to_string(have));
            bool positive = false;
            for (const auto& expr : it->second)
                if (parse_gap_expression(expr, gens)) positive = true;
            if (!positive)
                throw ValidationError("/gaps/" + name,
                                      "at least one gap per vertex must be positive");
        }
        for (const auto& [name, expr] : spec.base_points) parse_sum_expression(expr, gens);
    }
    return spec;
}

std::string serialize_spec(const ProblemSpec& spec) {
    json doc;
    doc["schema"] = spec.schema;
    doc["generators"] = json::array();
    for (const auto& g : spec.generators) {
        json jg;
        jg["name"] = g.name;
        jg["kind"] = g.kind;
        if (g.approx) jg["approx"] = *g.approx;
        doc["generators"].push_back(jg);
    }
    doc["vertices"] = spec.vertices;
    doc["edges"] = json::array();
    for (const auto& e : spec.edges) {
        json je;
        je["from"] = e.from;
        je["to"] = e.to;
        if (e.ratio) je["ratio"] = *e.ratio;
        doc["edges"].push_back(je);
    }
    if (!spec.gaps.empty()) doc["gaps"] = spec.gaps;
    if (!spec.base_points.empty()) doc["base_points"] = spec.base_points;
    if (spec.family) {
        json jf;
        jf["delta"] = spec.family->delta;
        jf["magnitudes"] = spec.family->magnitudes;
        if (!spec.family->signs.empty()) jf["signs"] = spec.family->signs;
        doc["family"] = jf;
    }
    if (!spec.query.empty()) doc["query"] = spec.query;
    doc["numeric"] = {{"precision", spec.numeric.precision},
                      {"depth", spec.numeric.depth},
                      {"max_intervals", spec.numeric.max_intervals}};
    return doc.dump(2) + "\n";
}

}  // namespace gdfractal
