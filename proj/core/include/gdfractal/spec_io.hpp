#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdfractal/classify.hpp"
#include "gdfractal/construct.hpp"

namespace gdfractal {

struct GeneratorDecl {
    std::string name;
    std::string kind;  // "abstract" or "prime"
    std::optional<std::string> approx;
    bool operator==(const GeneratorDecl&) const = default;
};

struct EdgeDecl {
    std::string from, to;
    std::optional<std::string> ratio;  // absent only in equal-gap family specs
    bool operator==(const EdgeDecl&) const = default;
};

struct FamilyDecl {
    std::string delta;
    std::map<std::string, std::vector<std::string>> magnitudes;
    std::map<std::string, std::vector<int>> signs;
    bool operator==(const FamilyDecl&) const = default;
};

struct NumericDecl {
    int precision = 128;
    int depth = 6;
    std::size_t max_intervals = 1000000;
    bool operator==(const NumericDecl&) const = default;
};

/// The user-facing encoding of a problem: digraph, ratio and gap
/// expressions (or an equal-gap family block), query vertices, numeric
/// budgets. Expression strings are kept verbatim; parsing validates them.
struct ProblemSpec {
    std::string schema;
    std::vector<GeneratorDecl> generators;
    std::vector<std::string> vertices;
    std::vector<EdgeDecl> edges;
    std::map<std::string, std::vector<std::string>> gaps;
    std::map<std::string, std::string> base_points;
    std::optional<FamilyDecl> family;
    std::vector<std::string> query;
    NumericDecl numeric;
    bool operator==(const ProblemSpec&) const = default;
};

/// Parses and validates a spec document (JSON, schema "gdfractal/1").
/// Throws ParseError for malformed input and ValidationError with a JSON
/// path for semantic problems (|ratio| >= 1, out-degree below 2, ...).
ProblemSpec parse_spec(const std::string& text);

/// Canonical serialization; parse_spec(serialize_spec(s)) == s.
std::string serialize_spec(const ProblemSpec& spec);

/// Generator table declared by the spec, keyed by name.
std::map<std::string, Generator> generator_table(const ProblemSpec& spec);

Digraph graph_of(const ProblemSpec& spec);

VertexId vertex_index(const ProblemSpec& spec, const std::string& name);

/// Parameter point of a non-family spec.
ParamPoint params_of(const ProblemSpec& spec);

/// Builds the system: the generic route for ratio/gap specs, the equal-gap
/// family constructor when a family block is present.
GdIfs build_system(const ProblemSpec& spec);

/// Expression parsers, exposed for tests. Ratio expressions are signed
/// products of rational literals and generator powers with rational
/// exponents; gap expressions additionally allow "0"; base points allow
/// sums.
SignedMonomial parse_ratio_expression(const std::string& text,
                                      const std::map<std::string, Generator>& gens);
std::optional<Monomial> parse_gap_expression(const std::string& text,
                                             const std::map<std::string, Generator>& gens);
MonomialSum parse_sum_expression(const std::string& text,
                                 const std::map<std::string, Generator>& gens);

}  // namespace gdfractal
