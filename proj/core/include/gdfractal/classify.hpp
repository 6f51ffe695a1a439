#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdfractal/construct.hpp"
#include "gdfractal/exactnum.hpp"
#include "gdfractal/gaps.hpp"

namespace gdfractal {

enum class Outcome { self_similar, not_cosc_self_similar, not_self_similar, inconclusive };

std::string outcome_name(Outcome o);

/// One similarity of an extracted one-vertex system, with the circuit it
/// came from.
struct StandardIfsMap {
    SignedMonomial ratio;
    MonomialSum translation;
    Path circuit;
};

struct StandardIfs {
    VertexId vertex = -1;
    std::vector<StandardIfsMap> maps;
};

/// A single replayable decision: enough data to re-run the exactnum call
/// and compare the answer.
struct CheckRecord {
    std::string kind;  // membership | cone_intersection | kernel | point_in_gap | ...
    std::string description;
    std::vector<Monomial> base1, base2;
    std::optional<Monomial> target;
    std::optional<Cone> cone;
    bool answer = false;
    std::vector<Rational> witness1, witness2;
};

struct Certificate {
    std::string route;  // circuit_extraction | global_ratio_criterion |
                        // circuit_cone_criterion | equal_gap_exclusion | none
    std::optional<Path> circuit;
    std::optional<VertexId> via_vertex;
    std::optional<Path> connecting_path;
    std::vector<CheckRecord> checks;
    std::vector<std::string> assumptions;  // declared-independence axioms consumed
    // the concrete dichotomy breach: theta_growth carries a certified
    // geometric tail with ratio circuit_ratio, while no ratio of
    // theta_isolated may enter the circuit's cone
    std::optional<Monomial> theta_growth;
    std::optional<Monomial> theta_isolated;
    std::optional<Monomial> circuit_ratio;
    std::vector<std::string> notes;  // failure table when inconclusive, flags
    bool graph_strongly_connected = true;
};

struct Verdict {
    VertexId vertex = -1;
    Outcome outcome = Outcome::inconclusive;
    std::optional<StandardIfs> extracted;
    Certificate certificate;
};

struct AdmissibilityResult {
    bool admissible = false;
    std::vector<Monomial> entries;  // ratio magnitudes then positive gaps
    // two distinct nonnegative exponent vectors with equal products, when
    // not admissible
    std::vector<Rational> witness_plus, witness_minus;
    std::vector<std::string> assumptions;
    bool outside_p1 = false;  // zero gap entries were excluded
};

/// Multiplicative independence of the parameter entries over Q, decided by
/// the kernel of their exponent matrix.
AdmissibilityResult check_admissible(const ParamPoint& p);

struct ConditionOutcome {
    bool holds = false;
    std::vector<CheckRecord> checks;
    std::string detail;
};

/// Cone disjointness between the circuit's ratios and the rest:
/// (A(L))^{Q*} cap (A(L^c))^{Q+*} = empty.
ConditionOutcome check_condition_i(const GdIfs& f, const Path& L);

/// All |ratio| pairwise distinct and 1 outside A^{Q*}.
ConditionOutcome check_condition_iprime(const GdIfs& f);

/// Both vertices carry a positive basic gap.
bool check_condition_ii(const GdIfs& f, VertexId u, VertexId v, const NumericOptions& opts = {});

struct QuotientCondition {
    bool holds = false;
    std::vector<Monomial> quotients;  // deduplicated nonzero quotient values
    bool zero_quotient = false;       // a zero-length numerator occurred
    std::vector<CheckRecord> checks;
    std::string detail;
};

/// Every quotient of distinct basic gaps stays outside A^Q; zero numerators
/// pass by convention (0 is never in A^Q) and zero denominators are skipped.
QuotientCondition check_condition_iii(const GdIfs& f, const SeparationReport& rep);

struct EqualGapExclusion {
    bool holds = false;
    std::optional<Path> avoiding_circuit;
    // per other vertex: the basic-gap slots (1-based) containing |x_u^(1)|
    // and 1-|x_u^(1)|
    std::vector<std::pair<VertexId, std::pair<int, int>>> memberships;
    std::vector<CheckRecord> checks;
    std::string detail;
};

/// For an equal-gap family: a circuit avoids u, all gaps equal delta, and
/// for every other vertex both |x_u^(1)| and 1-|x_u^(1)| land strictly
/// inside one of its basic gaps. Exact rational comparisons throughout.
EqualGapExclusion check_equal_gap_exclusion(const GdIfs& f, VertexId u);

/// Composes the similarity along every returning circuit of u. Requires all
/// reachable circuits to pass through u.
StandardIfs extract_standard_ifs(const GdIfs& f, VertexId u);

struct ClassifyOptions {
    NumericOptions numeric;
    Budget budget;
};

/// The decision pipeline for one vertex; see the certificate for the route
/// taken and every check consumed.
Verdict classify_vertex(const GdIfs& f, VertexId u, const ClassifyOptions& opts = {});

/// Re-runs every replayable check in a certificate through the exactnum
/// procedures; true when every answer matches.
bool replay_certificate(const Certificate& cert);

struct SampleStats {
    size_t total = 0;
    size_t admissible = 0;
    double fraction = 1.0;  // 1 by convention for an empty run
};

/// Random parameter points with pool-smooth reduced-fraction entries that
/// pass the row-sum gate; reports the admissible fraction. Deterministic
/// under the seed.
SampleStats sample_admissibility(const Digraph& g, size_t n, std::uint64_t seed,
                                 const std::vector<unsigned long>& prime_pool,
                                 unsigned long denom_bound);

}  // namespace gdfractal
