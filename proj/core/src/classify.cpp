#include "gdfractal/classify.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "gdfractal/errors.hpp"

namespace gdfractal {

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::self_similar: return "SelfSimilar";
        case Outcome::not_cosc_self_similar: return "NotCoscSelfSimilar";
        case Outcome::not_self_similar: return "NotSelfSimilar";
        case Outcome::inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

std::vector<Monomial> dedup_sorted(std::vector<Monomial> ms) {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    return ms;
}

std::vector<Monomial> absolute_ratio_set(const GdIfs& f) {
    std::vector<Monomial> ms;
    for (const auto& m : f.maps) ms.push_back(m.ratio.magnitude);
    return dedup_sorted(std::move(ms));
}

std::pair<std::vector<Monomial>, std::vector<Monomial>> circuit_ratio_sets(const GdIfs& f,
                                                                           const Path& L) {
    std::set<EdgeId> in_circuit(L.edges.begin(), L.edges.end());
    std::vector<Monomial> a_l, a_lc;
    for (const auto& e : f.graph.edges()) {
        const Monomial& mag = f.maps[size_t(e.id)].ratio.magnitude;
        if (in_circuit.count(e.id))
            a_l.push_back(mag);
        else
            a_lc.push_back(mag);
    }
    return {dedup_sorted(std::move(a_l)), dedup_sorted(std::move(a_lc))};
}

void collect_assumptions(const std::vector<Monomial>& ms, std::vector<std::string>& out) {
    std::set<std::string> names;
    for (const auto& m : ms)
        for (const auto& [g, e] : m.factors())
            if (!g.is_prime()) names.insert(g.name);
    for (const auto& n : names)
        out.push_back("generator '" + n +
                      "' is assumed multiplicatively independent as declared");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

std::vector<VertexId> circuit_vertices(const Digraph& g, const Path& L) {
    std::vector<VertexId> vs;
    for (EdgeId e : L.edges) {
        VertexId v = g.edge(e).from;
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    }
    return vs;
}

}  // namespace

AdmissibilityResult check_admissible(const ParamPoint& p) {
    AdmissibilityResult result;
    for (VertexId v = 0; v < p.graph.vertex_count(); ++v)
        for (const auto& r : p.ratios[size_t(v)]) result.entries.push_back(r.magnitude);
    for (VertexId v = 0; v < p.graph.vertex_count(); ++v)
        for (const auto& gap : p.gaps[size_t(v)]) {
            if (gap)
                result.entries.push_back(*gap);
            else
                result.outside_p1 = true;
        }
    collect_assumptions(result.entries, result.assumptions);

    auto gens = generator_union(result.entries);
    auto kernel = nullspace(exponent_matrix(gens, result.entries));
    if (kernel.empty()) {
        result.admissible = true;
        return result;
    }
    result.admissible = false;
    const auto& s = kernel.front();
    result.witness_plus.resize(s.size());
    result.witness_minus.resize(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (sgn(s[i]) > 0)
            result.witness_plus[i] = s[i];
        else
            result.witness_minus[i] = -s[i];
    }
    return result;
}

ConditionOutcome check_condition_i(const GdIfs& f, const Path& L) {
    ConditionOutcome out;
    auto [a_l, a_lc] = circuit_ratio_sets(f, L);
    auto ci = cone_intersection(a_l, a_lc);
    CheckRecord rec;
    rec.kind = "cone_intersection";
    rec.description = "circuit ratio cone vs complement cone for " + path_label(f.graph, L);
    rec.base1 = a_l;
    rec.base2 = a_lc;
    rec.answer = !ci.empty;
    rec.witness1 = ci.p;
    rec.witness2 = ci.q;
    out.holds = ci.empty;
    out.detail = ci.empty ? "cones are disjoint" : "cones intersect";
    out.checks.push_back(std::move(rec));
    return out;
}

ConditionOutcome check_condition_iprime(const GdIfs& f) {
    ConditionOutcome out;
    // pairwise-distinct absolute ratios, exact monomial inequality
    const auto& edges = f.graph.edges();
    for (size_t i = 0; i < edges.size(); ++i)
        for (size_t j = i + 1; j < edges.size(); ++j)
            if (f.maps[i].ratio.magnitude == f.maps[j].ratio.magnitude) {
                out.holds = false;
                out.detail = "edges " + f.graph.edge_label(EdgeId(i)) + " and " +
                             f.graph.edge_label(EdgeId(j)) + " share the absolute ratio " +
                             f.maps[i].ratio.magnitude.to_string();
                return out;
            }
    auto a = absolute_ratio_set(f);
    auto mem = membership(Monomial::one(), a, Cone::Qstar);
    CheckRecord rec;
    rec.kind = "membership";
    rec.description = "1 against the ratio set with nonzero rational exponents";
    rec.base1 = a;
    rec.target = Monomial::one();
    rec.cone = Cone::Qstar;
    rec.answer = mem.member;
    rec.witness1 = mem.witness;
    out.checks.push_back(std::move(rec));
    out.holds = !mem.member;
    out.detail = mem.member ? "a nontrivial multiplicative relation exists among the ratios"
                            : "ratios are multiplicatively free";
    return out;
}

bool check_condition_ii(const GdIfs& f, VertexId u, VertexId v, const NumericOptions& opts) {
    SeparationReport rep = verify_separation(f, opts);
    return !rep.positive_lengths[size_t(u)].empty() && !rep.positive_lengths[size_t(v)].empty();
}

QuotientCondition check_condition_iii(const GdIfs& f, const SeparationReport& rep) {
    QuotientCondition out;
    auto a = absolute_ratio_set(f);

    struct Slot {
        VertexId v;
        int k;
        std::optional<Monomial> value;  // nullopt encodes a zero gap
    };
    std::vector<Slot> slots;
    for (VertexId v = 0; v < f.graph.vertex_count(); ++v)
        for (int k = 0; k < int(rep.basic_gaps[size_t(v)].size()); ++k) {
            const auto& gap = rep.basic_gaps[size_t(v)][size_t(k)];
            if (gap.sign == Sign::positive)
                slots.push_back({v, k, gap.length_monomial});
            else if (gap.sign == Sign::zero)
                slots.push_back({v, k, std::nullopt});
        }

    std::set<Monomial> quotients;
    for (const auto& num : slots)
        for (const auto& den : slots) {
            if (num.v == den.v && num.k == den.k) continue;
            if (!den.value) continue;  // zero denominators are skipped
            if (!num.value) {
                out.zero_quotient = true;  // 0 is never in A^Q
                continue;
            }
            quotients.insert(num.value->divided_by(*den.value));
        }
    out.quotients.assign(quotients.begin(), quotients.end());

    out.holds = true;
    for (const auto& q : out.quotients) {
        auto mem = membership(q, a, Cone::Q);
        CheckRecord rec;
        rec.kind = "membership";
        rec.description = "gap quotient " + q.to_string() + " against the ratio set";
        rec.base1 = a;
        rec.target = q;
        rec.cone = Cone::Q;
        rec.answer = mem.member;
        rec.witness1 = mem.witness;
        out.checks.push_back(std::move(rec));
        if (mem.member) {
            out.holds = false;
            out.detail = "quotient " + q.to_string() + " lies in the ratio group";
        }
    }
    if (out.holds) out.detail = "all gap quotients stay outside the ratio group";
    return out;
}

EqualGapExclusion check_equal_gap_exclusion(const GdIfs& f, VertexId u) {
    if (!f.equal_gap_delta) throw NotEqualGapFamily();
    const Rational delta = *f.equal_gap_delta;
    EqualGapExclusion out;

    out.avoiding_circuit = circuit_avoiding(f.graph, u);
    {
        CheckRecord rec;
        rec.kind = "circuit_search";
        rec.answer = out.avoiding_circuit.has_value();
        rec.description = out.avoiding_circuit
                              ? "circuit avoiding the vertex: " +
                                    path_label(f.graph, *out.avoiding_circuit)
                              : "every circuit passes through the vertex";
        out.checks.push_back(std::move(rec));
    }
    if (!out.avoiding_circuit) {
        out.detail = "no circuit avoids the vertex";
        return out;
    }

    auto magnitude_rational = [&](VertexId v, int k) {
        EdgeId e = f.graph.out(v)[size_t(k)];
        auto r = f.maps[size_t(e)].ratio.magnitude.as_rational();
        if (!r) throw NotEqualGapFamily();
        return *r;
    };

    const Rational x_u1 = magnitude_rational(u, 0);
    const Rational reflected = Rational(1) - x_u1;

    // basic gap k of vertex j is (prefix_k + (k-1) delta, prefix_k + k delta)
    auto gap_slot_of = [&](VertexId j, const Rational& point) -> int {
        Rational prefix(0);
        for (int k = 1; k <= f.graph.out_degree(j) - 1; ++k) {
            prefix += magnitude_rational(j, k - 1);
            Rational lo = prefix + delta * (k - 1);
            Rational hi = prefix + delta * k;
            if (point > lo && point < hi) return k;
        }
        return 0;
    };

    bool all_found = true;
    for (VertexId j = 0; j < f.graph.vertex_count(); ++j) {
        if (j == u) continue;
        int mj = gap_slot_of(j, x_u1);
        int nj = gap_slot_of(j, reflected);
        CheckRecord rec;
        rec.kind = "point_in_gap";
        rec.answer = mj > 0 && nj > 0;
        rec.description = "|x|1 = " + to_string(x_u1) + " and 1-|x|1 = " + to_string(reflected) +
                          " inside basic gaps of vertex " + std::to_string(j + 1) + ": slots " +
                          std::to_string(mj) + ", " + std::to_string(nj);
        out.checks.push_back(std::move(rec));
        if (mj == 0 || nj == 0) {
            all_found = false;
            out.detail = "vertex " + std::to_string(j + 1) +
                         " has no basic gap containing the marker points";
        } else {
            out.memberships.push_back({j, {mj, nj}});
        }
    }
    out.holds = all_found;
    if (out.holds) out.detail = "marker points fall inside basic gaps at every other vertex";
    return out;
}

StandardIfs extract_standard_ifs(const GdIfs& f, VertexId u) {
    if (!all_circuits_through(f.graph, u)) throw CircuitAvoidsU();
    StandardIfs phi;
    phi.vertex = u;
    for (const Path& circuit : return_circuits(f.graph, u)) {
        EdgeMap composed = compose_path(f, circuit);
        phi.maps.push_back({composed.ratio, composed.translation, circuit});
    }
    return phi;
}

namespace {

void set_breach_pair(Certificate& cert, const GdIfs& f, const SeparationReport& rep, VertexId u,
                     VertexId v, const Path& connecting, const Path& L) {
    const Monomial& lambda_u = rep.positive_lengths[size_t(u)].front();
    const Monomial& lambda_v = rep.positive_lengths[size_t(v)].front();
    cert.theta_isolated = lambda_u;
    cert.theta_growth = lambda_v.times(path_ratio_magnitude(f, connecting));
    Monomial rho_l = path_ratio_magnitude(f, L);
    cert.circuit_ratio = rho_l;
    auto [a_l, a_lc] = circuit_ratio_sets(f, L);
    auto mem = membership(rho_l, a_l, Cone::QplusStar);
    CheckRecord rec;
    rec.kind = "membership";
    rec.description = "circuit ratio " + rho_l.to_string() + " inside the circuit's own cone";
    rec.base1 = a_l;
    rec.target = rho_l;
    rec.cone = Cone::QplusStar;
    rec.answer = mem.member;
    rec.witness1 = mem.witness;
    cert.checks.push_back(std::move(rec));
}

}  // namespace

Verdict classify_vertex(const GdIfs& f, VertexId u, const ClassifyOptions& opts) {
    Verdict verdict;
    verdict.vertex = u;
    Certificate& cert = verdict.certificate;
    cert.route = "none";
    cert.graph_strongly_connected = strongly_connected(f.graph);

    auto violations = validate_graph(f.graph);
    if (!violations.empty())
        throw SeparationUnverified("graph has vertices of out-degree below 2");

    SeparationReport rep = verify_separation(f, opts.numeric);
    if (rep.status != SeparationStatus::CSSC && rep.status != SeparationStatus::COSC_only)
        throw SeparationUnverified("status " + separation_status_name(rep.status));

    {
        std::vector<Monomial> all;
        for (const auto& m : f.maps) all.push_back(m.ratio.magnitude);
        for (const auto& lv : rep.positive_lengths) all.insert(all.end(), lv.begin(), lv.end());
        collect_assumptions(all, cert.assumptions);
    }

    // (a) every reachable circuit passes through u: compose the returning
    // circuits into a one-vertex system
    if (all_circuits_through(f.graph, u)) {
        cert.route = "circuit_extraction";
        verdict.outcome = Outcome::self_similar;
        verdict.extracted = extract_standard_ifs(f, u);
        if (!cert.graph_strongly_connected)
            cert.notes.push_back("graph is not strongly connected; circuits evaluated on the "
                                 "subgraph reachable from the vertex");
        for (const auto& m : verdict.extracted->maps)
            cert.notes.push_back("composed circuit: " + path_label(f.graph, m.circuit));
        return verdict;
    }

    // (b) equal-gap family exclusion
    if (f.equal_gap_delta && cert.graph_strongly_connected) {
        auto ex = check_equal_gap_exclusion(f, u);
        for (auto& c : ex.checks) cert.checks.push_back(c);
        if (ex.holds) {
            cert.route = "equal_gap_exclusion";
            verdict.outcome = Outcome::not_self_similar;
            cert.circuit = ex.avoiding_circuit;
            for (const auto& [j, mn] : ex.memberships)
                cert.notes.push_back("vertex " + std::to_string(j + 1) + ": marker points in " +
                                     "basic gap slots " + std::to_string(mn.first) + " and " +
                                     std::to_string(mn.second));
            return verdict;
        }
        cert.notes.push_back("equal-gap exclusion not applicable: " + ex.detail);
    }

    // (c) circuits avoiding u
    auto candidates = simple_circuits_avoiding(f.graph, u);
    if (candidates.empty()) {
        verdict.outcome = Outcome::inconclusive;
        cert.notes.push_back("no simple circuit avoids the vertex yet extraction preconditions "
                             "failed");
        return verdict;
    }
    if (rep.non_monomial_gap) {
        verdict.outcome = Outcome::inconclusive;
        cert.notes.push_back("positive gap lengths are not single monomials; quotient "
                             "conditions unavailable");
        return verdict;
    }

    auto iii = check_condition_iii(f, rep);
    for (auto& c : iii.checks) cert.checks.push_back(c);
    if (!iii.holds) {
        verdict.outcome = Outcome::inconclusive;
        cert.notes.push_back("gap-quotient condition failed: " + iii.detail);
        return verdict;
    }

    std::vector<std::string> failure_table;

    // stronger global criterion first: a cheap kernel check instead of
    // per-circuit cone feasibility
    auto iprime = check_condition_iprime(f);
    for (auto& c : iprime.checks) cert.checks.push_back(c);
    if (iprime.holds) {
        bool all_gaps = true;
        for (VertexId w = 0; w < f.graph.vertex_count(); ++w)
            if (rep.positive_lengths[size_t(w)].empty()) {
                all_gaps = false;
                failure_table.push_back("global route: vertex " + std::to_string(w + 1) +
                                        " has no positive basic gap");
            }
        if (all_gaps) {
            for (const Path& L : candidates) {
                for (VertexId v : circuit_vertices(f.graph, L)) {
                    auto path = reachable(f.graph, u, v);
                    if (!path) continue;
                    cert.route = "global_ratio_criterion";
                    verdict.outcome = Outcome::not_cosc_self_similar;
                    cert.circuit = L;
                    cert.via_vertex = v;
                    cert.connecting_path = *path;
                    set_breach_pair(cert, f, rep, u, v, *path, L);
                    return verdict;
                }
            }
            failure_table.push_back("global route: no vertex of an avoiding circuit is "
                                    "reachable from the queried vertex");
        }
    } else {
        failure_table.push_back("global route: " + iprime.detail);
    }

    // per-circuit cone criterion
    if (rep.positive_lengths[size_t(u)].empty()) {
        failure_table.push_back("queried vertex has no positive basic gap");
    } else {
        for (const Path& L : candidates) {
            for (VertexId v : circuit_vertices(f.graph, L)) {
                auto path = reachable(f.graph, u, v);
                if (!path) {
                    failure_table.push_back("circuit " + path_label(f.graph, L) + ": vertex " +
                                            std::to_string(v + 1) + " unreachable");
                    continue;
                }
                if (rep.positive_lengths[size_t(v)].empty()) {
                    failure_table.push_back("circuit " + path_label(f.graph, L) + ": vertex " +
                                            std::to_string(v + 1) + " has no positive basic gap");
                    continue;
                }
                auto ci = check_condition_i(f, L);
                if (ci.holds) {
                    for (auto& c : ci.checks) cert.checks.push_back(c);
                    cert.route = "circuit_cone_criterion";
                    verdict.outcome = Outcome::not_cosc_self_similar;
                    cert.circuit = L;
                    cert.via_vertex = v;
                    cert.connecting_path = *path;
                    set_breach_pair(cert, f, rep, u, v, *path, L);
                    return verdict;
                }
                failure_table.push_back("circuit " + path_label(f.graph, L) +
                                        ": ratio cones intersect");
                break;  // condition (i) depends on L only; other v choices cannot help
            }
        }
    }

    verdict.outcome = Outcome::inconclusive;
    cert.notes = failure_table;
    return verdict;
}

bool replay_certificate(const Certificate& cert) {
    for (const auto& rec : cert.checks) {
        if (rec.kind == "membership") {
            if (!rec.target || !rec.cone) return false;
            auto mem = membership(*rec.target, rec.base1, *rec.cone);
            if (mem.member != rec.answer) return false;
            if (rec.answer && !(power_product(rec.base1, rec.witness1) == *rec.target))
                return false;
        } else if (rec.kind == "cone_intersection") {
            auto ci = cone_intersection(rec.base1, rec.base2);
            if (ci.empty == rec.answer) return false;
            if (rec.answer &&
                !(power_product(rec.base1, rec.witness1) ==
                  power_product(rec.base2, rec.witness2)))
                return false;
        }
        // point_in_gap / circuit_search records carry their data in the
        // description and are re-derived by the classification tests
    }
    return true;
}

namespace {

struct SmoothSampler {
    std::mt19937_64 rng;
    std::vector<unsigned long> smooth;

    SmoothSampler(std::uint64_t seed, const std::vector<unsigned long>& pool,
                  unsigned long bound)
        : rng(seed) {
        for (unsigned long x = 1; x <= bound; ++x) {
            unsigned long r = x;
            for (unsigned long p : pool)
                while (p > 1 && r % p == 0) r /= p;
            if (r == 1) smooth.push_back(x);
        }
        if (smooth.size() < 2)
            throw std::invalid_argument("prime pool yields fewer than two usable integers");
    }

    unsigned long draw_smooth() { return smooth[rng() % smooth.size()]; }
    bool draw_bit() { return (rng() & 1) != 0; }

    // reduced fraction in (0,1)
    Rational draw_proper_fraction() {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            unsigned long a = draw_smooth();
            unsigned long b = draw_smooth();
            if (a >= b) continue;
            if (std::gcd(a, b) != 1) continue;
            return make_rational(long(a), long(b));
        }
        throw std::runtime_error("fraction sampler failed to converge");
    }

    // reduced positive fraction, numerator and denominator bounded
    Rational draw_positive_fraction() {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            unsigned long a = draw_smooth();
            unsigned long b = draw_smooth();
            if (std::gcd(a, b) != 1) continue;
            return make_rational(long(a), long(b));
        }
        throw std::runtime_error("fraction sampler failed to converge");
    }
};

}  // namespace

SampleStats sample_admissibility(const Digraph& g, size_t n, std::uint64_t seed,
                                 const std::vector<unsigned long>& prime_pool,
                                 unsigned long denom_bound) {
    SampleStats stats;
    stats.total = n;
    if (n == 0) return stats;  // fraction 1 by convention

    SmoothSampler sampler(seed, prime_pool, denom_bound);
    size_t admissible = 0;
    for (size_t i = 0; i < n; ++i) {
        ParamPoint p;
        p.graph = g;
        p.ratios.resize(g.vertex_count());
        p.gaps.resize(g.vertex_count());
        p.base_points.assign(g.vertex_count(), MonomialSum::zero());
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            const int d = g.out_degree(v);
            // row-sum gate: resample the row until the magnitudes sum below 1
            std::vector<Rational> row;
            for (int attempt = 0;; ++attempt) {
                if (attempt >= 1000)
                    throw std::runtime_error("row sampler failed the contractivity gate");
                row.clear();
                Rational sum(0);
                for (int k = 0; k < d; ++k) {
                    row.push_back(sampler.draw_proper_fraction());
                    sum += row.back();
                }
                if (sum < 1) break;
            }
            for (int k = 0; k < d; ++k) {
                int sign = sampler.draw_bit() ? -1 : 1;
                p.ratios[size_t(v)].push_back(SignedMonomial{sign, factor_rational(row[size_t(k)])});
            }
            for (int k = 0; k + 1 < d; ++k)
                p.gaps[size_t(v)].push_back(factor_rational(sampler.draw_positive_fraction()));
        }
        if (check_admissible(p).admissible) ++admissible;
    }
    stats.admissible = admissible;
    stats.fraction = double(admissible) / double(n);
    return stats;
}

}  // namespace gdfractal
