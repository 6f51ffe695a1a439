#include "gdfractal/gaps.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gdfractal/errors.hpp"

namespace gdfractal {

EdgeMap compose_path(const GdIfs& f, const Path& p) {
    EdgeMap acc{SignedMonomial::positive(Monomial::one()), MonomialSum::zero()};
    for (EdgeId e : p.edges) {
        const EdgeMap& next = f.maps[size_t(e)];
        // acc o next : t -> acc(next(t))
        MonomialSum tau = next.translation.times(acc.ratio) + acc.translation;
        SignedMonomial ratio{acc.ratio.sign * next.ratio.sign,
                             acc.ratio.magnitude.times(next.ratio.magnitude)};
        acc = EdgeMap{ratio, std::move(tau)};
    }
    return acc;
}

Monomial path_ratio_magnitude(const GdIfs& f, const Path& p) {
    Monomial m = Monomial::one();
    for (EdgeId e : p.edges) m = m.times(f.maps[size_t(e)].ratio.magnitude);
    return m;
}

namespace {

// certified strict order of interval left endpoints, ties by right endpoint
bool exact_interval_less(const ExactInterval& a, const ExactInterval& b,
                         const NumericOptions& opts) {
    Sign s = certified_compare(a.left, b.left, opts);
    if (s == Sign::indeterminate)
        throw IndeterminateSign("cannot order interval endpoints " + a.left.to_string() +
                                " vs " + b.left.to_string());
    if (s != Sign::zero) return s == Sign::positive;
    Sign t = certified_compare(a.right, b.right, opts);
    if (t == Sign::indeterminate)
        throw IndeterminateSign("cannot order interval endpoints");
    return t == Sign::positive;
}

void enumerate_level_paths(const Digraph& g, VertexId u, int m, size_t budget,
                           const std::function<void(const Path&)>& visit) {
    Path current;
    size_t count = 0;
    std::function<void(VertexId, int)> dfs = [&](VertexId v, int remaining) {
        if (remaining == 0) {
            if (++count > budget)
                throw DepthTooLarge("level approximation exceeds " + std::to_string(budget) +
                                    " intervals");
            visit(current);
            return;
        }
        for (EdgeId e : g.out(v)) {
            current.edges.push_back(e);
            dfs(g.edge(e).to, remaining - 1);
            current.edges.pop_back();
        }
    };
    dfs(u, m);
}

}  // namespace

IntervalSet level_approx(const GdIfs& f, VertexId u, int m, const Budget& budget,
                         const NumericOptions& opts) {
    if (m < 0) throw std::invalid_argument("level must be nonnegative");
    IntervalSet out;
    if (m == 0) {
        out.intervals.push_back(f.hull(u));
        return out;
    }
    enumerate_level_paths(f.graph, u, m, budget.max_intervals, [&](const Path& p) {
        EdgeMap composed = compose_path(f, p);
        out.intervals.push_back(map_interval(composed, f.hull(terminal_vertex(f.graph, p))));
    });
    std::stable_sort(out.intervals.begin(), out.intervals.end(),
                     [&](const ExactInterval& a, const ExactInterval& b) {
                         return exact_interval_less(a, b, opts);
                     });
    return out;
}

std::vector<Monomial> GapCatalog::distinct_values() const {
    std::set<Monomial> vals;
    for (const auto& e : entries) vals.insert(e.length);
    return {vals.begin(), vals.end()};
}

std::vector<Monomial> GapCatalog::sorted_lengths() const {
    std::vector<Monomial> vals;
    vals.reserve(entries.size());
    for (const auto& e : entries) vals.push_back(e.length);
    std::sort(vals.begin(), vals.end());
    return vals;
}

GapCatalog gap_lengths_truncated(const GdIfs& f, VertexId u, int max_depth, const Budget& budget,
                                 const NumericOptions& opts) {
    if (max_depth < 0) throw std::invalid_argument("max_depth must be nonnegative");
    SeparationReport rep = verify_separation(f, opts);
    if (rep.non_monomial_gap)
        throw SeparationUnverified("gap lengths are not single monomials");

    // positive gaps per vertex with their basic-gap slot
    std::vector<std::vector<std::pair<int, Monomial>>> lambda(f.graph.vertex_count());
    for (VertexId v = 0; v < f.graph.vertex_count(); ++v)
        for (int k = 0; k < int(rep.basic_gaps[size_t(v)].size()); ++k)
            if (rep.basic_gaps[size_t(v)][size_t(k)].sign == Sign::positive)
                lambda[size_t(v)].push_back(
                    {k, *rep.basic_gaps[size_t(v)][size_t(k)].length_monomial});

    GapCatalog catalog;
    catalog.max_depth = max_depth;
    for (const auto& [k, value] : lambda[size_t(u)])
        catalog.entries.push_back({value, Path{}, k, 0, std::nullopt, std::nullopt});
    if (max_depth > 0) {
        for (const Path& p : paths_from(f.graph, u, max_depth, budget.max_intervals)) {
            VertexId v = terminal_vertex(f.graph, p);
            if (lambda[size_t(v)].empty()) continue;  // empty-set convention
            Monomial rho = path_ratio_magnitude(f, p);
            for (const auto& [k, value] : lambda[size_t(v)])
                catalog.entries.push_back(
                    {value.times(rho), p, k, int(p.length()), std::nullopt, std::nullopt});
        }
    }

    // catalog order: (depth, canonical monomial), provenance as tie-break
    std::stable_sort(catalog.entries.begin(), catalog.entries.end(),
                     [](const GapEntry& a, const GapEntry& b) {
                         if (a.depth != b.depth) return a.depth < b.depth;
                         if (a.length != b.length) return a.length < b.length;
                         return a.path.edges < b.path.edges;
                     });

    // completeness metadata over the subgraph reachable from u
    auto reach = reachable_set(f.graph, u);
    std::optional<Monomial> lam_max, rho_max;
    auto consider = [&](std::optional<Monomial>& slot, const Monomial& m) {
        if (!slot || certified_compare(*slot, m, opts) == Sign::positive) slot = m;
    };
    for (VertexId v = 0; v < f.graph.vertex_count(); ++v) {
        if (!reach[size_t(v)]) continue;
        for (const auto& [k, value] : lambda[size_t(v)]) consider(lam_max, value);
        for (EdgeId e : f.graph.out(v)) consider(rho_max, f.maps[size_t(e)].ratio.magnitude);
    }
    catalog.lambda_max = lam_max;
    catalog.rho_max = rho_max;
    return catalog;
}

GapCatalog gaps_bruteforce(const GdIfs& f, VertexId u, int m, const Budget& budget,
                           const NumericOptions& opts) {
    GapCatalog catalog;
    catalog.max_depth = m - 1;
    if (m == 0) return catalog;
    IntervalSet level = level_approx(f, u, m, budget, opts);
    ExactInterval hull = f.hull(u);

    // the approximation always spans the hull, so only interior gaps exist
    for (const MonomialSum& d :
         {level.intervals.front().left - hull.left, hull.right - level.intervals.back().right})
        if (certified_sign(d, opts) != Sign::zero)
            throw std::logic_error("level approximation does not span the hull");

    for (size_t i = 0; i + 1 < level.intervals.size(); ++i) {
        MonomialSum len = level.intervals[i + 1].left - level.intervals[i].right;
        Sign s = certified_sign(len, opts);
        if (s == Sign::zero) continue;
        if (s == Sign::negative)
            throw std::logic_error("level approximation intervals overlap");
        if (s == Sign::indeterminate)
            throw IndeterminateSign("cannot certify a level gap sign");
        auto mono = len.as_monomial();
        if (!mono) throw SeparationUnverified("geometric gap is not a single monomial");
        catalog.entries.push_back({*mono, Path{}, -1, -1, level.intervals[i].right,
                                   level.intervals[i + 1].left});
    }
    return catalog;
}

namespace {

Rational rational_distance_to(const Rational& x,
                              const std::vector<std::pair<Rational, Rational>>& set) {
    Rational best(-1);
    for (const auto& [lo, hi] : set) {
        if (x >= lo && x <= hi) return Rational(0);
        Rational d = x < lo ? lo - x : x - hi;
        if (best < 0 || d < best) best = d;
    }
    return best;
}

Rational directed_hausdorff(const std::vector<std::pair<Rational, Rational>>& a,
                            const std::vector<std::pair<Rational, Rational>>& b) {
    Rational best(0);
    auto update = [&](const Rational& x) {
        Rational d = rational_distance_to(x, b);
        if (d > best) best = d;
    };
    for (const auto& [lo, hi] : a) {
        update(lo);
        update(hi);
        // peaks of the distance function sit at midpoints of b's gaps
        for (size_t j = 0; j + 1 < b.size(); ++j) {
            Rational mid = (b[j].second + b[j + 1].first) / 2;
            Rational x = std::min(std::max(mid, lo), hi);
            update(x);
        }
    }
    return best;
}

}  // namespace

Interval hausdorff_distance(const IntervalSet& a, const IntervalSet& b,
                            mpfr_prec_t precision_bits) {
    if (a.empty() || b.empty()) throw EmptyInput();

    auto lower = [&](const IntervalSet& s, bool& exact, Rational& max_radius) {
        std::vector<std::pair<Rational, Rational>> out;
        for (const auto& iv : s.intervals) {
            auto l = iv.left.as_rational();
            auto r = iv.right.as_rational();
            if (l && r) {
                out.emplace_back(*l, *r);
            } else {
                exact = false;
                Interval le = eval_numeric(iv.left, precision_bits);
                Interval re = eval_numeric(iv.right, precision_bits);
                max_radius = std::max({max_radius, le.radius_upper(), re.radius_upper()});
                out.emplace_back(le.mid_rational(), re.mid_rational());
            }
        }
        return out;
    };

    bool exact = true;
    Rational radius(0);
    auto ra = lower(a, exact, radius);
    auto rb = lower(b, exact, radius);
    Rational d = std::max(directed_hausdorff(ra, rb), directed_hausdorff(rb, ra));
    if (exact) return Interval::exact(d, precision_bits);
    // moving every endpoint by at most r moves each set by at most r in
    // Hausdorff distance, hence the true value by at most 2r
    Rational lo = d - 2 * radius;
    if (lo < 0) lo = 0;
    return Interval::span(lo, d + 2 * radius, precision_bits);
}

namespace {

// value comparison term > floor, certified; indeterminate counts as "not
// greater" which only makes the oracle more permissive
bool certainly_above(const Monomial& term, const Interval& floor_enc, mpfr_prec_t prec) {
    Interval t = eval_numeric(term, prec);
    return floor_enc.certainly_less(t);
}

}  // namespace

std::vector<Monomial> detect_geometric_ratios(const GapCatalog& catalog, const Monomial& theta,
                                              int k_min, const NumericOptions& opts) {
    if (k_min < 2) throw std::invalid_argument("k_min must be at least 2");
    auto values = catalog.distinct_values();
    std::set<Monomial> dset(values.begin(), values.end());
    if (!dset.count(theta)) throw ThetaAbsent();
    if (!catalog.lambda_max || !catalog.rho_max)
        throw std::invalid_argument("catalog lacks completeness metadata");

    const mpfr_prec_t prec = opts.precision;
    Interval floor_enc = eval_numeric(*catalog.lambda_max, prec) *
                         eval_numeric(*catalog.rho_max, prec)
                             .pow(Rational(catalog.max_depth + 1));

    // candidate ratios: exact quotients of catalog values below 1
    std::set<Monomial> candidates;
    for (const auto& small : values)
        for (const auto& big : values) {
            if (small == big) continue;
            if (certified_compare(small, big, opts) == Sign::positive)  // small < big
                candidates.insert(small.divided_by(big));
        }

    std::set<Monomial> accepted;
    for (const Monomial& r : candidates) {
        for (const Monomial& start : values) {
            bool seen_theta = false;
            bool rejected = false;
            int run = 0;
            Monomial cur = start;
            for (int k = 0; k <= 4096; ++k) {
                if (dset.count(cur)) {
                    ++run;
                    if (cur == theta) seen_theta = true;
                    cur = cur.times(r);
                    continue;
                }
                // a missing term above the completeness floor refutes the
                // whole progression
                if (certainly_above(cur, floor_enc, prec)) rejected = true;
                break;
            }
            if (!rejected && seen_theta && run >= k_min) {
                accepted.insert(r);
                break;
            }
        }
    }
    return {accepted.begin(), accepted.end()};
}

}  // namespace gdfractal
