#include "gdfractal/construct.hpp"

#include <algorithm>
#include <stdexcept>

#include "gdfractal/errors.hpp"

namespace gdfractal {

namespace {

Sign magnitude_below_one(const Monomial& mag, const NumericOptions& opts) {
    // sign of 1 - |x|
    return certified_sign(MonomialSum::of(Rational(1)) - MonomialSum::of(mag), opts);
}

MonomialSum gap_sum(const ParamPoint& p, VertexId v) {
    MonomialSum s;
    for (const auto& gap : p.gaps[size_t(v)])
        if (gap) s += MonomialSum::of(*gap);
    return s;
}

}  // namespace

std::vector<std::string> validate_params(const ParamPoint& p, const NumericOptions& opts) {
    std::vector<std::string> out;
    const int n = p.graph.vertex_count();
    if (int(p.ratios.size()) != n || int(p.gaps.size()) != n || int(p.base_points.size()) != n) {
        out.push_back("parameter vectors do not match the vertex count");
        return out;
    }
    for (VertexId v = 0; v < n; ++v) {
        const int d = p.graph.out_degree(v);
        if (int(p.ratios[size_t(v)].size()) != d)
            out.push_back("vertex " + std::to_string(v + 1) + ": expected " + std::to_string(d) +
                          " ratios, got " + std::to_string(p.ratios[size_t(v)].size()));
        if (int(p.gaps[size_t(v)].size()) != d - 1)
            out.push_back("vertex " + std::to_string(v + 1) + ": expected " +
                          std::to_string(d - 1) + " gaps, got " +
                          std::to_string(p.gaps[size_t(v)].size()));
    }
    if (!out.empty()) return out;
    for (VertexId v = 0; v < n; ++v) {
        for (int k = 0; k < int(p.ratios[size_t(v)].size()); ++k) {
            const Monomial& mag = p.ratios[size_t(v)][size_t(k)].magnitude;
            Sign s = magnitude_below_one(mag, opts);
            if (s == Sign::negative || s == Sign::zero)
                out.push_back("vertex " + std::to_string(v + 1) + " ratio " + std::to_string(k + 1) +
                              ": |" + mag.to_string() + "| is not below 1");
            else if (s == Sign::indeterminate)
                out.push_back("vertex " + std::to_string(v + 1) + " ratio " + std::to_string(k + 1) +
                              ": |" + mag.to_string() + "| < 1 could not be certified");
        }
        if (gap_sum(p, v).is_zero() && p.graph.out_degree(v) >= 2)
            out.push_back("vertex " + std::to_string(v + 1) + ": all gaps are zero");
    }
    return out;
}

std::vector<std::vector<MonomialSum>> build_matrix(const ParamPoint& p, const Rational& s) {
    if (sgn(s) <= 0) throw std::invalid_argument("matrix exponent s must be positive");
    const int n = p.graph.vertex_count();
    std::vector<std::vector<MonomialSum>> m(n, std::vector<MonomialSum>(n));
    for (VertexId v = 0; v < n; ++v) {
        const auto& out_edges = p.graph.out(v);
        for (int k = 0; k < int(out_edges.size()); ++k) {
            VertexId w = p.graph.edge(out_edges[size_t(k)]).to;
            m[size_t(v)][size_t(w)] +=
                MonomialSum::of(p.ratios[size_t(v)][size_t(k)].magnitude.pow(s));
        }
    }
    return m;
}

std::optional<QMatrix> as_rational_matrix(const std::vector<std::vector<MonomialSum>>& m) {
    const int n = int(m.size());
    QMatrix q(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto r = m[size_t(i)][size_t(j)].as_rational();
            if (!r) return std::nullopt;
            q.at(i, j) = *r;
        }
    return q;
}

ContractivityResult check_contractive(const QMatrix& m) {
    const int n = m.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (sgn(m.at(i, j)) < 0)
                throw std::invalid_argument("contractivity test expects a nonnegative matrix");

    bool rows_ok = true;
    Rational max_row(0);
    for (int i = 0; i < n; ++i) {
        Rational row(0);
        for (int j = 0; j < n; ++j) row += m.at(i, j);
        if (row > max_row) max_row = row;
        if (row >= 1) rows_ok = false;
    }
    if (rows_ok) {
        ContractivityResult r;
        r.contractive = true;
        r.proof = ContractivityResult::Proof::row_sum;
        r.detail = "max row sum " + to_string(max_row) + " < 1";
        return r;
    }

    // id - M is a Z-matrix; the spectral radius is below 1 exactly when all
    // leading principal minors of id - M are positive
    QMatrix z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z.at(i, j) = (i == j ? Rational(1) : Rational(0)) - m.at(i, j);
    auto minors = leading_principal_minors(z);
    ContractivityResult r;
    r.proof = ContractivityResult::Proof::principal_minors;
    std::string mins;
    for (const auto& d : minors) {
        if (!mins.empty()) mins += ", ";
        mins += to_string(d);
    }
    r.detail = "leading principal minors of id-M: " + mins;
    r.contractive = std::all_of(minors.begin(), minors.end(),
                                [](const Rational& d) { return sgn(d) > 0; });
    return r;
}

std::vector<MonomialSum> solve_lengths(const ParamPoint& p) {
    auto m = build_matrix(p, Rational(1));
    auto q = as_rational_matrix(m);
    if (!q) throw NonRationalRatios();
    auto contractive = check_contractive(*q);
    if (!contractive.contractive) throw NotContractive();

    const int n = p.graph.vertex_count();
    QMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a.at(i, j) = (i == j ? Rational(1) : Rational(0)) - q->at(i, j);
    std::vector<MonomialSum> rhs;
    rhs.reserve(n);
    for (VertexId v = 0; v < n; ++v) rhs.push_back(gap_sum(p, v));
    auto sol = solve_square(a, rhs);
    if (!sol) throw NotContractive();  // id - M of a contractive M is invertible

    // substitute back: l_v == sum_k xi_v^(k) + sum_k |x_v^(k)| l_{omega}
    for (VertexId v = 0; v < n; ++v) {
        MonomialSum check = gap_sum(p, v);
        const auto& out_edges = p.graph.out(v);
        for (int k = 0; k < int(out_edges.size()); ++k) {
            VertexId w = p.graph.edge(out_edges[size_t(k)]).to;
            check += (*sol)[size_t(w)].times(p.ratios[size_t(v)][size_t(k)].magnitude);
        }
        if (!(check == (*sol)[size_t(v)]))
            throw std::logic_error("length identity failed to verify after the solve");
    }
    return *sol;
}

std::vector<Interval> solve_lengths_numeric(const ParamPoint& p, mpfr_prec_t precision_bits) {
    const int n = p.graph.vertex_count();
    auto msum = build_matrix(p, Rational(1));
    std::vector<std::vector<Interval>> a(n, std::vector<Interval>(n, Interval(precision_bits)));
    std::vector<Interval> b(n, Interval(precision_bits));
    Interval one = Interval::exact(Rational(1), precision_bits);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Interval mij = eval_numeric(msum[size_t(i)][size_t(j)], precision_bits);
            a[size_t(i)][size_t(j)] = (i == j) ? one - mij : mij.neg();
        }
        b[size_t(i)] = eval_numeric(gap_sum(p, i), precision_bits);
    }
    // interval Gaussian elimination; pivots must exclude zero
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!a[size_t(r)][size_t(col)].contains_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw IndeterminateSign("numeric pivot straddles zero");
        std::swap(a[size_t(pivot)], a[size_t(col)]);
        std::swap(b[size_t(pivot)], b[size_t(col)]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            if (a[size_t(r)][size_t(col)].contains_zero() &&
                a[size_t(r)][size_t(col)].is_point())
                continue;
            Interval factor = a[size_t(r)][size_t(col)] *
                              a[size_t(col)][size_t(col)].reciprocal();
            for (int j = col; j < n; ++j)
                a[size_t(r)][size_t(j)] =
                    a[size_t(r)][size_t(j)] - factor * a[size_t(col)][size_t(j)];
            b[size_t(r)] = b[size_t(r)] - factor * b[size_t(col)];
        }
    }
    std::vector<Interval> l(n, Interval(precision_bits));
    for (int i = 0; i < n; ++i)
        l[size_t(i)] = b[size_t(i)] * a[size_t(i)][size_t(i)].reciprocal();
    return l;
}

ExactInterval map_interval(const EdgeMap& m, const ExactInterval& src) {
    MonomialSum a = src.left.times(m.ratio) + m.translation;
    MonomialSum b = src.right.times(m.ratio) + m.translation;
    if (m.ratio.is_negative()) return {b, a};
    return {a, b};
}

GdIfs build_gdifs(const ParamPoint& p) {
    auto lengths = solve_lengths(p);
    const int n = p.graph.vertex_count();
    for (VertexId v = 0; v < n; ++v)
        if (certified_sign(lengths[size_t(v)]) != Sign::positive)
            throw DegenerateHull("vertex " + std::to_string(v + 1) + " has length " +
                                 lengths[size_t(v)].to_string());

    GdIfs f;
    f.graph = p.graph;
    f.lengths = lengths;
    f.anchors.resize(n);
    f.maps.resize(p.graph.edges().size());

    for (VertexId v = 0; v < n; ++v) {
        const auto& out_edges = p.graph.out(v);
        const int d = int(out_edges.size());
        auto& anchors = f.anchors[size_t(v)];
        anchors.resize(d);
        anchors[0] = p.base_points[size_t(v)];
        for (int k = 0; k + 1 < d; ++k) {
            VertexId w = p.graph.edge(out_edges[size_t(k)]).to;
            MonomialSum next =
                anchors[size_t(k)] + lengths[size_t(w)].times(p.ratios[size_t(v)][size_t(k)].magnitude);
            if (p.gaps[size_t(v)][size_t(k)])
                next += MonomialSum::of(*p.gaps[size_t(v)][size_t(k)]);
            anchors[size_t(k) + 1] = next;
        }
        for (int k = 0; k < d; ++k) {
            EdgeId e = out_edges[size_t(k)];
            VertexId w = p.graph.edge(e).to;
            const SignedMonomial& x = p.ratios[size_t(v)][size_t(k)];
            // S(t) = x (t - b_w) + b_v^(k) - x l_w [x<0]
            MonomialSum tau = anchors[size_t(k)] - p.base_points[size_t(w)].times(x);
            if (x.is_negative()) tau -= lengths[size_t(w)].times(x);
            f.maps[size_t(e)] = EdgeMap{x, tau};
        }
    }

    // edge images must tile back onto the anchors; a failure here is a bug,
    // not bad input
    for (VertexId v = 0; v < n; ++v) {
        const auto& out_edges = p.graph.out(v);
        for (int k = 0; k < int(out_edges.size()); ++k) {
            EdgeId e = out_edges[size_t(k)];
            VertexId w = p.graph.edge(e).to;
            ExactInterval img = map_interval(f.maps[size_t(e)], f.hull(w));
            MonomialSum expect_right =
                f.anchors[size_t(v)][size_t(k)] +
                lengths[size_t(w)].times(f.maps[size_t(e)].ratio.magnitude);
            if (!(img.left == f.anchors[size_t(v)][size_t(k)]) || !(img.right == expect_right))
                throw std::logic_error("edge image does not match its anchor interval");
        }
    }
    return f;
}

GdIfs build_equal_gap_family(const Digraph& g, const Rational& delta,
                             const std::vector<std::vector<Monomial>>& magnitudes,
                             const std::vector<std::vector<int>>& signs) {
    if (sgn(delta) <= 0) throw BadDelta("delta must be positive, got " + to_string(delta));
    const int n = g.vertex_count();
    for (VertexId v = 0; v < n; ++v) {
        const int d = g.out_degree(v);
        if (d < 2) throw BadDelta("vertex " + std::to_string(v + 1) + " has out-degree below 2");
        if (delta * (d - 1) >= 1)
            throw BadDelta("delta must be below 1/(d-1) = 1/" + std::to_string(d - 1) +
                           " at vertex " + std::to_string(v + 1));
    }
    if (int(magnitudes.size()) != n)
        throw MagnitudeSumMismatch("magnitude rows do not match the vertex count");

    ParamPoint p;
    p.graph = g;
    p.ratios.resize(n);
    p.gaps.resize(n);
    p.base_points.assign(n, MonomialSum::zero());
    Monomial delta_mono = factor_rational(delta);
    for (VertexId v = 0; v < n; ++v) {
        const int d = g.out_degree(v);
        if (int(magnitudes[size_t(v)].size()) != d)
            throw MagnitudeSumMismatch("vertex " + std::to_string(v + 1) + " expects " +
                                       std::to_string(d) + " magnitudes");
        MonomialSum sum;
        for (const auto& m : magnitudes[size_t(v)]) sum += MonomialSum::of(m);
        MonomialSum target = MonomialSum::of(Rational(1) - delta * (d - 1));
        if (!(sum == target))
            throw MagnitudeSumMismatch("vertex " + std::to_string(v + 1) + ": sum " +
                                       sum.to_string() + " != " + target.to_string());
        for (int k = 0; k < d; ++k) {
            int sign = 1;
            if (!signs.empty() && !signs[size_t(v)].empty()) sign = signs[size_t(v)][size_t(k)];
            p.ratios[size_t(v)].push_back(SignedMonomial{sign < 0 ? -1 : 1,
                                                         magnitudes[size_t(v)][size_t(k)]});
        }
        p.gaps[size_t(v)].assign(size_t(d - 1), delta_mono);
    }

    GdIfs f = build_gdifs(p);
    for (VertexId v = 0; v < n; ++v)
        if (!(f.lengths[size_t(v)] == MonomialSum::of(Rational(1))))
            throw std::logic_error("equal-gap solve did not return unit hull lengths");
    f.equal_gap_delta = delta;
    return f;
}

std::string separation_status_name(SeparationStatus s) {
    switch (s) {
        case SeparationStatus::CSSC: return "CSSC";
        case SeparationStatus::COSC_only: return "COSC-only";
        case SeparationStatus::fails_COSC: return "fails-COSC";
        case SeparationStatus::indeterminate: return "indeterminate";
    }
    return "?";
}

SeparationReport verify_separation(const GdIfs& f, const NumericOptions& opts) {
    SeparationReport report;
    const int n = f.graph.vertex_count();
    report.basic_gaps.resize(n);
    report.positive_lengths.resize(n);

    bool any_zero = false, any_fail = false, any_indet = false;

    for (VertexId v = 0; v < n; ++v) {
        const auto& out_edges = f.graph.out(v);
        const int d = int(out_edges.size());
        ExactInterval hull = f.hull(v);
        std::vector<ExactInterval> children;
        children.reserve(d);
        for (EdgeId e : out_edges)
            children.push_back(map_interval(f.maps[size_t(e)], f.hull(f.graph.edge(e).to)));

        // containment in the hull
        Sign left_slack = certified_sign(children.front().left - hull.left, opts);
        Sign right_slack = certified_sign(hull.right - children.back().right, opts);
        for (Sign s : {left_slack, right_slack}) {
            if (s == Sign::negative) {
                any_fail = true;
                report.overlaps.push_back(
                    {v, -1, "a child interval leaves the hull at vertex " + std::to_string(v + 1)});
            } else if (s == Sign::indeterminate) {
                any_indet = true;
                report.used_enclosures = true;
            } else if (s == Sign::positive) {
                report.notes.push_back("hull not tight at vertex " + std::to_string(v + 1));
            }
        }

        auto& gaps = report.basic_gaps[size_t(v)];
        for (int k = 0; k + 1 < d; ++k) {
            BasicGap gap;
            gap.left = children[size_t(k)].right;
            gap.right = children[size_t(k) + 1].left;
            gap.length = gap.right - gap.left;
            gap.sign = certified_sign(gap.length, opts);
            if (!gap.length.as_rational() && gap.sign != Sign::zero) report.used_enclosures = true;
            switch (gap.sign) {
                case Sign::positive: {
                    gap.length_monomial = gap.length.as_monomial();
                    if (gap.length_monomial) {
                        report.positive_lengths[size_t(v)].push_back(*gap.length_monomial);
                    } else {
                        report.non_monomial_gap = true;
                        report.notes.push_back("gap " + std::to_string(k + 1) + " at vertex " +
                                               std::to_string(v + 1) +
                                               " is positive but not a single monomial");
                    }
                    break;
                }
                case Sign::zero:
                    any_zero = true;
                    break;
                case Sign::negative:
                    any_fail = true;
                    report.overlaps.push_back(
                        {v, k,
                         "children " + std::to_string(k + 1) + "," + std::to_string(k + 2) +
                             " at vertex " + std::to_string(v + 1) +
                             " overlap or are out of left-to-right order"});
                    break;
                case Sign::indeterminate:
                    any_indet = true;
                    report.used_enclosures = true;
                    break;
            }
            gaps.push_back(std::move(gap));
        }
    }

    if (any_fail)
        report.status = SeparationStatus::fails_COSC;
    else if (any_indet)
        report.status = SeparationStatus::indeterminate;
    else if (any_zero)
        report.status = SeparationStatus::COSC_only;
    else
        report.status = SeparationStatus::CSSC;
    return report;
}

}  // namespace gdfractal
