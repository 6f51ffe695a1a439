#pragma once

#include <optional>
#include <vector>

#include "gdfractal/construct.hpp"

namespace gdfractal {

/// Ordered list of disjoint closed intervals with exact endpoints.
struct IntervalSet {
    std::vector<ExactInterval> intervals;

    bool empty() const { return intervals.empty(); }
    size_t size() const { return intervals.size(); }
};

struct Budget {
    size_t max_intervals = 1000000;
};

/// Composition of the edge maps along a path (identity for the empty path).
EdgeMap compose_path(const GdIfs& f, const Path& p);

/// Product of the absolute contraction ratios along a path.
Monomial path_ratio_magnitude(const GdIfs& f, const Path& p);

/// The level-m approximation of the attractor at u: the union of the images
/// of the hulls under all length-m path maps, sorted left to right. m = 0
/// yields the hull itself.
IntervalSet level_approx(const GdIfs& f, VertexId u, int m, const Budget& budget = {},
                         const NumericOptions& opts = {});

struct GapEntry {
    Monomial length;
    Path path;          // provenance: gap of the path's terminal vertex ...
    int gap_index = -1; // ... at this basic-gap slot (0-based), -1 if geometric
    int depth = -1;     // path length, -1 for geometrically recovered gaps
    // exact gap interval, populated by the geometric route
    std::optional<MonomialSum> gap_left, gap_right;
};

/// Multiset of gap lengths with provenance. The distinct values form the
/// depth-truncation of the gap length set; duplicates are retained because
/// they make the brute-force cross-check exact.
struct GapCatalog {
    std::vector<GapEntry> entries;
    int max_depth = -1;
    // completeness metadata: every gap value above
    // lambda_max * rho_max^(max_depth+1) is present in the catalog
    std::optional<Monomial> lambda_max;
    std::optional<Monomial> rho_max;

    std::vector<Monomial> distinct_values() const;
    std::vector<Monomial> sorted_lengths() const;  // multiset view
};

/// Exact truncated gap catalog: the gaps at u at depth 0 plus, for every
/// path of length <= max_depth, the terminal vertex's gaps scaled by the
/// path ratio.
GapCatalog gap_lengths_truncated(const GdIfs& f, VertexId u, int max_depth,
                                 const Budget& budget = {}, const NumericOptions& opts = {});

/// Oracle by direct geometry: the complementary intervals of the level-m
/// approximation inside the hull. Must reproduce the truncated catalog at
/// depth m-1 as a multiset.
GapCatalog gaps_bruteforce(const GdIfs& f, VertexId u, int m, const Budget& budget = {},
                           const NumericOptions& opts = {});

/// Hausdorff distance between two unions of closed intervals as a rigorous
/// enclosure; exact (degenerate) for rational endpoints.
Interval hausdorff_distance(const IntervalSet& a, const IntervalSet& b,
                            mpfr_prec_t precision_bits);

/// Truncated search for common ratios of strictly decreasing geometric
/// sequences through theta inside the catalog's distinct values. A finite
/// truncation can both miss and over-report, so every finding must be
/// confirmed or refuted by the symbolic membership procedures before it
/// reaches a certificate.
std::vector<Monomial> detect_geometric_ratios(const GapCatalog& catalog, const Monomial& theta,
                                              int k_min, const NumericOptions& opts = {});

}  // namespace gdfractal
