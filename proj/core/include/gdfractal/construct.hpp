#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdfractal/digraph.hpp"
#include "gdfractal/interval.hpp"
#include "gdfractal/linalg.hpp"
#include "gdfractal/monomial.hpp"

namespace gdfractal {

/// The parameter vector of a system: per-vertex ordered contraction ratios
/// x_v^(k), per-vertex gap widths xi_v^(k) (nullopt encodes a zero gap), and
/// per-vertex base points b_v^(1).
struct ParamPoint {
    Digraph graph;
    std::vector<std::vector<SignedMonomial>> ratios;          // [v][k], k < d_v
    std::vector<std::vector<std::optional<Monomial>>> gaps;   // [v][k], k < d_v-1
    std::vector<MonomialSum> base_points;                     // [v]
};

/// Structural and range checks: shape consistency, |ratio| in (0,1)
/// (exact where rational, enclosure-certified otherwise), at least one
/// positive gap per vertex. Violations are data, not errors.
std::vector<std::string> validate_params(const ParamPoint& p, const NumericOptions& opts = {});

/// N x N matrix with entry (i,j) the sum of |x_i^(k)|^s over edges i -> j.
std::vector<std::vector<MonomialSum>> build_matrix(const ParamPoint& p, const Rational& s);

/// Exact rational view of such a matrix, when it has one.
std::optional<QMatrix> as_rational_matrix(const std::vector<std::vector<MonomialSum>>& m);

struct ContractivityResult {
    bool contractive = false;
    enum class Proof { row_sum, principal_minors, none } proof = Proof::none;
    std::string detail;
};

/// Exact spectral-radius-below-1 test for a nonnegative rational matrix:
/// all row sums below 1 when that shortcut applies, otherwise positivity of
/// every leading principal minor of id - M.
ContractivityResult check_contractive(const QMatrix& m);

/// Exact solve of (id - M) l = (sum_k xi_v^(k))_v over MonomialSum.
/// Throws NonRationalRatios / NotContractive.
std::vector<MonomialSum> solve_lengths(const ParamPoint& p);

/// Enclosure fallback for irrational ratio magnitudes: interval Gaussian
/// elimination, lengths only, no exact certificates downstream.
std::vector<Interval> solve_lengths_numeric(const ParamPoint& p, mpfr_prec_t precision_bits);

/// Closed interval with exact symbolic endpoints, left <= right.
struct ExactInterval {
    MonomialSum left, right;
    MonomialSum width() const { return right - left; }
};

struct EdgeMap {
    SignedMonomial ratio;
    MonomialSum translation;  // S(t) = ratio * t + translation
};

ExactInterval map_interval(const EdgeMap& m, const ExactInterval& src);

/// A constructed system: one similarity per edge plus the solved hull data.
/// The identities l_v = sum_k xi_v^(k) + sum_k |x_v^(k)| l_w and the
/// matching hull endpoints hold exactly as MonomialSum identities.
struct GdIfs {
    Digraph graph;
    std::vector<EdgeMap> maps;                       // by edge id
    std::vector<MonomialSum> lengths;                // l_v
    std::vector<std::vector<MonomialSum>> anchors;   // b_v^(k), k = 0..d_v-1
    std::optional<Rational> equal_gap_delta;         // set by the equal-gap builder

    ExactInterval hull(VertexId v) const {
        return {anchors[size_t(v)][0], anchors[size_t(v)][0] + lengths[size_t(v)]};
    }
};

/// Builds the maps S_e, anchors and hulls from a parameter point, so that
/// each edge image is exactly [b_v^(k), b_v^(k) + |x| l_w], negative ratios
/// handled by the orientation-reversing branch.
GdIfs build_gdifs(const ParamPoint& p);

/// The all-gaps-equal family: conv F_v = [0,1] at every vertex, every basic
/// gap exactly delta, strong separation. Per vertex the magnitudes must sum
/// to 1 - (d_v - 1) delta exactly.
GdIfs build_equal_gap_family(const Digraph& g, const Rational& delta,
                             const std::vector<std::vector<Monomial>>& magnitudes,
                             const std::vector<std::vector<int>>& signs = {});

enum class SeparationStatus { CSSC, COSC_only, fails_COSC, indeterminate };

std::string separation_status_name(SeparationStatus s);

struct BasicGap {
    MonomialSum left, right;   // open interval between consecutive children
    MonomialSum length;
    Sign sign = Sign::indeterminate;
    std::optional<Monomial> length_monomial;  // positive single-term lengths
};

struct OverlapWitness {
    VertexId vertex;
    int index;  // child pair (index, index+1), or -1 for hull violations
    std::string detail;
};

struct SeparationReport {
    SeparationStatus status = SeparationStatus::indeterminate;
    std::vector<std::vector<BasicGap>> basic_gaps;        // [v][k]
    std::vector<std::vector<Monomial>> positive_lengths;  // Lambda_v
    std::vector<OverlapWitness> overlaps;
    std::vector<std::string> notes;
    bool used_enclosures = false;
    bool non_monomial_gap = false;
};

/// Recomputes every child interval from the map data, confirms left-to-right
/// input order and containment in the hull, and certifies each gap's sign.
/// Never emits a CSSC/COSC verdict it cannot certify: unresolved signs make
/// the status indeterminate.
SeparationReport verify_separation(const GdIfs& f, const NumericOptions& opts = {});

}  // namespace gdfractal
