// Open regions and open covers carried by open stars of a downstairs complex.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stpl/complex.hpp"

namespace stpl {

/// Raised when a subdivide-until-it-fits loop hits its round cap.
class SubdivisionCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when two covers' carriers are not subdivisions of one another.
class IncompatibleCarriers : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using ComplexPtr = std::shared_ptr<const DownComplex>;

/// O = |base| minus |excluded|, excluded a closed subcomplex of base.
struct OpenRegion {
    ComplexPtr base;
    Subcomplex excluded;

    static OpenRegion whole(ComplexPtr base) { return OpenRegion{std::move(base), {}}; }
    bool contains(const Point<Rational>& x) const;
    /// Vertex lists of the maximal excluded simplexes.
    std::vector<std::vector<Point<Rational>>> excluded_cells() const;
    /// L-infinity distance from a closed simplex to |excluded|; nullopt when nothing is excluded.
    std::optional<Rational> distance_to_frontier(const std::vector<Point<Rational>>& cell) const;
};

enum class CoverKind { plain, star_refining, semi_good, n_good };

/// Finite cover whose i-th element is the open star of centers[i] in carrier.
struct StarCover {
    ComplexPtr carrier;
    std::vector<Point<Rational>> centers;
    std::vector<Simplex> cores;  // carrier(center)
    CoverKind kind = CoverKind::plain;
    int level = 0;  // n for n-good covers
    /// Cover this one refines (star_refining), is semi-good within, or the
    /// previous chain link for n-good covers.
    std::shared_ptr<const StarCover> witness;
    /// semi-good: per element, the index of the witness element containing
    /// the closed star (the upstairs star of the same center is the
    /// contractible set sandwiched between the preimages).
    std::vector<size_t> outer;
    std::map<Simplex, std::vector<size_t>> by_core;

    static StarCover make(ComplexPtr carrier, std::vector<Point<Rational>> centers);
    size_t size() const { return centers.size(); }
    /// Elements whose core is a face of s (s a simplex of the carrier), ascending.
    std::vector<size_t> elements_with_core_in(const Simplex& s) const;

    bool contains(size_t e, const Point<Rational>& x) const;
    /// Whether the convex hull of pts lies in element e. The hull must lie in
    /// |carrier| (e.g. pts in one closed simplex of a complex it subdivides).
    bool contains_hull(size_t e, const std::vector<Point<Rational>>& pts) const;
    std::vector<size_t> elements_containing_hull(const std::vector<Point<Rational>>& pts) const;
    /// Lowest-index element containing the hull.
    std::optional<size_t> find_hull(const std::vector<Point<Rational>>& pts) const;
    /// Whether element f of `other` lies inside element e of this cover.
    bool contains_element(size_t e, const StarCover& other, size_t f) const;
    /// Whether the closure of element f of `other` lies inside element e.
    bool contains_closed_element(size_t e, const StarCover& other, size_t f) const;
    /// Elements meeting element e (same carrier).
    std::vector<size_t> star_of(size_t e) const;
    std::vector<size_t> star_of_points(const std::vector<Point<Rational>>& pts) const;
    /// Whether x lies in some element.
    bool covers(const Point<Rational>& x) const;
};

/// Whether `fine` is a subdivision of `coarse`.
bool is_refinement(const DownComplex& fine, const DownComplex& coarse);

struct RefineReport {
    bool refines = false;
    bool star_refines = false;
};
RefineReport refine_check(const StarCover& u, const StarCover& v);

/// Stars of the region's vertices of an iterated subdivision of V's carrier,
/// deep enough that the result star-refines V. Tagged star_refining.
StarCover star_refinement(const StarCover& v, const OpenRegion& region, int cap = 20);

struct GoodCover {
    StarCover cover;
    /// L_1, ..., L_stage as vertex-point lists of their simplexes.
    std::vector<std::vector<std::vector<Point<Rational>>>> chain;
    int rounds = 0;
};

/// Finite stage of the compact-exhaustion good-cover construction. When
/// `target` is null the target cover is the whole region.
GoodCover good_cover(const OpenRegion& region, const StarCover* target, int stage, int cap = 20);

/// Refinement W of V whose elements have closed stars inside V elements.
StarCover semi_good_refinement(const StarCover& v, const OpenRegion& region, int cap = 20);

/// n-fold chain  W_n < V_n < ... < W_1 < V_1 < U; returns W_n tagged n_good(n).
StarCover n_good_refinement(const StarCover& u, const OpenRegion& region, int n, int cap = 20);

/// The chain link used to extend from the k-skeleton to the (k+1)-skeleton of
/// a complex of dimension <= level: the semi-good cover (its witness is the V
/// it is semi-good within). Throws InvalidInput if the chain is too short.
const StarCover& chain_step(const StarCover& n_good, int k);

/// Number of chain steps available (0 for covers that are not n-good).
int good_level(const StarCover& c);

/// Stars of all vertices of a complex, covering its whole realization.
StarCover vertex_star_cover(ComplexPtr carrier);

}  // namespace stpl
