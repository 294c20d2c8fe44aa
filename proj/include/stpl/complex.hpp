// Geometric simplicial complexes with exact coordinates.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stpl/field.hpp"

namespace stpl {

template <class F>
using Point = std::vector<F>;

using VertexId = std::uint32_t;
/// Sorted list of vertex ids; dimension = size - 1.
using Simplex = std::vector<VertexId>;

/// Set of simplex indices of a parent complex, sorted ascending.
struct Subcomplex {
    std::vector<size_t> members;
    bool contains(size_t idx) const;
};

template <class F>
Point<F> lift_point(const Point<Rational>& p);
template <class F>
Point<Rational> standard_part(const Point<F>& p);

template <class F>
bool lex_less(const Point<F>& a, const Point<F>& b);

/// Immutable geometric simplicial complex. Vertices are stored in canonical
/// (coordinate-lexicographic) order, so vertex id order is canonical order.
/// Simplexes are sorted by (dimension, vertex list).
template <class F>
class Complex {
public:
    /// Builds and canonicalizes. With close_faces every face is added.
    /// Throws InvalidInput on empty input, repeated points, bad ids, wrong lengths.
    static Complex make(size_t ambient_dim, std::vector<Point<F>> points,
                        std::vector<std::vector<VertexId>> simplexes, bool close_faces = false);
    /// As make, also returning the old-id -> canonical-id vertex map.
    static std::pair<Complex, std::vector<VertexId>> make_mapped(
        size_t ambient_dim, std::vector<Point<F>> points,
        std::vector<std::vector<VertexId>> simplexes, bool close_faces = false);

    size_t ambient_dim() const { return ambient_dim_; }
    size_t num_vertices() const { return points_.size(); }
    size_t size() const { return simplexes_.size(); }
    int dim() const;
    bool is_closed() const { return closed_; }

    const Point<F>& point(VertexId v) const { return points_[v]; }
    const std::vector<Point<F>>& points() const { return points_; }
    const Simplex& simplex(size_t idx) const { return simplexes_[idx]; }
    const std::vector<Simplex>& simplexes() const { return simplexes_; }
    std::optional<size_t> find(const Simplex& s) const;
    std::optional<VertexId> find_vertex(const Point<F>& p) const;
    /// Simplex indices containing vertex v.
    const std::vector<size_t>& incident(VertexId v) const { return incident_[v]; }
    /// Indices of simplexes having s as a face (including s itself if present).
    std::vector<size_t> cofaces(const Simplex& s) const;

    Point<F> barycenter(const Simplex& s) const;
    /// Barycentric coordinates of x in the affine hull of s; nullopt if x is off the hull.
    std::optional<std::vector<F>> barycentric(const Simplex& s, const Point<F>& x) const;
    bool affinely_independent(const Simplex& s) const;

    /// Unique open simplex containing x; throws InvalidInput if x is not in |P|.
    Simplex carrier(const Point<F>& x) const;
    std::optional<Simplex> try_carrier(const Point<F>& x) const;
    bool contains(const Point<F>& x) const { return try_carrier(x).has_value(); }

    /// All simplex indices sigma with x in cl(sigma).
    std::vector<size_t> open_star(const Point<F>& x) const;

    Subcomplex skeleton(int k) const;
    Subcomplex all() const;
    /// Face closure of the given members.
    Subcomplex closure(const std::vector<size_t>& members) const;
    /// Extracts the members as a standalone complex (vertex ids renumbered).
    Complex sub(const Subcomplex& s) const;

    /// Maximal simplexes (not a proper face of another member).
    std::vector<size_t> maximal() const;
    bool is_maximal(size_t idx) const { return maximal_[idx]; }
    /// Candidate maximal simplexes whose bounding boxes may meet [lo, hi]
    /// (all simplexes for non-closed complexes). Sorted, unique.
    std::vector<size_t> maximal_near(const Point<F>& lo, const Point<F>& hi) const;

    bool same_as(const Complex& o) const {
        return ambient_dim_ == o.ambient_dim_ && points_ == o.points_ && simplexes_ == o.simplexes_;
    }

private:
    Complex() = default;
    void index();

    size_t ambient_dim_ = 0;
    std::vector<Point<F>> points_;
    std::vector<Simplex> simplexes_;
    std::map<Simplex, size_t> lookup_;
    std::vector<std::vector<size_t>> incident_;
    std::vector<std::pair<Point<F>, Point<F>>> boxes_;
    std::vector<bool> maximal_;
    bool closed_ = false;
    // Upstairs only: whether each simplex's standard-part shadow is nondegenerate,
    // so rational barycentric tests can rule candidates out.
    std::vector<bool> st_independent_;
    bool st_may_contain(size_t i, const Point<Rational>& sx) const;

    // Uniform grid over the standard parts of the first (up to) two coordinates,
    // bucketing carrier-search candidates.
    void build_grid();
    std::vector<size_t> grid_cells(const Point<F>& lo, const Point<F>& hi) const;
    size_t grid_axes_ = 0;
    std::vector<Rational> grid_lo_;
    std::vector<Rational> grid_step_;
    size_t grid_n_ = 1;
    std::vector<std::vector<size_t>> grid_;
};

using DownComplex = Complex<Rational>;
using UpComplex = Complex<InfScalar>;

/// Same combinatorics, coordinates lifted into Q(eps).
UpComplex lift(const DownComplex& c);
/// Vertex-wise standard part with the same combinatorics. Simplexes may become
/// affinely dependent; colliding vertices raise InvalidInput.
DownComplex standard_part(const UpComplex& c);

template <class F>
struct ValidationReport {
    bool valid = true;
    std::vector<size_t> dependent;                      // simplexes with dependent vertices
    std::vector<std::pair<size_t, size_t>> bad_pairs;   // face-condition violations
};

template <class F>
ValidationReport<F> validate_complex(const Complex<F>& c);

template <class F>
struct Subdivision {
    Complex<F> complex;
    /// For each simplex of `complex`, the index of the open simplex of the
    /// input complex containing it.
    std::vector<size_t> parent;
};

/// Barycentric subdivision holding the closed subcomplex `hold` fixed.
template <class F>
Subdivision<F> barycentric_subdivision(const Complex<F>& p, const Subcomplex& hold = {});
/// Iterated plain subdivision; parent maps into the original complex.
template <class F>
Subdivision<F> barycentric_subdivision(const Complex<F>& p, int rounds);

/// Standard triangulation of |P| x [0,1] in ambient dimension k+1.
template <class F>
Complex<F> prism_triangulation(const Complex<F>& p);

/// Witness z with St(x) cap St(y) = St(z), or nullopt when the intersection is empty.
template <class F>
std::optional<Point<F>> star_intersection(const Point<F>& x, const Point<F>& y, const Complex<F>& p);

/// Largest L-infinity diameter of a closed simplex.
template <class F>
F mesh(const Complex<F>& p);

/// Exact L-infinity distance between two closed simplexes (vertex lists given as points).
Rational simplex_distance(const std::vector<Point<Rational>>& a, const std::vector<Point<Rational>>& b);
/// Minimum over pairs; each simplex given as index into c.
Rational min_distance(const DownComplex& c, std::span<const size_t> a, std::span<const size_t> b);

/// L-infinity distance between points.
template <class F>
F linf(const Point<F>& a, const Point<F>& b);

/// k-dimensional volume of simplex `inner` measured in the barycentric frame
/// of the k-simplex `outer` (which must contain it), times k!. Absolute value.
template <class F>
F relative_volume(const std::vector<Point<F>>& outer, const std::vector<Point<F>>& inner);

/// Barycentric coordinates of x w.r.t. the affine hull of `verts`.
template <class F>
std::optional<std::vector<F>> solve_barycentric(const std::vector<Point<F>>& verts, const Point<F>& x);

/// Rank of the affine hull of the points (number of independent directions).
template <class F>
int affine_rank(const std::vector<Point<F>>& pts);

template <class F>
std::vector<Point<F>> simplex_points(const Complex<F>& c, const Simplex& s);

/// Whether closed simplexes intersect (exact feasibility LP).
bool closed_simplexes_meet(const std::vector<Point<Rational>>& a, const std::vector<Point<Rational>>& b);

}  // namespace stpl
