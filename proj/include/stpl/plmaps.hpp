// Simplicial maps from rational complexes into either realization.
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "stpl/covers.hpp"

namespace stpl {

/// Affine on each simplex of `domain`; vertex v goes to images[v]. The domain
/// has rational vertices and is read in whichever realization F names.
template <class F>
struct SimplicialMap {
    ComplexPtr domain;
    std::shared_ptr<const Complex<F>> codomain;
    std::vector<Point<F>> images;
    std::optional<VertexId> base;  // base vertex; its image is the required base image
    std::vector<Simplex> carriers;  // codomain carrier of each image

    /// Checks image count, that images lie in |codomain|, and that the
    /// images of every domain simplex share a closed codomain simplex.
    static SimplicialMap make(ComplexPtr domain, std::shared_ptr<const Complex<F>> codomain,
                              std::vector<Point<F>> images, std::optional<VertexId> base = std::nullopt);
    /// As make, with the codomain carrier of every image supplied by the caller.
    static SimplicialMap make_with_carriers(ComplexPtr domain, std::shared_ptr<const Complex<F>> codomain,
                                            std::vector<Point<F>> images, const std::vector<Simplex>& carriers,
                                            std::optional<VertexId> base = std::nullopt);

    /// Union of the codomain carriers of the images of domain simplex i.
    Simplex image_carrier(size_t i) const;
    std::vector<Point<F>> image_points(size_t i) const;
    std::optional<Point<F>> base_image() const;
};

using DownMap = SimplicialMap<Rational>;
using UpMap = SimplicialMap<InfScalar>;

template <class F>
Point<F> evaluate(const SimplicialMap<F>& f, const Point<Rational>& x);
/// Evaluation at a point of the upstairs realization of the domain.
Point<InfScalar> evaluate_up(const UpMap& f, const Point<InfScalar>& x);

/// The same function on a subdivision of the domain.
template <class F>
SimplicialMap<F> reindex(const SimplicialMap<F>& f, ComplexPtr finer);

template <class F>
SimplicialMap<F> constant_map(ComplexPtr domain, std::shared_ptr<const Complex<F>> codomain, const Point<F>& value);

/// Downstairs shadow of a map: images replaced by their standard parts, into st(codomain).
DownMap standard_part(const UpMap& f, std::shared_ptr<const DownComplex> st_codomain);

struct SmallReport {
    /// Per domain simplex: lowest-index element containing the image of its closure.
    std::vector<std::optional<size_t>> witness;
    bool small() const;
    std::vector<size_t> failures() const;
};

/// Standard parts of points (identity on rational points).
std::vector<Point<Rational>> shadow(const std::vector<Point<Rational>>& pts);
std::vector<Point<Rational>> shadow(const std::vector<Point<InfScalar>>& pts);

/// Per-simplex smallness; upstairs, the cover is read through st^-1.
template <class F>
SmallReport is_small(const SimplicialMap<F>& f, const StarCover& u);

struct CloseReport {
    bool close = false;
    int rounds = 0;  // extra subdivisions of the common domain
    std::shared_ptr<const DownComplex> domain;
    std::vector<std::optional<size_t>> witness;
};

/// Shared-element closeness on the common domain or a few barycentric
/// subdivisions of it.
template <class F>
CloseReport is_close(const SimplicialMap<F>& f, const SimplicialMap<F>& g, const StarCover& u, int extra = 2);

template <class F>
struct SmallResult {
    SimplicialMap<F> map;
    int rounds = 0;
};

/// Iterated barycentric subdivision of the domain until the map is small.
template <class F>
SmallResult<F> make_small(const SimplicialMap<F>& f, const StarCover& u, int cap = 20);

/// Map on a triangulated prism domain x [0,1] with the last coordinate as time.
template <class F>
struct Homotopy {
    SimplicialMap<F> map;
    SimplicialMap<F> end0;
    SimplicialMap<F> end1;
    bool relative_base = false;
};

/// Restriction of a prism-domain map to the slice t (0 or 1), as a map on the
/// domain with the time coordinate dropped.
template <class F>
SimplicialMap<F> restrict_end(const SimplicialMap<F>& h, int t);

/// Exact equality of domains (as complexes) and vertex images.
template <class F>
bool same_map(const SimplicialMap<F>& a, const SimplicialMap<F>& b);

/// Constant homotopy on the prism of f's domain.
template <class F>
Homotopy<F> constant_homotopy(const SimplicialMap<F>& f);

}  // namespace stpl
