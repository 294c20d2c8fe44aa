// Edge-path groups, winding numbers, dimension audits and compact domination.
#pragma once

#include <memory>
#include <vector>

#include "stpl/approx.hpp"

namespace stpl {

/// Letter k > 0 is generator k-1, -k its inverse.
using Word = std::vector<int>;

struct GroupPresentation {
    VertexId base = 0;
    std::vector<Simplex> generators;  // oriented low -> high id
    std::vector<Word> relations;      // freely and cyclically reduced, nonempty

    json to_json() const;
};

/// Edge-path group of the 2-skeleton; the spanning tree is the BFS tree from
/// `base` visiting neighbours in vertex order. Throws InvalidInput when
/// disconnected or not closed.
GroupPresentation edge_path_pi1(const DownComplex& p, VertexId base = 0);

/// Tietze moves: drop generators occurring once in some relation.
GroupPresentation simplify(const GroupPresentation& g);

/// Invariant factors of the abelianization, 1s dropped; 0 marks a Z summand.
std::vector<long> abelian_invariants(const GroupPresentation& g);

/// Freely reduced product.
Word reduce(const Word& w);

/// Signed count of codomain edge traversals. Planar circles are oriented
/// counterclockwise, others from vertex 0 towards its lower neighbour.
/// Throws InvalidInput unless both complexes are simplicial circles.
template <class F>
long winding_number(const SimplicialMap<F>& f);

/// Vertex ids of a simplicial circle in its orientation, starting at vertex 0.
template <class F>
std::vector<VertexId> circle_order(const Complex<F>& c);

// ---------------------------------------------------------------- PL sets

/// Union of open simplexes of `ambient` (a closed complex).
template <class F>
struct PLSet {
    std::shared_ptr<const Complex<F>> ambient;
    std::vector<size_t> members;  // sorted

    static PLSet make(std::shared_ptr<const Complex<F>> ambient, std::vector<size_t> members);
    bool contains(size_t i) const;
    int dim() const;
    PLSet closure() const;
    PLSet interior() const;
    PLSet complement() const;
    /// cl(D) minus D.
    PLSet frontier() const;
    /// cl(D) minus int(D).
    PLSet boundary() const;
};

template <class F>
int dimension(const PLSet<F>& a);
template <class F>
int dimension(const Complex<F>& c);

struct DimensionAudit {
    int dim = -1;     // upstairs
    int st_dim = -1;  // of the vertex-wise standard parts, by exact affine rank
    std::vector<size_t> dropped;  // maximal simplexes whose rank drops under st
    bool assumption_holds() const { return dropped.empty(); }
    json to_json() const;
};

int st_image_dimension(const PLSet<InfScalar>& a);
DimensionAudit dimension_audit(const UpComplex& c);

struct DominationReport {
    std::vector<size_t> delta;  // simplexes of the boundary, upstairs
    int delta_dim = -1;
    /// Standard parts of the closed boundary simplexes (vertex lists, deduplicated).
    std::vector<std::vector<Point<Rational>>> st_delta;
    int st_delta_dim = -1;
    int top_dim = -1;  // dimension of the standard part of the ambient
    bool empty_interior = false;
    size_t samples = 0;
    size_t overlaps = 0;                       // sample points in st(D) and st(D^c)
    std::vector<Point<Rational>> outside;      // overlap points not in st(delta D)
    bool passed() const { return empty_interior && outside.empty(); }
    json to_json() const;
};

/// Boundary, its standard part, the empty-interior verdict, and the sampled
/// check that st(D) and st(D^c) meet only inside st(delta D). `grid` sets the
/// sampling lattice (points per unit).
DominationReport domination_check(const PLSet<InfScalar>& d, long grid = 8);

}  // namespace stpl
