// Skeletal extensions, approximations, pushforward, lifting, and certificates.
#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stpl/io.hpp"

namespace stpl {

/// An operation's hypothesis does not hold for the given data.
class PreconditionFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// st: |up| -> |down| for complexes with the same combinatorics.
struct StandardPartMap {
    std::shared_ptr<const UpComplex> up;
    std::shared_ptr<const DownComplex> down;
    std::vector<VertexId> to_up;  // down vertex id -> up vertex id

    /// Throws InvalidInput if the standard-part complex is degenerate.
    static StandardPartMap make(std::shared_ptr<const UpComplex> up);
    /// The point of |up| with the barycentric coordinates y has in |down|;
    /// its standard part is y.
    Point<InfScalar> transfer(const Point<Rational>& y) const;
};

/// Partial map: images for every vertex of the domain, affine already on `fixed`.
template <class F>
struct PartialMap {
    ComplexPtr domain;
    std::shared_ptr<const Complex<F>> codomain;
    std::vector<Point<F>> images;
    Subcomplex fixed;
    std::optional<VertexId> base;
    std::vector<Simplex> carriers;  // codomain carrier per image, computed when empty
};

template <class F>
struct Extension {
    /// On the barycentric subdivision of the domain holding `fixed` and every
    /// simplex that maps affinely into one element.
    SimplicialMap<F> map;
    /// Per simplex of the input domain (unset on fixed ones): element used, and
    /// whether it was coned to the element's center.
    std::vector<std::optional<size_t>> element;
    std::vector<int> level;  // chain step used (upstairs), 0 downstairs
    std::vector<bool> coned;
};

/// Cone extension into a star cover of the codomain's subdivision.
Extension<Rational> extend_downstairs(const PartialMap<Rational>& f, const StarCover& u);

/// Extension through the chain of an n-good cover of st(codomain).
Extension<InfScalar> extend_upstairs(const PartialMap<InfScalar>& f, const StarCover& w, const StandardPartMap& s);

// ---------------------------------------------------------------- certificates

struct Assertion {
    std::string type;
    json data;
    bool result = false;
};

struct Certificate {
    std::string kind;  // homotopy, approximation, smallness, lift
    json payload;
    std::vector<Assertion> assertions;

    bool passed() const;
    json to_json() const;
    static Certificate from_json(const json& j);
};

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Re-derives every assertion from the serialized payload alone.
VerifyReport verify_certificate(const Certificate& c);
VerifyReport verify_certificate(const json& j);

// ---------------------------------------------------------------- pipelines

template <class F>
struct HomotopyResult {
    Homotopy<F> homotopy;
    Certificate certificate;
};

struct ApproxResult {
    DownMap map;
    Certificate certificate;
};

struct LiftResult {
    UpMap map;
    Certificate certificate;
};

Certificate smallness_certificate(const DownMap& f, const StarCover& u);
Certificate smallness_certificate(const UpMap& f, const StarCover& u);

/// f* with f*(v) = st f(v) on vertices, extended into V; requires f small for st^-1(V).
ApproxResult u_approximation(const UpMap& f, const StandardPartMap& s, const StarCover& v);

/// Homotopy between U-close downstairs maps on a common domain.
HomotopyResult<Rational> close_homotopy(const DownMap& f, const DownMap& g, const StarCover& u);

/// Definable homotopy between upstairs maps sharing st^-1(W) elements per simplex.
HomotopyResult<InfScalar> close_def_homotopy(const UpMap& f, const UpMap& g, const StarCover& w,
                                             const StandardPartMap& s);

struct PushOptions {
    int stage = 3;
    int cap = 20;
    int extra_depth = 0;  // additional subdivisions before approximating
};

/// Good cover of O, star refinement, make_small, u_approximation.
ApproxResult pushforward(const UpMap& f, const OpenRegion& o, const StandardPartMap& s, const PushOptions& opt = {});

/// Upstairs map whose pushforward class is f*; vertices go to transfer points.
LiftResult lift_map(const DownMap& fstar, const StarCover& u, const OpenRegion& o, const StandardPartMap& s,
                    int cap = 20);

/// The n-good cover the lifting operations extend through: a star refinement
/// of u refined to n-good.
StarCover lifting_cover(const StarCover& u, const OpenRegion& o, int n, int cap = 20);

/// Definable homotopy f ~ g from a downstairs homotopy G between approximations.
/// G is subdivided until small for lifting_cover(u, o, dim); pass a G that is
/// already small there to avoid subdividing a prism domain.
struct LiftHomotopyResult {
    std::vector<Homotopy<InfScalar>> pieces;  // f ~ H0, H, H1 ~ g
    Certificate certificate;
};
LiftHomotopyResult lift_homotopy(const Homotopy<Rational>& g, const UpMap& f, const UpMap& gmap, const StarCover& u,
                                 const OpenRegion& o, const StandardPartMap& s, int cap = 20);

/// Subcomplex of a prism-domain complex: the two ends, plus the base fiber when pointed.
Subcomplex prism_ends(const DownComplex& prism, std::optional<Point<Rational>> base_point);

json standard_part_map_to_json(const StandardPartMap& s);
StandardPartMap standard_part_map_from_json(const json& j);

}  // namespace stpl
