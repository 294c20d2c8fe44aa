// Canonical JSON for scalars, complexes, maps, covers and regions.
#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "stpl/plmaps.hpp"

namespace stpl {

using json = nlohmann::json;

json to_json(const Rational& x);
json to_json(const InfScalar& x);

template <class F>
F scalar_from_json(const json& j);
template <>
Rational scalar_from_json<Rational>(const json& j);
template <>
InfScalar scalar_from_json<InfScalar>(const json& j);

template <class F>
json point_to_json(const Point<F>& p);
template <class F>
Point<F> point_from_json(const json& j);

json simplex_to_json(const Simplex& s);

template <class F>
json complex_to_json(const Complex<F>& c);
/// Parsed complex and the file-id -> canonical-id map.
template <class F>
std::pair<Complex<F>, std::vector<VertexId>> complex_from_json_mapped(const json& j);
template <class F>
Complex<F> complex_from_json(const json& j);

template <class F>
json map_to_json(const SimplicialMap<F>& f);
template <class F>
SimplicialMap<F> map_from_json(const json& j);

json cover_to_json(const StarCover& c);
StarCover cover_from_json(const json& j);

json region_to_json(const OpenRegion& o);
OpenRegion region_from_json(const json& j);

template <class F>
json homotopy_to_json(const Homotopy<F>& h);
template <class F>
Homotopy<F> homotopy_from_json(const json& j);

/// Sorted keys, no whitespace, trailing newline.
std::string canonical(const json& j);

/// Whether the document's "realization" field names the upstairs field.
bool is_upstairs(const json& complex_or_map);

}  // namespace stpl
