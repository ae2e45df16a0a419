#pragma once

// JSON reading and writing for the btw tool. Series are written as literals
// ("1 + 2*t + O(t^12)"), rationals as strings ("1/2").

#include <stdexcept>
#include <string>

#include "bt/action.hpp"
#include "bt/boundary.hpp"
#include "bt/specialfiber.hpp"
#include "json.hpp"

namespace btio {

using Json = nlohmann::ordered_json;

/// Input that does not match the schema.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inline JSON (first non-blank character '{', '[' or '"') or a file path.
Json load(const std::string& file_or_inline);

/// {"p": 5, "precision": 12, "ramification": 1} or "5,12[,1]".
bt::FieldConfigPtr field_from(const Json& j);
Json to_json(const bt::FieldConfigPtr& cfg);

/// {"type": "A2", "automorphism": "swap" | "trivial"}.
bt::FormPtr form_from(const Json& j);
Json form_to_json(const bt::RelativeForm& form);

/// Coroot coordinates ["1/3", "0"] or {"coroot_coords": [...]} or
/// {"pairings": [...]} (pairings with the relative simple roots).
bt::ApartmentPoint point_from(const bt::FormPtr& form, const Json& j);
Json to_json(const bt::ApartmentPoint& x);

/// {"kind": "zero"}, {"kind": "moy_prasad", "r": "1/2"}, or a list of
/// {"root": "a1", "value": "1/2", "plus": false} entries covering every
/// root and "0". Values may be "inf".
bt::ConcaveFn concave_from(const bt::FormPtr& form, const Json& j);
Json to_json(const bt::ConcaveFn& f);

bt::FieldElem series_from(const bt::FieldConfigPtr& cfg, const Json& j);
Json to_json(const bt::FieldElem& x);

Json to_json(const bt::RootParam& p);
bt::RootParam param_from(const bt::GroupModel& model, const Json& j);

bt::Matrix matrix_from(const bt::GroupModel& model, const Json& j);
Json to_json(const bt::Matrix& m);

bt::BigCellPoint cell_point_from(const bt::GroupModel& model, const Json& j);
Json to_json(const bt::BigCellPoint& p);

/// {"g1": matrix, "omega": point, "g2": matrix, "seed": n}; g1, g2 default to
/// the identity and seed to 0.
bt::EmbeddedPoint embedded_from(const bt::GroupModel& model, const Json& j);
Json to_json(const bt::EmbeddedPoint& p);

Json to_json(const bt::ReductiveDatum& d);
Json to_json(const bt::ToroidalData& d);

/// "inf" for nullopt.
Json valuation_json(const std::optional<bt::Rational>& v);

}  // namespace btio
