#ifndef LOCRES_MODEL_JSON_HPP
#define LOCRES_MODEL_JSON_HPP

#include "locres/model.hpp"

#include <string>

namespace locres {

/// Model JSON schema:
/// {"group": {"rank": l, "dim": s, "positive_roots": [[...]], "weyl_order": w},
///  "dim_X": d,
///  "fixed_points": [{"label": str, "moment": ["p/q", ...],
///                    "weights": [{"form": [...], "mult": int}, ...],
///                    "class": "<polynomial text>",
///                    "point_integral": "<scalar text>"}]}
/// Rationals are "p/q" strings.  Rank-1 models load in the unit-volume
/// normalization, higher ranks in the general one.
LocalizationModel model_from_json(const std::string& text);
LocalizationModel model_from_json_file(const std::string& path);
std::string model_to_json(const LocalizationModel& m); // deterministic field order

} // namespace locres

#endif
