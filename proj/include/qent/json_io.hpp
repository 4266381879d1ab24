#pragma once

#include <filesystem>

#include "json.hpp"
#include "qent/channels.hpp"
#include "qent/entangle.hpp"
#include "qent/states.hpp"

namespace qent::io {

using nlohmann::json;

// {"rows": R, "cols": C, "re_im": [[re, im], ...]}, row-major.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

// {"kind": "density", "dim": d, "matrix": <matrix>}
json density_to_json(const DensityOperator& rho);
DensityOperator density_from_json(const json& j);

// {"kind": "compound", "dim_g": dG, "dim_h": dH, "matrix": <matrix>}
json compound_to_json(const CompoundState& w);
CompoundState compound_from_json(const json& j);

// {"kind": "kraus", "dim_in": d0, "dim_out": d, "kraus": [<matrix>, ...]}
json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const json& j);

// {"kind": "ensemble", "dim": d, "items": [{"weight": w, "matrix": <matrix>}, ...]}
json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const json& j);

// File helpers: read/parse failures and schema violations throw Error(Parse);
// validation failures of the decoded objects keep their own kinds.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace qent::io
