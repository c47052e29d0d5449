// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "cuntz/chern_symbolic.hpp"
#include "cuntz/distances.hpp"
#include "cuntz/functions.hpp"
#include "cuntz/lsc.hpp"
#include "cuntz/matrix_field.hpp"
#include "cuntz/morphism_path.hpp"
#include "cuntz/sphere_bundles.hpp"
#include "cuntz/suspension.hpp"

namespace cuntz {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.3.0";

/// Input error raised while decoding; `pointer` names the offending member.
struct SchemaError : InvalidInput {
  SchemaError(const std::string& pointer_, const std::string& what)
      : InvalidInput(pointer_ + ": " + what), pointer(pointer_) {}
  std::string pointer;
};

json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& where = "/");

json to_json(const PiecewiseLinear<double>& f);
PiecewiseLinear<double> piecewise_linear_from_json(const json& j, const std::string& where = "/");

json to_json(const LscStepFunction& f);
LscStepFunction step_function_from_json(const json& j, const std::string& where = "/");

/// Kind, resolution and the full list of point coordinates (plus t samples for products).
json to_json(const BaseSpace& s);
/// Rebuilds the mesh from kind and resolution and checks it against the embedded coordinates.
SpacePtr space_from_json(const json& j, const std::string& where = "/space");

json to_json(const MatrixField& f);
MatrixField field_from_json(const json& j);

json to_json(const MorphismPath<std::vector<int>>& p, const BaseSpace& space);
/// Path file: {"space": ..., "grid": [...], "images": [[...], ...]}.
std::pair<SpacePtr, MorphismPath<std::vector<int>>> path_from_json(const json& j);

json to_json(const DistanceInterval& d);
json to_json(const DwResult& r);
json to_json(const SandwichReport& r);
json to_json(const SphereReport& r);
json to_json(const VilladsenStage& s);
json to_json(const SuspensionResult& r);

struct ReportMeta {
  std::string command;
  double grid = 0;
  double tau = kRankTolerance;
  std::vector<std::pair<std::string, json>> extra;
};

/// Wraps a payload with the tool version, tolerances and the g_ε convention. No timestamps.
json make_report(const ReportMeta& meta, json payload);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string dump(const json& j);

std::string verdict_csv(const std::vector<VerdictRow>& rows);
std::string eigen_branch_csv(const MatrixField& a, const std::string& label);

}  // namespace cuntz
