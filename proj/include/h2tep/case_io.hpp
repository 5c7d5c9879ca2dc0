#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "h2tep/grid_model.hpp"

namespace h2tep {

// Case documents carry powers in MW, capital costs in M$ and generator energy
// costs in $/MWh. In memory everything electrical is per-unit on mva_base and
// all costs are M$ (see data/case.schema.json).
inline constexpr double kDollarsPerMillion = 1e6;

// Parses and cross-checks a case document. Throws ParseError, ReferenceError
// or ShapeError.
NetworkCase parse_case(const nlohmann::json& doc);
NetworkCase load_case(const std::filesystem::path& path);

nlohmann::json case_to_json(const NetworkCase& grid);
void save_case(const NetworkCase& grid, const std::filesystem::path& path);

nlohmann::json profile_to_json(const Profile& profile, double scale = 1.0);

}  // namespace h2tep
