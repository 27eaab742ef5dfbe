#pragma once

#include <string>

#include "json.hpp"
#include "trinerve/simplicial.hpp"

namespace trinerve {

nlohmann::json ssx_to_json(const TruncSSet& X);
TruncSSet ssx_from_json(const nlohmann::json& j);

std::string write_ssx(const TruncSSet& X);
TruncSSet read_ssx(const std::string& text);

void save_ssx(const TruncSSet& X, const std::string& path);
TruncSSet load_ssx(const std::string& path);

}  // namespace trinerve
