#pragma once

#include <json.hpp>

#include "brwa/algebra.hpp"
#include "brwa/model.hpp"
#include "brwa/oracle.hpp"

namespace brwa {

void to_json(nlohmann::ordered_json& j, const ModeParams& p);
void to_json(nlohmann::ordered_json& j, const DerivedParams& d);
void to_json(nlohmann::ordered_json& j, const AlgebraReport& r);
void to_json(nlohmann::ordered_json& j, const ChainReport& r);
void to_json(nlohmann::ordered_json& j, const TruncationDiagnostics& d);

}  // namespace brwa
