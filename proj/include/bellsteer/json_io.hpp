#pragma once

#include <json.hpp>

#include "bellsteer/bloch.hpp"
#include "bellsteer/classify.hpp"
#include "bellsteer/critical_radius.hpp"
#include "bellsteer/lhs_model.hpp"

// JSON wire formats.  Field names are part of the external contract:
//   CorrelationMatrix  {"t": [[..],[..],[..]]}
//   Povm               {"effects": [{"alpha": .., "e": [..]}, ...]}
//   FourVector         {"x0": .., "x": [..]}
namespace bellsteer {

void to_json(nlohmann::json& j, const FourVector& v);
void from_json(const nlohmann::json& j, FourVector& v);

void to_json(nlohmann::json& j, const CorrelationMatrix& t);
CorrelationMatrix correlation_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const Effect& e);
void from_json(const nlohmann::json& j, Effect& e);

void to_json(nlohmann::json& j, const Povm& p);
void from_json(const nlohmann::json& j, Povm& p);

void to_json(nlohmann::json& j, const RadiusResult& r);

void to_json(nlohmann::json& j, const SimulationReport& r);

void to_json(nlohmann::json& j, const Classification& c);

void to_json(nlohmann::json& j, const SurfacePoint& p);
void to_json(nlohmann::json& j, const SurfaceResult& r);

}  // namespace bellsteer
