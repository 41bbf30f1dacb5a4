#pragma once

// JSON shapes shared by snapshots, ledger files, config files and the wire
// protocol. Objects are emitted with sorted keys (nlohmann::json's default),
// so dump() of any of these is canonical.

#include <nlohmann/json.hpp>
#include <string>

#include "blocktrain/chain.hpp"
#include "blocktrain/config.hpp"
#include "blocktrain/rules.hpp"

namespace blocktrain {

inline constexpr const char* kStateVersion = "state_v1";

void to_json(nlohmann::json& j, SupplyKind kind);
void from_json(const nlohmann::json& j, SupplyKind& kind);

void to_json(nlohmann::json& j, const SupplyCard& card);
void from_json(const nlohmann::json& j, SupplyCard& card);
void to_json(nlohmann::json& j, const ValidationCard& card);
void from_json(const nlohmann::json& j, ValidationCard& card);
void to_json(nlohmann::json& j, const WagonBoard& board);
void from_json(const nlohmann::json& j, WagonBoard& board);

/// Config files may omit any field; missing fields take their defaults and
/// a missing wagon_set is generated from slots_per_wagon/target_wagons.
void to_json(nlohmann::json& j, const GameConfig& config);
void from_json(const nlohmann::json& j, GameConfig& config);

/// {"type": "PlaySupply", "card_id": 3}, {"type": "DrawSupply"}, ...
void to_json(nlohmann::json& j, const Action& action);
void from_json(const nlohmann::json& j, Action& action);

/// One ledger_v1 line: exactly the Block fields.
void to_json(nlohmann::json& j, const Block& block);
void from_json(const nlohmann::json& j, Block& block);
void to_json(nlohmann::json& j, const Chain& chain);
void from_json(const nlohmann::json& j, Chain& chain);

void to_json(nlohmann::json& j, const ViewState& view);

nlohmann::json state_to_json(const GameState& state);
/// Throws MalformedState.
GameState state_from_json(const nlohmann::json& j);

/// state_to_json(state).dump(): the byte string used for equality checks.
std::string canonical_state(const GameState& state);

}  // namespace blocktrain
