#include "blocktrain/service/logging.hpp"

#include <spdlog/spdlog.h>

#include <cstdlib>
#include <string>

namespace blocktrain::service {

void init_logging() {
  const char* env = std::getenv("BLOCKTRAIN_LOG");
  if (!env || !*env) {
    spdlog::set_level(spdlog::level::info);
    return;
  }
  const std::string value = env;
  const auto level = spdlog::level::from_str(value);
  // from_str maps anything unrecognised to off.
  if (level == spdlog::level::off && value != "off") {
    spdlog::set_level(spdlog::level::info);
    spdlog::warn("unknown BLOCKTRAIN_LOG value '{}', using info", value);
    return;
  }
  spdlog::set_level(level);
}

}  // namespace blocktrain::service
