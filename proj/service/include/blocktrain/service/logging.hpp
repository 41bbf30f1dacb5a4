#pragma once

namespace blocktrain::service {

/// Sets the spdlog level from BLOCKTRAIN_LOG (trace, debug, info, warn,
/// error, critical, off). Unset means info; an unknown value means info
/// plus a warning.
void init_logging();

}  // namespace blocktrain::service
