#pragma once

#include <optional>

namespace swarm_svr {

/// Sets the OpenMP thread count from `requested`, else from the
/// SWARM_SVR_THREADS environment variable. 0 or unset keeps the OpenMP
/// default. Returns the effective maximum thread count.
int configure_threads(std::optional<int> requested = std::nullopt);

}  // namespace swarm_svr
