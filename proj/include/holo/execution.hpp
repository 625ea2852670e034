#pragma once

namespace holo {

/// Selects the OpenMP kernels or their serial reference versions.
enum class Execution { serial, parallel };

}  // namespace holo
