#pragma once

namespace treewalk {

/// Kernel execution policy. Serial variants are the reference
/// implementations; Parallel variants must produce identical results.
enum class Exec { Serial, Parallel };

}  // namespace treewalk
