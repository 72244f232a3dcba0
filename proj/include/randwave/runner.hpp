#pragma once

#include "randwave/io.hpp"

namespace randwave {

inline constexpr const char* kArtifactVersion = "randwave 0.1.0";

// Dispatches the configured experiment, writes its CSV/JSON artifacts and
// snapshots under cfg.out_dir and finishes with an atomically written
// manifest.  Throws on hard errors; tolerance failures are recorded in the
// manifest instead.
RunManifest run(const RunConfig& cfg);

}  // namespace randwave
