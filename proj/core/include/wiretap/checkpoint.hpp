#pragma once

#include <string>

#include "wiretap/clustering.hpp"
#include "wiretap/config.hpp"
#include "wiretap/model.hpp"

namespace wiretap {

inline constexpr int kCheckpointFormatVersion = 1;

// Self-describing training artifact. Holds both the pre-security snapshot
// (after phase 2) and the final model, so "before secure coding" curves
// never need retraining.
struct Checkpoint {
    int format_version = kCheckpointFormatVersion;
    RunConfig config;
    std::uint64_t seed = 0;
    WiretapModel pre_security;
    WiretapModel final_model;
    ClusterAssignment clusters;

    std::string hash() const { return config_hash(config); }
};

void save_checkpoint(const Checkpoint& checkpoint, const std::string& path);

// IoError on unreadable files, ParamError on malformed or version-mismatched
// content.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace wiretap
