#pragma once

#include <string>
#include <vector>

#include "wiretap/clustering.hpp"
#include "wiretap/eval.hpp"
#include "wiretap/model.hpp"
#include "wiretap/training.hpp"

namespace wiretap {

// Round-trip exact formatting (%.17g); identical doubles give identical text.
std::string format_double(double value);

// First line of every artifact: "# config_hash=<hex> seed=<n>".
std::string provenance_line(const std::string& config_hash, std::uint64_t seed);

void write_codebook_csv(const std::string& path, const Codebook& book, const std::string& config_hash,
                        std::uint64_t seed);

void write_cluster_csv(const std::string& path, const ClusterAssignment& assignment,
                       const std::string& config_hash, std::uint64_t seed);

void write_ser_csv(const std::string& path, const SerTable& table, const std::string& config_hash,
                   std::uint64_t seed);

void write_trace_csv(const std::string& path, const std::vector<LossTraceEntry>& trace,
                     const std::string& config_hash, std::uint64_t seed);

void write_decision_region_csv(const std::string& path, const DecisionRegionGrid& grid,
                               const std::string& config_hash, std::uint64_t seed);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace wiretap
