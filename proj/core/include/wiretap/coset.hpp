#pragma once

#include <cstddef>
#include <vector>

#include "wiretap/clustering.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

// Coset coding over the learned clusters. Secure messages label clusters;
// the transmitted symbol is a uniform draw from the chosen cluster. The
// spent rate buys within-cluster randomness that confuses the eavesdropper.
struct CosetCode {
    ClusterAssignment assignment;
    std::vector<int> cluster_of_message;           // secure message -> cluster label
    std::vector<int> message_of_cluster;           // cluster label -> secure message
    std::vector<std::vector<int>> message_symbols; // secure message -> member symbols

    int secure_message_count() const { return assignment.cluster_count; }
    int symbols_per_message() const { return assignment.cluster_size; }
};

// Message labels are attached to clusters in ascending order of the cluster
// center's first coordinate (ties by the second, then by label).
CosetCode make_coset_code(const ClusterAssignment& assignment);

// A uniformly random member symbol of the message's cluster.
int encode_secure(const CosetCode& code, int secure_message, RngStream& rng);

// The secure message whose cluster contains the estimated symbol.
int decode_secure(const CosetCode& code, int symbol_estimate);

// log2(secure messages) / channel uses.
double secure_rate_bits_per_use(const CosetCode& code, std::size_t channel_uses);
double unsecured_rate_bits_per_use(std::size_t message_count, std::size_t channel_uses);

}  // namespace wiretap
