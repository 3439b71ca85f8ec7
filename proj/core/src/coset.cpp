#include "wiretap/coset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wiretap/errors.hpp"

namespace wiretap {

CosetCode make_coset_code(const ClusterAssignment& assignment) {
    if (assignment.cluster_count <= 0 || assignment.labels.empty())
        throw ParamError("make_coset_code: empty cluster assignment");

    CosetCode code;
    code.assignment = assignment;

    std::vector<int> order(static_cast<std::size_t>(assignment.cluster_count));
    std::iota(order.begin(), order.end(), 0);
    const Matrix& centers = assignment.centers;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto ra = static_cast<std::size_t>(a);
        const auto rb = static_cast<std::size_t>(b);
        for (std::size_t c = 0; c < centers.cols(); ++c) {
            if (centers(ra, c) != centers(rb, c)) return centers(ra, c) < centers(rb, c);
        }
        return a < b;
    });

    code.cluster_of_message = order;
    code.message_of_cluster.assign(order.size(), 0);
    for (std::size_t m = 0; m < order.size(); ++m)
        code.message_of_cluster[static_cast<std::size_t>(order[m])] = static_cast<int>(m);

    code.message_symbols.assign(order.size(), {});
    for (std::size_t sym = 0; sym < assignment.labels.size(); ++sym) {
        const int msg = code.message_of_cluster[static_cast<std::size_t>(assignment.labels[sym])];
        code.message_symbols[static_cast<std::size_t>(msg)].push_back(static_cast<int>(sym));
    }
    return code;
}

int encode_secure(const CosetCode& code, int secure_message, RngStream& rng) {
    if (secure_message < 0 || secure_message >= code.secure_message_count())
        throw ParamError("encode_secure: secure message " + std::to_string(secure_message) + " out of range");
    const auto& members = code.message_symbols[static_cast<std::size_t>(secure_message)];
    return members[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(members.size())))];
}

int decode_secure(const CosetCode& code, int symbol_estimate) {
    if (symbol_estimate < 0 || static_cast<std::size_t>(symbol_estimate) >= code.assignment.labels.size())
        throw ParamError("decode_secure: symbol " + std::to_string(symbol_estimate) + " out of range");
    return code.message_of_cluster[static_cast<std::size_t>(
        code.assignment.labels[static_cast<std::size_t>(symbol_estimate)])];
}

double secure_rate_bits_per_use(const CosetCode& code, std::size_t channel_uses) {
    return std::log2(static_cast<double>(code.secure_message_count())) / static_cast<double>(channel_uses);
}

double unsecured_rate_bits_per_use(std::size_t message_count, std::size_t channel_uses) {
    return std::log2(static_cast<double>(message_count)) / static_cast<double>(channel_uses);
}

}  // namespace wiretap
