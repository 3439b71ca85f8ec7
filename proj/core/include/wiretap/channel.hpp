#pragma once

#include "wiretap/matrix.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

// Noise configuration for the two-stage degraded channel. The eavesdropper
// observes the legitimate output plus an independent second noise stage, so
// her total noise variance is bob_variance() + eve_extra_variance().
struct ChannelParams {
    double bob_snr_db = 12.0;
    double eve_extra_snr_db = 5.0;

    double bob_variance() const;
    double eve_extra_variance() const;
};

// variance = 1 / 10^(snr_db / 10)
double snr_db_to_variance(double snr_db);

// y = x + N(0, variance), i.i.d. per coordinate. Additive noise is treated
// as a constant during backprop, so the layer is gradient-transparent.
Matrix bob_channel(const Matrix& x, double variance, RngStream& rng);

// z = y + N(0, variance), applied to the legitimate channel output.
Matrix eve_channel(const Matrix& y, double variance, RngStream& rng);

}  // namespace wiretap
