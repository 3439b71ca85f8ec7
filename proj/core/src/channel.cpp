#include "wiretap/channel.hpp"

#include <cmath>

#include "wiretap/errors.hpp"

namespace wiretap {

double snr_db_to_variance(double snr_db) {
    if (!std::isfinite(snr_db)) throw ParamError("snr_db_to_variance: non-finite SNR");
    return 1.0 / std::pow(10.0, snr_db / 10.0);
}

double ChannelParams::bob_variance() const { return snr_db_to_variance(bob_snr_db); }
double ChannelParams::eve_extra_variance() const { return snr_db_to_variance(eve_extra_snr_db); }

namespace {
Matrix add_awgn(const Matrix& x, double variance, RngStream& rng, const char* who) {
    if (!(variance > 0.0)) throw ParamError(std::string(who) + ": variance must be positive");
    const double sigma = std::sqrt(variance);
    Matrix out = x;
    for (double& v : out.storage()) v += sigma * rng.gaussian();
    return out;
}
}  // namespace

Matrix bob_channel(const Matrix& x, double variance, RngStream& rng) {
    return add_awgn(x, variance, rng, "bob_channel");
}

Matrix eve_channel(const Matrix& y, double variance, RngStream& rng) {
    return add_awgn(y, variance, rng, "eve_channel");
}

}  // namespace wiretap
