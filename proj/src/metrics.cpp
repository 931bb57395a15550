#include "relaysim/metrics.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>

namespace relaysim {

double mac_throughput_bps(const RunMetrics& m) {
    if (m.sim_duration_us == 0) {
        throw std::invalid_argument("mac_throughput over a zero-length run");
    }
    return static_cast<double>(m.delivered_payload_bits) /
           (static_cast<double>(m.sim_duration_us) / 1e6);
}

Ci95 aggregate_ci95(const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("aggregate_ci95 needs at least one value");
    }
    Ci95 out;
    const std::size_t n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(n);
    if (n == 1) return out;

    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    const double stddev = std::sqrt(ss / static_cast<double>(n - 1));
    boost::math::students_t dist(static_cast<double>(n - 1));
    const double t = boost::math::quantile(dist, 0.975);
    out.half_width = t * stddev / std::sqrt(static_cast<double>(n));
    return out;
}

}  // namespace relaysim
