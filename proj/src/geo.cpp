#include "latbgp/geo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latbgp {

namespace {
constexpr double kEarthRadiusKm = 6371.0088;
constexpr double kMsPerKm = 0.005; // 0.5 ms one-way per 100 km

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
} // namespace

bool geo_valid(const GeoPoint& p) {
    return std::isfinite(p.lat) && std::isfinite(p.lon) &&
           p.lat >= -90.0 && p.lat <= 90.0 &&
           p.lon >= -180.0 && p.lon <= 180.0;
}

double geodesic_km(const GeoPoint& p, const GeoPoint& q) {
    const double lat1 = deg2rad(p.lat);
    const double lat2 = deg2rad(q.lat);
    const double dlat = lat2 - lat1;
    const double dlon = deg2rad(q.lon - p.lon);

    const double sl = std::sin(dlat / 2.0);
    const double so = std::sin(dlon / 2.0);
    double a = sl * sl + std::cos(lat1) * std::cos(lat2) * so * so;
    if (a > 1.0) a = 1.0; // rounding can push a just past 1 near antipodes
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(a));
}

double link_latency_ms(double distance_km) {
    if (!(distance_km >= 0.0))
        throw std::invalid_argument("link_latency_ms: distance must be >= 0");
    return distance_km * kMsPerKm;
}

} // namespace latbgp
