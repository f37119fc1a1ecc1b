#pragma once

namespace latbgp {

/// A point on the globe in decimal degrees.
struct GeoPoint {
    double lat = 0.0; // [-90, 90]
    double lon = 0.0; // [-180, 180]
    bool operator==(const GeoPoint&) const = default;
};

bool geo_valid(const GeoPoint& p);

/// Great-circle distance in kilometers between two points (haversine,
/// mean Earth radius 6371.0088 km).
double geodesic_km(const GeoPoint& p, const GeoPoint& q);

/// One-way propagation latency across a span of fiber: 0.5 ms per 100 km.
double link_latency_ms(double distance_km);

} // namespace latbgp
