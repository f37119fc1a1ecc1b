#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "latbgp/geo.hpp"

using namespace latbgp;

namespace {

// Independent reference implementation (atan2 formulation) used as the
// oracle for the production haversine.
double reference_haversine_km(GeoPoint p, GeoPoint q) {
    const double rad = std::numbers::pi / 180.0;
    const double lat1 = p.lat * rad, lat2 = q.lat * rad;
    const double dlat = (q.lat - p.lat) * rad;
    const double dlon = (q.lon - p.lon) * rad;
    const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                     std::cos(lat1) * std::cos(lat2) * std::sin(dlon / 2) * std::sin(dlon / 2);
    const double c = 2 * std::atan2(std::sqrt(a), std::sqrt(1 - a));
    return 6371.0088 * c;
}

GeoPoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> lat(-90.0, 90.0);
    std::uniform_real_distribution<double> lon(-180.0, 180.0);
    return GeoPoint{lat(rng), lon(rng)};
}

} // namespace

TEST_CASE("geodesic_km point examples") {
    CHECK(geodesic_km({0, 0}, {0, 0}) == 0.0);
    // antipodal points sit half a circumference apart
    CHECK(geodesic_km({0, 0}, {0, 180}) ==
          doctest::Approx(std::numbers::pi * 6371.0088).epsilon(1e-12));
    // New York City to London, frozen from an independent implementation
    CHECK(geodesic_km({40.7128, -74.0060}, {51.5074, -0.1278}) ==
          doctest::Approx(5570.229873656523).epsilon(1e-12));
}

TEST_CASE("geodesic_km matches the reference implementation") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 2000; ++i) {
        GeoPoint p = random_point(rng), q = random_point(rng);
        CHECK(geodesic_km(p, q) == doctest::Approx(reference_haversine_km(p, q)).epsilon(1e-9));
    }
}

TEST_CASE("geodesic_km symmetry, positivity, triangle inequality") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        GeoPoint a = random_point(rng), b = random_point(rng), c = random_point(rng);
        double ab = geodesic_km(a, b);
        CHECK(ab == geodesic_km(b, a));
        CHECK(ab >= 0.0);
        CHECK(geodesic_km(a, a) == 0.0);
        CHECK(ab <= geodesic_km(a, c) + geodesic_km(c, b) + 1e-6);
    }
}

TEST_CASE("link_latency_ms examples") {
    CHECK(link_latency_ms(100.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(link_latency_ms(200.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(link_latency_ms(0.0) == 0.0);
    CHECK_THROWS(link_latency_ms(-1.0));
}

TEST_CASE("link_latency_ms is linear") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> d(0.0, 20015.0);
    for (int i = 0; i < 10000; ++i) {
        double x = d(rng), y = d(rng);
        double lhs = link_latency_ms(x + y);
        double rhs = link_latency_ms(x) + link_latency_ms(y);
        // linear up to one rounding step of the scaling factor
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("geo_valid rejects out-of-range points") {
    CHECK(geo_valid({0, 0}));
    CHECK(geo_valid({-90, 180}));
    CHECK_FALSE(geo_valid({90.01, 0}));
    CHECK_FALSE(geo_valid({0, -180.5}));
    CHECK_FALSE(geo_valid({std::nan(""), 0}));
}
