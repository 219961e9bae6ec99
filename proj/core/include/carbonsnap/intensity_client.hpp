#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "carbonsnap/intensity.hpp"
#include "carbonsnap/time.hpp"

namespace carbonsnap {

struct HttpResponse {
    int status = 0;
    std::string body;
};

// Blocking GET. Implementations throw NetworkError when no response was
// received; any response, whatever its status, is returned.
class Transport {
public:
    virtual ~Transport() = default;
    virtual HttpResponse get(const std::string& url) = 0;
};

// cpp-httplib backed transport. https needs the library built with OpenSSL.
std::shared_ptr<Transport> make_http_transport(std::chrono::seconds timeout = std::chrono::seconds(30));

inline constexpr const char* default_intensity_endpoint = "https://api.carbonintensity.org.uk";

struct FetchOptions {
    // Total tries per request, including the first.
    int attempts = 3;
    // Wait before retry k is initial_backoff * 2^(k-1).
    std::chrono::milliseconds initial_backoff{1000};
    // Replaceable for tests.
    std::function<void(std::chrono::milliseconds)> sleep;
    // Bounded number of chunk requests in flight at once.
    std::size_t max_in_flight = 4;
    // Longest range requested in one call.
    std::chrono::milliseconds max_chunk = std::chrono::hours(24 * 31);
    // When set, raw response bodies are stored here keyed by
    // (endpoint, range) and served on later calls without touching the network.
    std::optional<std::filesystem::path> cache_dir;
};

/// Client for the national half-hourly carbon intensity API
/// (`GET {endpoint}/intensity/{from}/{to}`).
class IntensityClient {
public:
    IntensityClient(std::shared_ptr<Transport> transport, FetchOptions options = {});

    // Splits `range` into chunks, fetches them (concurrently, bounded), and
    // assembles one series clipped to periods that intersect `range`.
    // Errors: NetworkError after retries are exhausted or on a non-retryable
    // status; ParseError for malformed payloads.
    IntensitySeries fetch(const SnapshotPeriod& range, const std::string& endpoint) const;

    static std::string request_url(const std::string& endpoint, const SnapshotPeriod& chunk);
    std::filesystem::path cache_path(const std::string& endpoint, const SnapshotPeriod& chunk) const;

private:
    std::string fetch_body(const std::string& url) const;
    IntensitySeries fetch_chunk(const std::string& endpoint, const SnapshotPeriod& chunk) const;

    std::shared_ptr<Transport> transport_;
    FetchOptions options_;
};

// Convenience: HTTP transport with default options plus an optional cache.
IntensitySeries fetch_intensity(const SnapshotPeriod& range, const std::string& endpoint,
                                std::optional<std::filesystem::path> cache_dir = std::nullopt);

}  // namespace carbonsnap
