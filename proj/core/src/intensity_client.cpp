#include "carbonsnap/intensity_client.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "carbonsnap/error.hpp"

namespace carbonsnap {

namespace {

std::vector<SnapshotPeriod> split_range(const SnapshotPeriod& range, std::chrono::milliseconds max_chunk) {
    if (max_chunk <= std::chrono::milliseconds(0)) throw ValidationError("max_chunk must be positive");
    std::vector<SnapshotPeriod> chunks;
    Timestamp cursor = range.start();
    while (cursor < range.end()) {
        const Timestamp stop = std::min(range.end(), cursor + max_chunk);
        chunks.emplace_back(cursor, stop);
        cursor = stop;
    }
    return chunks;
}

bool retryable(int status) { return status == 408 || status == 429 || status >= 500; }

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomically(const std::filesystem::path& path, const std::string& body) {
    std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << body;
        if (!out) throw Error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

IntensityClient::IntensityClient(std::shared_ptr<Transport> transport, FetchOptions options)
    : transport_(std::move(transport)), options_(std::move(options)) {
    if (!transport_) throw ValidationError("intensity client needs a transport");
    if (options_.attempts < 1) throw ValidationError("attempts must be >= 1");
    if (options_.max_in_flight < 1) throw ValidationError("max_in_flight must be >= 1");
    if (!options_.sleep) options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::string IntensityClient::request_url(const std::string& endpoint, const SnapshotPeriod& chunk) {
    std::string base = endpoint;
    while (!base.empty() && base.back() == '/') base.pop_back();
    return base + "/intensity/" + format_timestamp_minutes(chunk.start()) + "/" +
           format_timestamp_minutes(chunk.end());
}

std::filesystem::path IntensityClient::cache_path(const std::string& endpoint, const SnapshotPeriod& chunk) const {
    if (!options_.cache_dir) throw ValidationError("no cache directory configured");
    std::string key;
    for (char c : endpoint) key += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    key += "__" + format_timestamp(chunk.start()) + "__" + format_timestamp(chunk.end());
    for (char& c : key)
        if (c == ':') c = '-';
    return *options_.cache_dir / (key + ".json");
}

std::string IntensityClient::fetch_body(const std::string& url) const {
    std::string last_error;
    for (int attempt = 1; attempt <= options_.attempts; ++attempt) {
        if (attempt > 1) options_.sleep(options_.initial_backoff * (1LL << (attempt - 2)));
        try {
            HttpResponse response = transport_->get(url);
            if (response.status >= 200 && response.status < 300) return std::move(response.body);
            last_error = "HTTP status " + std::to_string(response.status) + " from " + url;
            if (!retryable(response.status)) throw NetworkError(last_error, response.status);
            if (attempt == options_.attempts)
                throw NetworkError(last_error + " after " + std::to_string(attempt) + " attempts", response.status);
        } catch (const NetworkError& e) {
            if (e.status() != 0) throw;
            last_error = e.what();
        }
    }
    throw NetworkError("GET " + url + " failed after " + std::to_string(options_.attempts) + " attempts: " + last_error);
}

IntensitySeries IntensityClient::fetch_chunk(const std::string& endpoint, const SnapshotPeriod& chunk) const {
    const std::string url = request_url(endpoint, chunk);
    if (options_.cache_dir) {
        const auto path = cache_path(endpoint, chunk);
        if (std::filesystem::exists(path)) {
            try {
                return parse_intensity_json(slurp(path), path.string());
            } catch (const ParseError&) {
                // unreadable cache entry; fetch again and overwrite
            }
        }
        std::string body = fetch_body(url);
        IntensitySeries series = parse_intensity_json(body, url);
        write_atomically(path, body);
        return series;
    }
    return parse_intensity_json(fetch_body(url), url);
}

IntensitySeries IntensityClient::fetch(const SnapshotPeriod& range, const std::string& endpoint) const {
    const std::vector<SnapshotPeriod> chunks = split_range(range, options_.max_chunk);
    std::vector<IntensitySeries> results(chunks.size());
    std::vector<std::exception_ptr> errors(chunks.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < chunks.size(); i = next++) {
            try {
                results[i] = fetch_chunk(endpoint, chunks[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::min(options_.max_in_flight, chunks.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<IntensityPeriod> merged;
    for (const auto& series : results) {
        for (const auto& p : series.periods()) {
            if (!(p.to > range.start() && p.from < range.end())) continue;
            const bool duplicate = std::any_of(merged.rbegin(), merged.rend(), [&](const IntensityPeriod& q) {
                return q.from == p.from && q.to == p.to;
            });
            if (!duplicate) merged.push_back(p);
        }
    }
    return IntensitySeries(std::move(merged));
}

IntensitySeries fetch_intensity(const SnapshotPeriod& range, const std::string& endpoint,
                                std::optional<std::filesystem::path> cache_dir) {
    FetchOptions options;
    options.cache_dir = std::move(cache_dir);
    return IntensityClient(make_http_transport(), options).fetch(range, endpoint);
}

}  // namespace carbonsnap
