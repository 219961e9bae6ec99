#include <httplib.h>

#include "carbonsnap/error.hpp"
#include "carbonsnap/intensity_client.hpp"

namespace carbonsnap {

namespace {

class HttplibTransport final : public Transport {
public:
    explicit HttplibTransport(std::chrono::seconds timeout) : timeout_(timeout) {}

    HttpResponse get(const std::string& url) override {
        const auto scheme_end = url.find("://");
        if (scheme_end == std::string::npos) throw NetworkError("not an absolute URL: " + url);
        const auto path_start = url.find('/', scheme_end + 3);
        const std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
        const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

        httplib::Client client(origin);
        client.set_connection_timeout(timeout_);
        client.set_read_timeout(timeout_);
        client.set_follow_location(true);
        auto result = client.Get(path, httplib::Headers{{"Accept", "application/json"}});
        if (!result) throw NetworkError("GET " + url + ": " + httplib::to_string(result.error()));
        return HttpResponse{result->status, result->body};
    }

private:
    std::chrono::seconds timeout_;
};

}  // namespace

std::shared_ptr<Transport> make_http_transport(std::chrono::seconds timeout) {
    return std::make_shared<HttplibTransport>(timeout);
}

}  // namespace carbonsnap
