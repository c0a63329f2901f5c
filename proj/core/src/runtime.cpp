#include "pzk/runtime.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>
#include <vector>

namespace pzk {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    int workers = threads > 0 ? threads : 1;
    if (static_cast<std::size_t>(workers) > n) workers = static_cast<int>(n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        std::size_t lo = static_cast<std::size_t>(w) * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PZK_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

static std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("config file not readable: " + path);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) throw Error("config line without '=': " + t);
        file_.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
}

void RunConfig::set_env_defaults() {
    static const char* keys[] = {"threads", "tol"};
    for (const char* key : keys) {
        std::string env_name = "PZK_";
        for (const char* p = key; *p; ++p) env_name += static_cast<char>(std::toupper(*p));
        if (const char* v = std::getenv(env_name.c_str())) env_.emplace_back(key, v);
    }
}

void RunConfig::set_flag(const std::string& key, const std::string& value) {
    flags_.emplace_back(key, value);
}

std::optional<std::string> RunConfig::get(const std::string& key) const {
    for (auto layer : {&flags_, &env_, &file_}) {
        for (auto it = layer->rbegin(); it != layer->rend(); ++it)
            if (it->first == key) return it->second;
    }
    return std::nullopt;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
        return std::stod(*v);
    } catch (const std::exception&) {
        throw Error("config value for '" + key + "' is not a number: " + *v);
    }
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
        return std::stoi(*v);
    } catch (const std::exception&) {
        throw Error("config value for '" + key + "' is not an integer: " + *v);
    }
}

}  // namespace pzk
