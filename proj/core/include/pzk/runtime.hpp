#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pzk {

inline constexpr const char* kVersion = "0.1.0";

// Domain failure (bad input, violated precondition, exhausted search).
// Maps to CLI exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A result exists but could not be certified (uncertified landing,
// inconclusive comparison).  Maps to CLI exit code 3.
class Inconclusive : public std::runtime_error {
public:
    explicit Inconclusive(const std::string& what) : std::runtime_error(what) {}
};

// Static block partition over [0, n).  Results must be written to
// preallocated slots indexed by i so the output is identical for every
// worker count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

// Number of workers: explicit argument beats PZK_THREADS beats 1.
int resolve_thread_count(int requested = 0);

// Key=value run configuration with the precedence CLI > environment
// (PZK_ prefix) > config file.
class RunConfig {
public:
    void load_file(const std::string& path);           // lowest precedence
    void set_env_defaults();                           // middle
    void set_flag(const std::string& key, const std::string& value);  // highest

    std::optional<std::string> get(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;

private:
    // later writes win within a layer; layers kept separate
    std::vector<std::pair<std::string, std::string>> file_, env_, flags_;
};

}  // namespace pzk
