#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chemsim {

// Configuration / precondition problems: bad dimensions, invalid parameter
// ranges, malformed config files. Maps to exit code 4 in the CLI.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested time step exceeds the stability bound. Carries the refused dt
// and the bound so the caller can print a useful diagnostic.
class CflError : public std::runtime_error {
public:
    CflError(const std::string& msg, double dt, double bound)
        : std::runtime_error(msg), dt_requested(dt), dt_bound(bound) {}
    double dt_requested;
    double dt_bound;
};

// Non-finite values in a field are a hard error state, never silently carried.
class NumericsError : public std::runtime_error {
public:
    explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

// FNV-1a, used to stamp output files with a stable hash of the effective
// configuration. Stable across platforms, unlike std::hash.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_hex16(std::uint64_t v);

}  // namespace chemsim
