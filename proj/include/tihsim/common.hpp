#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tihsim {

using boost::multiprecision::cpp_int;

// Library-wide error type. Precondition violations and malformed inputs throw this.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw error(msg);
}

// Cycle length of the two-track clock: p(N) = 4(N-2)(2N-3).
inline cpp_int clock_period(const cpp_int& n) {
    require(n >= 4, "clock_period: N must be >= 4");
    return 4 * (n - 2) * (2 * n - 3);
}

inline std::int64_t clock_period_i64(std::int64_t n) {
    require(n >= 4, "clock_period: N must be >= 4");
    return 4 * (n - 2) * (2 * n - 3);
}

// FNV-1a, used for content-addressed cache keys and input digests.
inline std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string fnv1a_hex(const std::string& data) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace tihsim
