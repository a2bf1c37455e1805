#ifndef NETGA_CSV_HPP
#define NETGA_CSV_HPP

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>

namespace netga {

/// Shortest round-trip decimal representation of a double. Locale-independent
/// and byte-stable, which the reproducibility contract for CSV output relies on.
inline std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string format_u64(std::uint64_t value) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string format_optional(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string("nan");
}

}  // namespace netga

#endif
