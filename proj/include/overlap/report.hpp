#pragma once

// Line-oriented "key: value" reports. Keys may repeat (one line per list
// entry); numbers are written as exact rationals.

#include "overlap/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace overlap {

class Report {
public:
    void add(std::string key, std::string value);
    void add(std::string key, const Rational& value) { add(std::move(key), to_string(value)); }
    void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
    void add(std::string key, bool value) { add(std::move(key), std::string(value ? "yes" : "no")); }
    void add(std::string key, std::uint64_t value) { add(std::move(key), std::to_string(value)); }
    void add(std::string key, std::int64_t value) { add(std::move(key), std::to_string(value)); }
    void add(std::string key, int value) { add(std::move(key), std::to_string(value)); }

    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Parses report text back into entries; throws std::invalid_argument on a
/// line without ": ".
std::vector<std::pair<std::string, std::string>> parse_report(const std::string& text);

}  // namespace overlap
