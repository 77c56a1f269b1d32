#include "overlap/report.hpp"

#include <sstream>
#include <stdexcept>

namespace overlap {

void Report::add(std::string key, std::string value)
{
    if (key.find(':') != std::string::npos || key.find('\n') != std::string::npos ||
        value.find('\n') != std::string::npos)
        throw std::invalid_argument("report entries must be single-line and keys must not contain ':'");
    entries_.emplace_back(std::move(key), std::move(value));
}

std::string Report::str() const
{
    std::ostringstream out;
    for (const auto& [k, v] : entries_) out << k << ": " << v << '\n';
    return out.str();
}

std::vector<std::pair<std::string, std::string>> parse_report(const std::string& text)
{
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto sep = line.find(": ");
        if (sep == std::string::npos) throw std::invalid_argument("not a report line: '" + line + "'");
        out.emplace_back(line.substr(0, sep), line.substr(sep + 2));
    }
    return out;
}

}  // namespace overlap
