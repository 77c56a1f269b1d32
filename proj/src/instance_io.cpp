#include "overlap/instance_io.hpp"

#include "overlap/random.hpp"

#include <fstream>
#include <sstream>

namespace overlap {

AffineInstance InstanceFile::to_instance() const
{
    if (weights) return AffineInstance(points, VertexDistribution(*weights));
    return AffineInstance(points);
}

std::string write_instance(const InstanceFile& file)
{
    std::ostringstream out;
    out << "version 1\n";
    out << "n " << file.points.size() << '\n';
    if (file.seed) out << "seed " << *file.seed << '\n';
    for (std::size_t i = 0; i < file.points.size(); ++i)
        out << "point " << i << ' ' << to_string(file.points[i].x) << ' ' << to_string(file.points[i].y) << '\n';
    if (file.weights) {
        for (std::size_t i = 0; i < file.weights->size(); ++i)
            out << "weight " << i << ' ' << to_string((*file.weights)[i]) << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string_view> split_words(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::uint64_t parse_count(std::string_view s, const std::string& what)
{
    if (s.empty() || s.size() > 19) throw InstanceFormatError("bad " + what + ": '" + std::string(s) + "'");
    std::uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw InstanceFormatError("bad " + what + ": '" + std::string(s) + "'");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

Rational parse_value(std::string_view s, std::size_t line_no)
{
    try {
        return parse_rational(s);
    } catch (const std::invalid_argument& e) {
        throw InstanceFormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
}

}  // namespace

InstanceFile parse_instance(std::string_view text)
{
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        lines.push_back(text.substr(0, nl));
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    std::size_t at = 0;
    auto next = [&](const char* expected) {
        if (at >= lines.size()) throw InstanceFormatError(std::string("missing ") + expected + " line");
        auto words = split_words(lines[at]);
        if (words.empty() || words[0] != expected)
            throw InstanceFormatError("line " + std::to_string(at + 1) + ": expected '" + expected + "'");
        ++at;
        return words;
    };

    auto version = next("version");
    if (version.size() != 2 || version[1] != "1") throw InstanceFormatError("unsupported version");
    auto count = next("n");
    if (count.size() != 2) throw InstanceFormatError("line 2: expected 'n <count>'");
    const std::uint64_t n = parse_count(count[1], "vertex count");
    if (n < 3) throw InstanceFormatError("an instance needs at least 3 points");
    if (n > 100000) throw InstanceFormatError("vertex count too large");

    InstanceFile file;
    if (at < lines.size() && !split_words(lines[at]).empty() && split_words(lines[at])[0] == "seed") {
        auto seed = next("seed");
        if (seed.size() != 2) throw InstanceFormatError("expected 'seed <value>'");
        file.seed = parse_count(seed[1], "seed");
    }
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::size_t line_no = at + 1;
        auto words = next("point");
        if (words.size() != 4 || parse_count(words[1], "point index") != i)
            throw InstanceFormatError("line " + std::to_string(line_no) + ": expected 'point " + std::to_string(i) +
                                      " <x> <y>'");
        file.points.push_back({parse_value(words[2], line_no), parse_value(words[3], line_no)});
    }
    if (at < lines.size() && !split_words(lines[at]).empty()) {
        std::vector<Rational> weights;
        for (std::uint64_t i = 0; i < n; ++i) {
            const std::size_t line_no = at + 1;
            auto words = next("weight");
            if (words.size() != 3 || parse_count(words[1], "weight index") != i)
                throw InstanceFormatError("line " + std::to_string(line_no) + ": expected 'weight " +
                                          std::to_string(i) + " <w>'");
            weights.push_back(parse_value(words[2], line_no));
        }
        file.weights = std::move(weights);
    }
    for (; at < lines.size(); ++at)
        if (!split_words(lines[at]).empty())
            throw InstanceFormatError("line " + std::to_string(at + 1) + ": unexpected content");
    return file;
}

InstanceFile read_instance_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InstanceFormatError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::vector<Rational> random_weights(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(mix_seed(seed, 2));
    std::vector<std::int64_t> raw(n);
    std::int64_t total = 0;
    for (auto& w : raw) {
        w = uniform_between(rng, 1, 100);
        total += w;
    }
    std::vector<Rational> out;
    out.reserve(n);
    for (auto w : raw) out.push_back(make_rational(w, total));
    return out;
}

InstanceFile generate_instance(std::size_t n, std::uint64_t seed, WeightMode mode)
{
    if (n < 3) throw std::invalid_argument("an instance needs at least 3 points");
    std::mt19937_64 rng(mix_seed(seed, 1));
    InstanceFile file;
    file.seed = seed;
    while (file.points.size() < n) {
        const RationalPoint p{make_rational(uniform_between(rng, -1024, 1024), 1024),
                              make_rational(uniform_between(rng, -1024, 1024), 1024)};
        bool generic = true;
        const auto& pts = file.points;
        for (std::size_t i = 0; i < pts.size() && generic; ++i) {
            if (pts[i] == p) generic = false;
            for (std::size_t j = i + 1; j < pts.size() && generic; ++j)
                if (orientation(pts[i], pts[j], p) == Orientation::Collinear) generic = false;
        }
        if (generic) file.points.push_back(p);
    }
    if (mode == WeightMode::Random) file.weights = random_weights(n, seed);
    return file;
}

}  // namespace overlap
