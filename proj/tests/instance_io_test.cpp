#include "overlap/instance_io.hpp"
#include "overlap/report.hpp"

#include "fixtures.hpp"

#include <doctest.h>

using namespace overlap;

TEST_SUITE("instance_io") {

TEST_CASE("rationals")
{
    CHECK(to_string(make_rational(6, -4)) == "-3/2");
    CHECK(to_string(Rational(5)) == "5/1");
    CHECK(parse_rational("-3/2") == Rational(-3, 2));
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational("4/6") == Rational(2, 3));
    for (const char* bad : {"", "1/0", "1/", "/2", "a", "1.5", "1/-2", "--1", " 1"})
        CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
}

TEST_CASE("generated instances are generic and deterministic")
{
    const InstanceFile a = generate_instance(5, 7, WeightMode::Uniform);
    const InstanceFile b = generate_instance(5, 7, WeightMode::Uniform);
    CHECK(write_instance(a) == write_instance(b));
    CHECK(a.points.size() == 5);
    CHECK_FALSE(a.weights.has_value());
    CHECK(a.seed == std::uint64_t{7});
    CHECK_NOTHROW(a.to_instance());
    CHECK(write_instance(generate_instance(5, 8, WeightMode::Uniform)) != write_instance(a));

    const InstanceFile w = generate_instance(30, 1, WeightMode::Random);
    REQUIRE(w.weights.has_value());
    Rational total = 0;
    for (const auto& x : *w.weights) total += x;
    CHECK(total == 1);
    CHECK_FALSE(w.to_instance().distribution().is_uniform());
}

TEST_CASE("round trip is byte identical")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const InstanceFile f = generate_instance(3 + seed % 9, seed, seed % 2 ? WeightMode::Random : WeightMode::Uniform);
        const std::string text = write_instance(f);
        const InstanceFile back = parse_instance(text);
        CHECK(back == f);
        CHECK(write_instance(back) == text);
    }
}

TEST_CASE("hand written file")
{
    const std::string text = "version 1\nn 3\npoint 0 0 0\npoint 1 1/2 0\npoint 2 0 2/4\n\n";
    const InstanceFile f = parse_instance(text);
    CHECK(f.points[2].y == Rational(1, 2));
    CHECK_FALSE(f.seed.has_value());
    CHECK(write_instance(f) == "version 1\nn 3\npoint 0 0/1 0/1\npoint 1 1/2 0/1\npoint 2 0/1 1/2\n");
}

TEST_CASE("malformed files are rejected")
{
    const char* bad[] = {
        "",
        "version 2\nn 3\n",
        "version 1\nn 2\npoint 0 0 0\npoint 1 1 0\n",
        "version 1\nn 3\npoint 0 0 0\npoint 1 1 0\n",
        "version 1\nn 3\npoint 0 0 0\npoint 2 1 0\npoint 1 0 1\n",
        "version 1\nn 3\npoint 0 0 0\npoint 1 1 0\npoint 2 0 1/0\n",
        "version 1\nn 3\npoint 0 0 0\npoint 1 1 0\npoint 2 0 1\nweight 0 1/2\n",
        "version 1\nn 3\npoint 0 0 0\npoint 1 1 0\npoint 2 0 1\ntrailing\n",
        "version 1\nn x\n",
    };
    for (const char* text : bad) CHECK_THROWS_AS(parse_instance(text), InstanceFormatError);
}

TEST_CASE("semantic errors surface on conversion")
{
    const InstanceFile collinear = parse_instance("version 1\nn 3\npoint 0 0 0\npoint 1 1 1\npoint 2 2 2\n");
    CHECK_THROWS_AS(collinear.to_instance(), DegenerateInstance);
    const InstanceFile heavy = parse_instance(
        "version 1\nn 3\npoint 0 0 0\npoint 1 1 0\npoint 2 0 1\nweight 0 1/2\nweight 1 1/2\nweight 2 1/2\n");
    CHECK_THROWS_AS(heavy.to_instance(), std::invalid_argument);
}

TEST_CASE("reports")
{
    Report r;
    r.add("value", Rational(1, 3));
    r.add("flag", true);
    r.add("count", std::uint64_t{12});
    r.add("mu", "1/2 0/1 1/1");
    CHECK(r.str() == "value: 1/3\nflag: yes\ncount: 12\nmu: 1/2 0/1 1/1\n");
    const auto back = parse_report(r.str());
    REQUIRE(back.size() == 4);
    CHECK(back[3].second == "1/2 0/1 1/1");
    CHECK_THROWS_AS(r.add("bad:key", "x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_report("no separator\n"), std::invalid_argument);
}

}
