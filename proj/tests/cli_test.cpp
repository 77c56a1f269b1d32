#include "overlap/cli.hpp"
#include "overlap/instance_io.hpp"
#include "overlap/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace overlap;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::map<std::string, std::string> fields(const std::string& text)
{
    std::map<std::string, std::string> m;
    for (auto& [k, v] : parse_report(text)) m.emplace(k, v);
    return m;
}

std::string scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "overlap_cli_test";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

std::string write_file(const std::string& name, const std::string& text)
{
    const std::string path = scratch(name);
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen is deterministic and readable")
{
    const Run a = cli({"gen", "5", "--seed", "7"});
    const Run b = cli({"gen", "5", "--seed", "7"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK_NOTHROW(parse_instance(a.out).to_instance());

    const Run w = cli({"gen", "30", "--seed", "1", "--p", "random"});
    CHECK(parse_instance(w.out).weights.has_value());
}

TEST_CASE("overlap on the unit square")
{
    const std::string path =
        write_file("square.txt", "version 1\nn 4\npoint 0 0 0\npoint 1 1 0\npoint 2 1 1\npoint 3 0 1\n");
    const Run r = cli({"overlap", path});
    CHECK(r.code == kExitOk);
    auto f = fields(r.out);
    CHECK(f["point_x"] == "1/2");
    CHECK(f["point_y"] == "1/2");
    CHECK(f["count"] == "4");
    CHECK(f["fraction"] == "1/1");
    CHECK(f["status"] == "pass");
    CHECK(f.count("elapsed_ms") == 0);
    CHECK(fields(cli({"overlap", path, "--timing"}).out).count("elapsed_ms") == 1);
}

TEST_CASE("distribution modes")
{
    const std::string path = write_file("weighted.txt", cli({"gen", "8", "--seed", "4", "--p", "random"}).out);
    CHECK(fields(cli({"overlap", path}).out)["distribution"] == "file");
    CHECK(fields(cli({"overlap", path, "--p", "uniform"}).out)["uniform_bound_applicable"] == "yes");
    CHECK(fields(cli({"overlap", path, "--p", "random", "--seed", "9"}).out)["distribution"] == "random");
    const std::string plain = write_file("plain.txt", cli({"gen", "8", "--seed", "4"}).out);
    CHECK(fields(cli({"overlap", plain}).out)["distribution"] == "uniform");
}

TEST_CASE("folding and game on a small instance")
{
    const std::string path = write_file("five.txt", cli({"gen", "5", "--seed", "3"}).out);
    const Run f = cli({"folding", path, "--seed", "3"});
    CHECK(f.code == kExitOk);
    auto ff = fields(f.out);
    CHECK(ff["duality_holds"] == "yes");
    CHECK(ff["fundamental_class"] == "yes");
    CHECK(ff["defect_parity"] == "odd");
    CHECK(cli({"folding", path, "--seed", "3"}).out == f.out);

    const Run g = cli({"game", path});
    CHECK(g.code == kExitOk);
    auto gf = fields(g.out);
    CHECK(gf["gap"] == "0/1");
    CHECK(gf["value_bound_holds"] == "yes");
    CHECK(gf["value"] == gf["min_column"]);
    CHECK(fields(cli({"game", path, "--no-prune"}).out)["value"] == gf["value"]);
}

TEST_CASE("triangle instance through every command")
{
    const std::string path = write_file("tri.txt", "version 1\nn 3\npoint 0 0 0\npoint 1 1 0\npoint 2 0 1\n");
    CHECK(fields(cli({"game", path}).out)["value"] == "1/1");
    auto f = fields(cli({"folding", path}).out);
    CHECK(f["fundamental_class"] == "yes");
    CHECK(f["defects"] == "1");
}

TEST_CASE("output file")
{
    const std::string target = scratch("gen_out.txt");
    const Run r = cli({"gen", "4", "--seed", "2", "--out", target});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(target, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == cli({"gen", "4", "--seed", "2"}).out);
}

TEST_CASE("selfcheck")
{
    const Run r = cli({"selfcheck", "4", "--seed", "0"});
    CHECK(r.code == kExitOk);
    CHECK(fields(r.out)["status"] == "pass");
    CHECK(cli({"selfcheck", "9"}).code == kExitBadInput);
}

TEST_CASE("exit codes for bad input")
{
    CHECK(cli({}).code == kExitBadInput);
    CHECK(cli({"frobnicate"}).code == kExitBadInput);
    CHECK(cli({"gen", "2"}).code == kExitBadInput);
    CHECK(cli({"overlap", scratch("missing.txt")}).code == kExitBadInput);
    const std::string collinear =
        write_file("collinear.txt", "version 1\nn 3\npoint 0 0 0\npoint 1 1 1\npoint 2 2 2\n");
    CHECK(cli({"overlap", collinear}).code == kExitBadInput);
    CHECK(cli({"game", collinear}).code == kExitBadInput);
    const std::string garbage = write_file("garbage.txt", "hello\n");
    CHECK(cli({"folding", garbage}).code == kExitBadInput);
    const std::string tri = write_file("tri2.txt", "version 1\nn 3\npoint 0 0 0\npoint 1 1 0\npoint 2 0 1\n");
    CHECK(cli({"folding", tri, "--mesh-start", "0"}).code == kExitBadInput);
    CHECK(cli({"folding", tri, "--mesh-start", "x"}).code == kExitBadInput);
    CHECK(cli({"overlap", tri, "--p", "nonsense"}).code == kExitBadInput);
    CHECK(cli({"--help"}).code == kExitOk);
}

}
