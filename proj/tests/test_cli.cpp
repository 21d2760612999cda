#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cq/cli.hpp"
#include "cq/linkseries.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <sstream>

using namespace cq;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run_args(std::vector<std::string> args)
{
    args.insert(args.begin(), "curvequot");
    std::vector<const char*> argv;
    for (const auto& s : args)
        argv.push_back(s.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("series json round-trips to the library value")
{
    Result r = run_args({"series", "quot", "--n", "2", "--d", "3", "--qmax", "8", "--format", "json"});
    REQUIRE(r.code == cli::kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["convention"] == "xbar");
    QSeries parsed = series_from_json(j["value"]);
    KhrSeries lib = convert(psi_quot_series({2, 3}, 8), Convention::Xbar);
    CHECK(parsed == lib.value);
    CHECK(parse_poly(lib.value.to_string().substr(0, lib.value.to_string().find(" + O("))) ==
          parsed.to_poly());

    Result raw = run_args({"series", "quot", "--n", "2", "--d", "3", "--qmax", "8", "--format", "json", "--raw"});
    CHECK(nlohmann::json::parse(raw.out)["convention"] == "psi-raw");
}

TEST_CASE("parallelism does not change results")
{
    for (const char* kind : {"quot", "hilb"}) {
        Result one = run_args({"series", kind, "--n", "3", "--d", "4", "--qmax", "9", "-j", "1"});
        Result many = run_args({"series", kind, "--n", "3", "--d", "4", "--qmax", "9", "-j", "0"});
        CHECK(one.code == 0);
        CHECK(one.out == many.out);
    }
}

TEST_CASE("exit codes")
{
    CHECK(run_args({"series", "quot", "--n", "2", "--d", "4"}).code == cli::kExitUsage);
    Result bad = run_args({"series", "quot", "--n", "2", "--d", "4"});
    CHECK(bad.err.find("--d") != std::string::npos);
    CHECK(run_args({"series", "bogus"}).code == cli::kExitUsage);
    CHECK(run_args({}).code == cli::kExitUsage);
    CHECK(run_args({"check", "a0-symmetry", "--n", "2", "--d", "3", "--qmax", "1"}).code == cli::kExitUsage);
    CHECK(run_args({"--help"}).code == cli::kExitOk);
    CHECK(run_args({"check", "node"}).code == cli::kExitOk);
    CHECK(run_args({"check", "catalan-symmetry", "--n", "3", "--d", "5"}).code == cli::kExitOk);
}

TEST_CASE("check reports carry the structured fields")
{
    Result r = run_args({"check", "hilb-vs-quot", "--n", "2", "--d", "5", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"check", "n", "d", "qmax", "status", "first_discrepancy"})
        CHECK(j.contains(key));
    CHECK(j["status"] == "pass");
    CHECK(j["first_discrepancy"].is_null());
}

TEST_CASE("tables")
{
    Result text = run_args({"table", "hikita", "--n", "3", "--d", "4"});
    CHECK(text.out.find("Δ_{0,4,8}") != std::string::npos);
    Result js = run_args({"table", "hikita", "--n", "3", "--d", "4", "--format", "json"});
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["rows"].size() == 5);
    Result gc = run_args({"table", "gen-cogen", "--n", "3", "--d", "4", "--format", "json"});
    CHECK(nlohmann::json::parse(gc.out)["rows"].size() == 5);
    Result rm = run_args({"table", "rowmotion", "--n", "2", "--d", "5"});
    CHECK(rm.code == 0);
}

TEST_CASE("nabla series use the disk cache")
{
    auto path = std::filesystem::temp_directory_path() / "cq-cli-test-cache.json";
    std::filesystem::remove(path);
    Result first = run_args({"series", "nabla", "--n", "3", "--k", "1", "--qmax", "4", "--cache", path.string()});
    REQUIRE(first.code == 0);
    CHECK(std::filesystem::exists(path));
    Result status = run_args({"cache", "status", "--cache", path.string(), "--format", "json"});
    CHECK(nlohmann::json::parse(status.out)["entries"].size() > 0);
    Result second = run_args({"series", "nabla", "--n", "3", "--k", "1", "--qmax", "4", "--cache", path.string()});
    CHECK(first.out == second.out);
    CHECK(run_args({"cache", "clear", "--cache", path.string()}).code == 0);
    CHECK_FALSE(std::filesystem::exists(path));
}

TEST_CASE("convert to link normalizations")
{
    Result r = run_args({"convert", "ors-reduced", "--n", "2", "--d", "3", "--qmax", "6", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["convention"] == "ors-reduced");
    CHECK(run_args({"convert", "ors-unreduced", "--n", "2", "--d", "5", "--qmax", "6"}).code == 0);
    CHECK(run_args({"convert", "ors-reduced", "--n", "2", "--d", "2", "--qmax", "4", "--cache", ""}).code == 0);
}
