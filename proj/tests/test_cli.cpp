#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "spheregh/bounds.hpp"
#include "spheregh/cli.hpp"

using namespace sgh;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "spheregh");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string& name) { return std::string(SPHEREGH_EXAMPLES_DIR) + "/" + name; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        rows.push_back(f);
    }
    return rows;
}

}  // namespace

TEST_CASE("bounds table") {
    auto r = cli({"bounds", "--max-dim", "4"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv_rows(r.out);
    CHECK(rows.size() == 10);
    for (const auto& f : rows) CHECK(std::stod(f[3]) >= M_PI / 4 - 1e-12);

    r = cli({"bounds", "--max-dim", "1"});
    REQUIRE(r.code == kExitOk);
    const auto one = csv_rows(r.out);
    REQUIRE(one.size() == 1);
    CHECK(one[0][7] == "exact");

    r = cli({"bounds", "--flavor", "euclidean", "--max-dim", "3"});
    REQUIRE(r.code == kExitOk);
    for (const auto& f : csv_rows(r.out)) {
        const int m = std::stoi(f[0]);
        CHECK(std::stod(f[3]) >= (m == 0 ? 1.0 : euclidean_lower_bound(m)) - 1e-12);
        if (m <= 1) CHECK(std::stod(f[3]) >= 0.5 - 1e-12);
    }

    r = cli({"bounds", "--max-dim", "2", "--format", "json"});
    CHECK(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out).contains("cells"));
}

TEST_CASE("environment mirrors flags") {
    setenv("SPHEREGH_MAX_DIM", "2", 1);
    const auto r = cli({"bounds"});
    unsetenv("SPHEREGH_MAX_DIM");
    CHECK(r.code == kExitOk);
    CHECK(csv_rows(r.out).size() == 3);
}

TEST_CASE("output file") {
    const auto path = (std::filesystem::temp_directory_path() / "spheregh_bounds.csv").string();
    auto r = cli({"bounds", "--max-dim", "2", "--out", path});
    CHECK(r.code == kExitOk);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "m,n,flavor,lower,upper,lower_provenance,upper_provenance,exactness");
    std::filesystem::remove(path);
    r = cli({"bounds", "--out", "/nonexistent-dir/x.csv"});
    CHECK(r.code == kExitInputError);
    CHECK(!r.err.empty());
}

TEST_CASE("finite-gh") {
    auto r = cli({"finite-gh", data("P3.json"), data("P3.json")});
    REQUIRE(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"].get<double>() == 0.0);

    r = cli({"finite-gh", data("P3.json"), data("P4.json")});
    REQUIRE(r.code == kExitOk);
    j = nlohmann::json::parse(r.out);
    CHECK(j["value"].get<double>() == doctest::Approx(M_PI / 4));
    CHECK(j["exact"].get<bool>());

    r = cli({"finite-gh", data("point.json"), data("S0.json")});
    REQUIRE(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == doctest::Approx(M_PI / 2));

    CHECK(cli({"finite-gh", data("broken.json"), data("P3.json")}).code == kExitInputError);
    CHECK(cli({"finite-gh", data("missing.json"), data("P3.json")}).code == kExitInputError);
}

TEST_CASE("polygon") {
    auto r = cli({"polygon", "2", "5"});
    REQUIRE(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == doctest::Approx(2 * M_PI / 5));
    r = cli({"polygon", "4", "S1"});
    REQUIRE(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == doctest::Approx(M_PI / 4));
    CHECK(cli({"polygon", "x", "3"}).code == kExitInputError);
}

TEST_CASE("certify") {
    auto r = cli({"certify", "phi21", "--mesh", "0.05"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"].get<bool>());
    CHECK(j["target"].get<double>() == doctest::Approx(2 * M_PI / 3));
    CHECK(j["upper_bound"].get<double>() <= 2 * M_PI / 3 + j["padding"].get<double>() + 1e-12);

    r = cli({"certify", "phi21", "--mesh", "0.05", "--format", "csv"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("construction_id,", 0) == 0);

    r = cli({"certify", "phi21", "--mesh", "0.05", "--max-seconds", "0.0001"});
    CHECK(r.code == kExitCertificationFailed);

    CHECK(cli({"certify", "nosuch"}).code == kExitInputError);
    CHECK(cli({"certify", "phi21", "--mesh", "-1"}).code == kExitInputError);
}

TEST_CASE("catalog and usage errors") {
    auto r = cli({"hooks", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.size() == construction_catalog().size());
    CHECK(construction_info("phi_m1_m:m=2").target == doctest::Approx(eta(2)));
    CHECK(construction_info("heptagonE").strict);
    CHECK_THROWS(construction_info("phi_m1_m:m=x"));
    CHECK(cli({}).code == kExitInputError);
    CHECK(cli({"frobnicate"}).code == kExitInputError);
    CHECK(cli({"bounds", "--flavor", "taxicab"}).code == kExitInputError);
    CHECK(cli({"--help"}).code == kExitOk);
}
