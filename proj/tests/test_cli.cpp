#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ladderwalk/cli_app.hpp"

using ladderwalk::cli::run_cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path temp_dir() {
    static int counter = 0;
    const fs::path d =
        fs::temp_directory_path() / ("ladderwalk_cli_test_" + std::to_string(counter++));
    fs::create_directories(d);
    return d;
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli({"speed-curve", "--c", "1", "--alpha", "0.5"}) == 1);
    CHECK(run_cli({"speed-curve", "--bogus-flag", "1"}) == 1);
    CHECK(run_cli({}) == 1);
    CHECK(run_cli({"speed-curve"}) == 1);  // neither --c nor --alpha
    CHECK(run_cli({"speed-curve", "--alpha", "1.5", "--out", "/dev/null"}) == 1);
    CHECK(run_cli({"--help"}) == 0);
}

TEST_CASE("speed-curve output") {
    const auto dir = temp_dir();
    const auto out = (dir / "curve.csv").string();
    const std::vector<std::string> args{
        "speed-curve", "--c",     "1",   "--beta-min", "1.2", "--beta-count", "4",
        "--beta-max",  "2.8",     "--steps", "10000",  "--replicas", "12",
        "--seed",      "7",       "--out",   out};
    REQUIRE(run_cli(args) == 0);
    const auto text = slurp(out);
    const auto lines = split_lines(text);

    // header carries the derived alpha, the seed, and the version
    CHECK(text.find("# ladderwalk ") != std::string::npos);
    CHECK(text.find("# alpha: 0.267949192431") != std::string::npos);
    CHECK(text.find("# seed: 7") != std::string::npos);

    std::size_t header = 0, rows = 0;
    bool saw_schema = false;
    for (const auto& l : lines) {
        if (l.rfind('#', 0) == 0) {
            ++header;
        } else if (l.rfind("alpha,beta,", 0) == 0) {
            saw_schema = true;
            CHECK(l == "alpha,beta,v_formula,v_mc,std_err,replicas,steps,capped_fraction");
        } else if (!l.empty()) {
            ++rows;
        }
    }
    CHECK(saw_schema);
    CHECK(rows == 4);  // one per grid point

    // byte-identical reruns, independent of the job count
    const auto out2 = (dir / "curve2.csv").string();
    auto args2 = args;
    args2[args2.size() - 1] = out2;
    REQUIRE(run_cli(args2) == 0);
    CHECK(slurp(out2) == text);

    auto args3 = args;
    args3[args3.size() - 1] = (dir / "curve3.csv").string();
    args3.push_back("--jobs");
    args3.push_back("1");
    REQUIRE(run_cli(args3) == 0);
    CHECK(slurp(dir / "curve3.csv") == text);
}

TEST_CASE("speed-vs-alpha output") {
    const auto dir = temp_dir();
    const auto out = (dir / "valpha.csv").string();
    REQUIRE(run_cli({"speed-vs-alpha", "--beta", "1.25", "--alpha-min", "0.1", "--alpha-max",
                     "0.7", "--alpha-count", "7", "--out", out}) == 0);
    const auto lines = split_lines(slurp(out));
    std::size_t rows = 0;
    for (const auto& l : lines) {
        if (l.rfind('#', 0) == 0 || l.rfind("beta,", 0) == 0 || l.empty()) continue;
        ++rows;
        CHECK(l.rfind("1.25,", 0) == 0);
    }
    CHECK(rows == 7);
}

TEST_CASE("clt-hist output") {
    const auto dir = temp_dir();
    const auto out = (dir / "clt.csv").string();
    REQUIRE(run_cli({"clt-hist", "--alpha", "0.267949", "--beta", "1", "--steps", "2000",
                     "--replicas", "300", "--seed", "3", "--out", out}) == 0);
    const auto text = slurp(out);
    CHECK(text.find("# mode: quenched") != std::string::npos);
    const auto lines = split_lines(text);
    std::size_t rows = 0;
    for (const auto& l : lines) {
        if (l.rfind('#', 0) == 0 || l.rfind("replica,", 0) == 0 || l.empty()) continue;
        ++rows;
    }
    CHECK(rows == 300);

    // annealed mode engages for beta above one
    const auto out2 = (dir / "clt2.csv").string();
    REQUIRE(run_cli({"clt-hist", "--alpha", "0.267949", "--beta", "1.5", "--steps", "2000",
                     "--replicas", "200", "--seed", "3", "--out", out2}) == 0);
    CHECK(slurp(out2).find("# mode: annealed") != std::string::npos);
}

TEST_CASE("trap-times output") {
    const auto dir = temp_dir();
    const auto out = (dir / "traps.csv").string();
    REQUIRE(run_cli({"trap-times", "--beta", "1.5", "--k-max", "3", "--l-max", "2",
                     "--replicas", "400", "--seed", "5", "--out", out}) == 0);
    const auto lines = split_lines(slurp(out));
    std::size_t rows = 0;
    for (const auto& l : lines) {
        if (l.rfind('#', 0) == 0 || l.rfind("kind,", 0) == 0 || l.empty()) continue;
        ++rows;
        // formula and linear solve agree in every row
        std::istringstream is(l);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(is, field, ',')) fields.push_back(field);
        REQUIRE(fields.size() == 8);
        CHECK(std::abs(std::stod(fields[4]) - std::stod(fields[5])) <=
              1e-9 * std::max(1.0, std::stod(fields[4])));
    }
    CHECK(rows == 3 + 2 + 4 * 3);  // a-rows + b-rows + c-grid
}

TEST_CASE("sample-tree output") {
    const auto dir = temp_dir();
    const auto out = (dir / "tree.txt").string();
    REQUIRE(run_cli({"sample-tree", "--alpha", "0.5", "--blocks", "20", "--seed", "1", "--out",
                     out}) == 0);
    const auto text = slurp(out);
    const auto lines = split_lines(text);
    std::size_t block_rows = 0;
    bool saw_origin = false;
    for (const auto& l : lines) {
        if (l.rfind('#', 0) == 0 || l.empty()) continue;
        if (l.rfind("O ", 0) == 0) {
            saw_origin = true;
            int g0, f0p, w0;
            long long h0;
            REQUIRE(std::sscanf(l.c_str(), "O %d %lld %d %d", &g0, &h0, &f0p, &w0) == 4);
            CHECK(g0 >= 1);
            CHECK(h0 <= 0);
        } else {
            ++block_rows;
        }
    }
    CHECK(saw_origin);
    CHECK(block_rows == 40);  // blocks on each side

    const auto out2 = (dir / "tree2.txt").string();
    REQUIRE(run_cli({"sample-tree", "--alpha", "0.5", "--blocks", "20", "--seed", "1", "--out",
                     out2}) == 0);
    CHECK(slurp(out2) == text);
}

TEST_CASE("json format carries meta and rows") {
    const auto dir = temp_dir();
    const auto out = (dir / "rows.json").string();
    REQUIRE(run_cli({"speed-vs-alpha", "--beta", "2", "--alpha-count", "5", "--alpha-min",
                     "0.1", "--alpha-max", "0.4", "--format", "json", "--out", out}) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["meta"]["command"] == "speed-vs-alpha");
    CHECK(j["rows"].size() == 5);
    CHECK(j["rows"][0].contains("v_formula"));
}

TEST_CASE("verify runs the reduced suite") {
    const auto dir = temp_dir();
    const auto out = (dir / "verify.json").string();
    const int rc = run_cli({"verify", "--alpha", "0.5", "--beta", "1.5", "--quick", "--seed",
                            "11", "--out", out});
    CHECK(rc == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["pass"] == true);
    CHECK(j["checks"].size() >= 8);
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("expected"));
        CHECK(c.contains("observed"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("pass"));
    }
}

TEST_CASE("unwritable output path exits with code 2") {
    CHECK(run_cli({"sample-tree", "--alpha", "0.5", "--blocks", "3", "--out",
                   "/nonexistent_dir_zzz/x.txt"}) == 2);
}

TEST_CASE("seed defaults to the environment override") {
    const auto dir = temp_dir();
    const auto out = (dir / "seeded.txt").string();
    setenv("LADDERWALK_SEED", "4242", 1);
    REQUIRE(run_cli({"sample-tree", "--alpha", "0.5", "--blocks", "2", "--out", out}) == 0);
    unsetenv("LADDERWALK_SEED");
    CHECK(slurp(out).find("# seed: 4242") != std::string::npos);
}
