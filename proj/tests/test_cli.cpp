#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"

using shockprof::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "shockprof");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string f; std::getline(is, f, sep);) out.push_back(f);
    return out;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

} // namespace

TEST_CASE("classify") {
    const Outcome node = invoke({"classify", "--eps", "1", "--q", "0.76"});
    CHECK(node.code == 0);
    CHECK(contains(node.out, "region: NodeBelow"));
    const auto q1_at = node.out.find("q1: ");
    REQUIRE(q1_at != std::string::npos);
    CHECK(std::stod(node.out.substr(q1_at + 4)) == doctest::Approx(49.0 / 64.0).epsilon(1e-14));
    CHECK_FALSE(contains(node.out, "q2:"));

    const Outcome focus = invoke({"classify", "--eps", "1", "--q", "0.8"});
    CHECK(focus.code == 0);
    CHECK(contains(focus.out, "region: Focus"));
    CHECK(contains(focus.out, "eigenvalues_plus: -0.25"));

    const Outcome above = invoke({"classify", "--eps", "0.05", "--q", "0.99"});
    CHECK(above.code == 0);
    CHECK(contains(above.out, "region: NodeAbove"));
    CHECK(contains(above.out, "q2: "));
}

TEST_CASE("classify rejects points outside the parameter square") {
    CHECK(invoke({"classify", "--eps", "0.5", "--q", "0.5"}).code == 2);
    CHECK(invoke({"classify", "--eps", "1.5", "--q", "0.8"}).code == 2);
    CHECK(invoke({"classify", "--eps", "0", "--q", "0.8"}).code == 2);
    CHECK(invoke({"classify", "--eps", "0.5", "--q", "1"}).code == 2);
    CHECK(invoke({"classify", "--eps", "0.5"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
}

TEST_CASE("causality") {
    const Outcome sharp = invoke({"causality", "--eta", "1", "--mu", "1.3333333333333333", "--nu", "4"});
    CHECK(sharp.code == 0);
    CHECK(contains(sharp.out, "class: SharplyCausal"));
    CHECK(contains(sharp.out, "eps: 1"));

    const Outcome acausal = invoke({"causality", "--eta", "1", "--mu", "1", "--nu", "1"});
    CHECK(acausal.code == 0);
    CHECK(contains(acausal.out, "class: Acausal"));
    CHECK_FALSE(contains(acausal.out, "eps:"));

    const Outcome strict = invoke({"causality", "--eta", "1", "--mu", "3", "--nu", "3"});
    CHECK(strict.code == 0);
    CHECK(contains(strict.out, "class: StrictlyCausal"));

    CHECK(invoke({"causality", "--eta", "0", "--mu", "1", "--nu", "1"}).code == 2);
    CHECK(invoke({"causality", "--eta", "1", "--mu", "-1", "--nu", "1"}).code == 2);
}

TEST_CASE("scan csv on the default square") {
    const Outcome r = invoke({"scan", "--grid", "100x100", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() > 10001);
    CHECK(lines[0] == "eps,q_tilde,region,v_plus_sq,p_value");

    std::set<std::string> labels;
    std::size_t i = 1;
    for (; i < lines.size() && lines[i][0] != '#'; ++i) {
        const auto f = split(lines[i], ',');
        REQUIRE(f.size() == 5);
        labels.insert(f[2]);
        const double p = std::stod(f[4]);
        if (f[2] == "Focus") CHECK(p < 0.0);
        if (f[2] == "NodeBelow" || f[2] == "NodeAbove") CHECK(p > 0.0);
    }
    CHECK(i - 1 == 10000);
    CHECK(labels.count("NodeBelow") == 1);
    CHECK(labels.count("Focus") == 1);
    CHECK(labels.count("NodeAbove") == 1);
    CHECK(count_of(r.out, "# separatrix q1\neps,q_tilde\n") == 1);
    CHECK(count_of(r.out, "# separatrix q2\neps,q_tilde\n") == 1);
}

TEST_CASE("scan corner grid at eps = 1") {
    const Outcome r = invoke({"scan", "--grid", "2x2", "--eps-min", "0.999", "--eps-max", "1"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    CHECK(split(lines[3], ',')[2] == "NodeBelow");
    CHECK(split(lines[4], ',')[2] == "Focus");
}

TEST_CASE("scan is deterministic and kernel-independent") {
    const Outcome a = invoke({"scan", "--grid", "40x30", "--format", "json"});
    const Outcome b = invoke({"scan", "--grid", "40x30", "--format", "json"});
    const Outcome c = invoke({"scan", "--grid", "40x30", "--format", "json", "--serial"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
}

TEST_CASE("scan json schema") {
    const Outcome r = invoke({"scan", "--grid", "10x12", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == "shockprof.scan");
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["meta"].contains("eps"));
    CHECK(doc["meta"].contains("q_tilde"));
    CHECK(doc["meta"]["epsilon_hat"].get<double>() == doctest::Approx(0.7102898707293239));
    REQUIRE(doc["records"].size() == 120);
    for (const auto& rec : doc["records"]) {
        CHECK(rec.contains("eps"));
        CHECK(rec.contains("q_tilde"));
        CHECK(rec.contains("region"));
        CHECK(rec.contains("v_plus_sq"));
        CHECK(rec.contains("p_value"));
    }
    CHECK(doc["separatrices"]["q1"].size() > 0);
    CHECK(doc["separatrices"]["q2"].size() > 0);
    CHECK(doc["separatrices"]["q1"][0].size() == 2);
}

TEST_CASE("scan with shooting adds verdict columns") {
    const Outcome r = invoke({"scan", "--grid", "3x3", "--shoot", "--eps-min", "0.5", "--q-max", "0.95"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    CHECK(lines[0] == "eps,q_tilde,region,v_plus_sq,p_value,verdict,oscillatory");
    for (std::size_t i = 1; i <= 9; ++i) {
        const auto f = split(lines[i], ',');
        REQUIRE(f.size() == 7);
        CHECK_FALSE(f[5].empty());
        CHECK((f[6] == "true" || f[6] == "false"));
    }
}

TEST_CASE("scan svg structure") {
    const Outcome r = invoke({"scan", "--grid", "20x20", "--format", "svg"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "<svg xmlns=\"http://www.w3.org/2000/svg\""));
    CHECK(count_of(r.out, "data-region=") == 400);
    CHECK(contains(r.out, "data-region=\"Focus\""));
    CHECK(contains(r.out, "data-region=\"NodeBelow\""));
    CHECK(contains(r.out, "data-region=\"NodeAbove\""));
    CHECK(contains(r.out, "id=\"separatrix-q1\""));
    CHECK(contains(r.out, "id=\"separatrix-q2\""));
    CHECK(contains(r.out, "</svg>"));
}

TEST_CASE("scan option errors") {
    CHECK(invoke({"scan", "--grid", "10"}).code == 2);
    CHECK(invoke({"scan", "--grid", "1x10"}).code == 2);
    CHECK(invoke({"scan", "--format", "xml"}).code == 2);
    CHECK(invoke({"scan", "--q-min", "0.7"}).code == 2);
}

TEST_CASE("scan and profile I/O failures") {
    const std::string bad = "/nonexistent-dir/for/sure/out.csv";
    CHECK(invoke({"scan", "--grid", "4x4", "--out", bad}).code == 3);
    CHECK(invoke({"profile", "--eps", "1", "--q", "0.8", "--out", bad}).code == 3);
}

TEST_CASE("scan writes to a file") {
    const auto path = std::filesystem::temp_directory_path() / "shockprof_cli_scan.csv";
    const Outcome r = invoke({"scan", "--grid", "5x5", "--out", path.string()});
    REQUIRE(r.code == 0);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "eps,q_tilde,region,v_plus_sq,p_value");
    std::filesystem::remove(path);
}

TEST_CASE("profile") {
    const Outcome r = invoke({"profile", "--eps", "1", "--q", "0.8"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "# verdict: ConvergedToPlus"));
    CHECK(contains(r.out, "# oscillatory: true"));
    CHECK(contains(r.out, "pseudo_time,psi0,psi1,theta,u,v\n"));

    const auto path = std::filesystem::temp_directory_path() / "shockprof_cli_profile.csv";
    const Outcome f = invoke({"profile", "--eps", "1", "--q", "0.76", "--out", path.string(), "--rtol", "1e-9"});
    REQUIRE(f.code == 0);
    CHECK(contains(f.out, "verdict: ConvergedToPlus"));
    CHECK(contains(f.out, "oscillatory: false"));
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "pseudo_time,psi0,psi1,theta,u,v");
    std::filesystem::remove(path);

    CHECK(invoke({"profile", "--eps", "1", "--q", "0.74"}).code == 2);
    CHECK(invoke({"profile", "--eps", "1", "--q", "0.8", "--rtol", "-1"}).code == 2);
}

TEST_CASE("verify") {
    const Outcome r = invoke({"verify"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "all identities hold"));
    CHECK_FALSE(contains(r.out, "FAIL"));
}
