#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run crem(const std::string& args) {
    Run r;
    std::string cmd = std::string(CREM_BINARY) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string golden(const std::string& name) {
    std::ifstream in(std::string(GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("exit codes") {
    CHECK(crem("verify thm43 --alpha 1").status == 0);
    CHECK(crem("verify sec23").status == 0);
    CHECK(crem("verify sec23 --exponent 4").status == 1);
    CHECK(crem("verify thm31 --n 2").status == 2);
    CHECK(crem("analyze no_such_map_or_file").status == 2);
    CHECK(crem("list-families").status == 0);
}

TEST_CASE("JSON reports") {
    Run r = crem("--json --deterministic verify thm35 --alpha 2");
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["pass"] == true);
    CHECK(j["results"]["overall"] == true);
    REQUIRE(j["results"]["checks"].is_array());
    for (auto& c : j["results"]["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c["pass"].is_boolean());
    }
    auto e = nlohmann::json::parse(crem("--json verify thm31 --n 2").out);
    CHECK(e.contains("error"));
    CHECK(e["error"].get<std::string>().rfind("UnsupportedN", 0) == 0);
}

TEST_CASE("deterministic output is byte identical") {
    for (const char* a : {"--json --deterministic verify thm43 --alpha 2", "--json --deterministic charpoly --family thm31 --n 4"})
        CHECK(crem(a).out == crem(a).out);
}

TEST_CASE("golden outputs") {
    CHECK(crem("--json --deterministic charpoly --family thm43").out == golden("charpoly_thm43.json"));
    CHECK(crem("--json --deterministic verify thm43 --alpha 1").out == golden("verify_thm43_a1.json"));
    CHECK(crem("--json --deterministic verify sec23 --exponent 4").out == golden("verify_sec23_k4.json"));
}
