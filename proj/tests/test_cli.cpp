#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "catcode/serialize.hpp"

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return CATCODE_CLI_PATH; }

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("catcode_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    std::string cmd = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) { return catcode::read_text_file(path); }

void write(const std::string& path, const std::string& text) { catcode::write_text_file(path, text); }

} // namespace

TEST_CASE("cli round trip: gen, encode, decode") {
    TempDir tmp;
    std::string cb = tmp.file("cb.json");
    REQUIRE(run("gen --scheme remainder --n 35 --moduli 5,7 -o " + cb) == 0);

    std::ostringstream ids;
    for (int i = 0; i < 35; ++i) ids << i << "\n";
    write(tmp.file("ids.txt"), ids.str());

    std::string csv = tmp.file("sites.csv");
    REQUIRE(run("encode --codebook " + cb + " --ids " + tmp.file("ids.txt") + " -o " + csv) == 0);

    // spot-check the csv, then build delta ensembles from it and decode
    std::string text = slurp(csv);
    CHECK(text.find("0,0,0\n") == 0);
    CHECK(text.find("34,4,6\n") != std::string::npos);

    auto one_hot_json = [](unsigned size, unsigned hot) {
        std::string s = "[";
        for (unsigned v = 0; v < size; ++v) s += std::string(v ? "," : "") + (v == hot ? "1" : "0");
        return s + "]";
    };
    std::ostringstream ens;
    ens << "[";
    std::istringstream lines(text);
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
        unsigned id, s1, s2;
        REQUIRE(std::sscanf(line.c_str(), "%u,%u,%u", &id, &s1, &s2) == 3);
        ens << (first ? "" : ",") << "{\"dists\":[" << one_hot_json(5, s1) << "," << one_hot_json(7, s2) << "]}";
        first = false;
    }
    ens << "]";
    write(tmp.file("ens.json"), ens.str());

    std::string decoded = tmp.file("decoded.txt");
    REQUIRE(run("decode --codebook " + cb + " --input " + tmp.file("ens.json") + " -o " + decoded) == 0);
    std::istringstream got(slurp(decoded));
    for (int i = 0; i < 35; ++i) {
        std::getline(got, line);
        CHECK(line == std::to_string(i));
    }
}

TEST_CASE("cli rhot mode and anti flag") {
    TempDir tmp;
    std::string cb = tmp.file("cb.json");
    REQUIRE(run("gen --scheme remainder --n 6 --moduli 2,3 -o " + cb) == 0);
    write(tmp.file("ids.txt"), "4\n");

    std::string out = tmp.file("rhot.csv");
    REQUIRE(run("encode --codebook " + cb + " --ids " + tmp.file("ids.txt") + " --mode rhot -o " + out) == 0);
    CHECK(slurp(out) == "4,10010\n");

    REQUIRE(run("encode --codebook " + cb + " --ids " + tmp.file("ids.txt") + " --mode rhot --anti -o " + out) == 0);
    CHECK(slurp(out) == "4,01101\n");
}

TEST_CASE("cli presets regenerate byte-identically") {
    TempDir tmp;
    std::string a = tmp.file("a.json"), b = tmp.file("b.json");
    for (const std::string name : {"cjk-remainder-6", "ml-rmp-item", "method5-user"}) {
        REQUIRE(run("gen --preset " + name + " -o " + a) == 0);
        REQUIRE(run("gen --preset " + name + " -o " + b) == 0);
        CHECK(slurp(a) == slurp(b));
    }
}

TEST_CASE("cli metrics report") {
    TempDir tmp;
    std::string cb = tmp.file("cb.json");
    REQUIRE(run("gen --preset method4-user -o " + cb) == 0);

    std::string rep = tmp.file("rep.json");
    REQUIRE(run("metrics --codebook " + cb + " --collision --amkl --hamming 1000 -o " + rep) == 0);
    std::string text = slurp(rep);
    CHECK(text.find("\"rational\": \"5/6\"") != std::string::npos);
    CHECK(text.find("\"max_collisions\": 1") != std::string::npos);

    REQUIRE(run("metrics --codebook " + cb + " --verify-minimal -o " + rep) == 0);

    // CRT pair: exact zero
    std::string small = tmp.file("small.json");
    REQUIRE(run("gen --scheme remainder --n 35 --moduli 5,7 -o " + small) == 0);
    REQUIRE(run("metrics --codebook " + small + " --mi 0 1 -o " + rep) == 0);
    CHECK(slurp(rep).find("\"nats\": 0.0") != std::string::npos);
}

TEST_CASE("cli simulate is seed-stable") {
    TempDir tmp;
    std::string cb = tmp.file("cb.json");
    REQUIRE(run("gen --preset method1-item -o " + cb) == 0);
    std::string r1 = tmp.file("r1.json"), r2 = tmp.file("r2.json");
    REQUIRE(run("simulate --codebook " + cb + " --noise symmetric --eta 0.3 --trials 200 --seed 9 -o " + r1) == 0);
    REQUIRE(run("simulate --codebook " + cb + " --noise symmetric --eta 0.3 --trials 200 --seed 9 -o " + r2) == 0);
    CHECK(slurp(r1) == slurp(r2));
    CHECK(slurp(r1).find("\"accuracy\"") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    TempDir tmp;
    std::string cb = tmp.file("cb.json");

    // parameter error: moduli share a factor
    CHECK(run("gen --scheme remainder --n 35 --moduli 6,10 -o " + cb) == 2);

    // data error: id out of range
    REQUIRE(run("gen --scheme remainder --n 35 --moduli 5,7 -o " + cb) == 0);
    write(tmp.file("ids.txt"), "35\n");
    CHECK(run("encode --codebook " + cb + " --ids " + tmp.file("ids.txt") + " -o " + tmp.file("x.csv")) == 3);

    // cap exceeded: exhaustive scan beyond the cap without --sampled
    REQUIRE(run("gen --preset cjk-remainder-2 -o " + cb) == 0);
    CHECK(run("metrics --codebook " + cb + " --collision --cap 1000 -o " + tmp.file("rep.json")) == 4);

    // unknown flag is rejected
    CHECK(run("gen --scheme remainder --n 35 --moduli 5,7 --frobnicate -o " + cb) == 2);
}
