// End-to-end checks of the command-line tool: spawns the real binary.

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "cforge/manifest.hpp"
#include "doctest.h"

namespace {

const std::string kCli = CFORGE_CLI_PATH;
const std::string kDir = "/tmp/cforge_cli_test";

int run(const std::string& args) {
    std::string cmd = kCli + " " + args + " >" + kDir + "/stdout.txt 2>" + kDir + "/stderr.txt";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool exists(const std::string& path) { return std::ifstream(path).good(); }

struct Setup {
    Setup() {
        if (std::system(("rm -rf " + kDir + " && mkdir -p " + kDir + "/a " + kDir + "/b").c_str()) != 0)
            std::abort();
    }
};
Setup setup;

}  // namespace

TEST_CASE("generate writes four data files plus a manifest") {
    REQUIRE(run("generate --task 1 --lang en --train 60 --test 20 --seed 42 --out " + kDir +
                "/a") == 0);
    for (std::string suffix : {"train.jsonl", "train.tsv", "test.jsonl", "test.tsv",
                               "manifest.json"})
        CHECK(exists(kDir + "/a/task1_en_disjoint_" + suffix));
}

TEST_CASE("equal configurations produce equal digests") {
    REQUIRE(run("generate --task 1 --lang en --train 60 --test 20 --seed 42 --out " + kDir +
                "/b") == 0);
    auto ma = cforge::read_manifest(kDir + "/a/task1_en_disjoint_manifest.json");
    auto mb = cforge::read_manifest(kDir + "/b/task1_en_disjoint_manifest.json");
    REQUIRE(ma.at("outputs").size() == mb.at("outputs").size());
    for (std::size_t i = 0; i < ma.at("outputs").size(); ++i)
        CHECK(ma.at("outputs")[i].at("sha256") == mb.at("outputs")[i].at("sha256"));
    CHECK(ma.at("config") == mb.at("config"));
}

TEST_CASE("a portuguese mixed split generates and verifies") {
    REQUIRE(run("generate --task 7 --lang pt --train 60 --test 20 --seed 3 --out " + kDir +
                "/a") == 0);
    CHECK(run("verify --input " + kDir + "/a/task7_pt_disjoint_train.jsonl") == 0);
}

TEST_CASE("verify accepts fresh splits and flags a flipped label") {
    CHECK(run("verify --input " + kDir + "/a/task1_en_disjoint_train.jsonl --oracle") == 0);

    std::string content = slurp(kDir + "/a/task1_en_disjoint_train.jsonl");
    auto pos = content.find("\"non-contradiction\"");
    REQUIRE(pos != std::string::npos);
    content.replace(pos, 19, "\"contradiction\"");
    std::ofstream(kDir + "/a/flipped.jsonl", std::ios::binary) << content;
    CHECK(run("verify --input " + kDir + "/a/flipped.jsonl") == 1);
    std::string report = slurp(kDir + "/stdout.txt");
    CHECK(report.find("mismatch") != std::string::npos);
    CHECK(report.find("1 label mismatches") != std::string::npos);
}

TEST_CASE("stats prints both word and character lengths") {
    REQUIRE(run("stats --train " + kDir + "/a/task1_en_disjoint_train.jsonl --test " + kDir +
                "/a/task1_en_disjoint_test.jsonl --out " + kDir + "/a/stats.json") == 0);
    std::string report = slurp(kDir + "/stdout.txt");
    CHECK(report.find("mean input words") != std::string::npos);
    CHECK(report.find("mean input chars") != std::string::npos);
    CHECK(report.find("name tokens shared     0") != std::string::npos);
    CHECK(exists(kDir + "/a/stats.json"));
}

TEST_CASE("ablate blanks exactly the requested field") {
    REQUIRE(run("ablate --input " + kDir + "/a/task1_en_disjoint_train.jsonl --mode "
                "hypothesis-only --seed 1 --out " +
                kDir + "/a/hyponly.tsv") == 0);
    std::ifstream in(kDir + "/a/hyponly.tsv");
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    auto first_tab = row.find('\t');
    auto second_tab = row.find('\t', first_tab + 1);
    CHECK(second_tab == first_tab + 1);  // premise column is empty
}

TEST_CASE("baseline trains, evaluates, sweeps, and persists") {
    REQUIRE(run("baseline --train " + kDir + "/a/task1_en_disjoint_train.jsonl --test " + kDir +
                "/a/task1_en_disjoint_test.jsonl --trees 10 --seed 2 --out " + kDir +
                "/a/metrics.json --model-out " + kDir + "/a/model.json") == 0);
    CHECK(exists(kDir + "/a/metrics.json"));
    CHECK(exists(kDir + "/a/model.json"));
    CHECK(exists(kDir + "/a/metrics.json.manifest.json"));

    REQUIRE(run("baseline --train " + kDir + "/a/task1_en_disjoint_train.jsonl --test " + kDir +
                "/a/task1_en_disjoint_test.jsonl --trees 5 --sweep 0.5,1.0") == 0);
    std::string report = slurp(kDir + "/stdout.txt");
    CHECK(report.find("proportion") != std::string::npos);
    CHECK(run("baseline --train " + kDir + "/a/task1_en_disjoint_train.jsonl --test " + kDir +
              "/a/task1_en_disjoint_test.jsonl --sweep 2.0") == 1);
}

TEST_CASE("CONTRA_FORGE_LEXDIR overrides the bundled lexicons") {
    REQUIRE(std::system(("mkdir -p " + kDir + "/lex").c_str()) == 0);
    std::ofstream(kDir + "/lex/en_train.json")
        << R"({"language": "en", "person_names": [["Alpha", "m"], ["Bravo", "m"], ["Delta", "m"],)"
        << R"( ["Echo", "m"], ["Foxtrot", "m"], ["Golf", "m"], ["Hotel", "m"], ["India", "m"],)"
        << R"( ["Juliett", "m"], ["Kilo", "m"], ["Lima", "m"], ["Mike", "m"], ["November", "m"],)"
        << R"( ["Oscar", "m"], ["Papa", "m"]],)"
        << R"( "place_names": ["Quebec", "Romeo", "Sierra", "Tango", "Uniform", "Victor",)"
        << R"( "Whiskey", "Xray", "Yankee", "Zulu", "Amber", "Bay", "Cove", "Dune", "Elm"]})";
    std::ofstream(kDir + "/lex/en_test.json")
        << R"({"language": "en", "person_names": [["Ada", "f"], ["Bea", "f"], ["Cleo", "f"],)"
        << R"( ["Dora", "f"], ["Eve", "f"], ["Fay", "f"], ["Gwen", "f"], ["Hana", "f"],)"
        << R"( ["Iris", "f"], ["Jade", "f"], ["Kara", "f"], ["Lena", "f"], ["Mona", "f"],)"
        << R"( ["Nina", "f"], ["Opal", "f"]],)"
        << R"( "place_names": ["Arbor", "Brook", "Cliff", "Dale", "Eyrie", "Ford", "Glen",)"
        << R"( "Haven", "Isle", "Jetty", "Knoll", "Loch", "Mesa", "Nook", "Oasis"]})";
    std::string cmd = "CONTRA_FORGE_LEXDIR=" + kDir + "/lex " + kCli +
                      " generate --task 1 --lang en --train 20 --test 10 --seed 1 --out " + kDir +
                      "/lex >" + kDir + "/stdout.txt 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    std::string content = slurp(kDir + "/lex/task1_en_disjoint_train.jsonl");
    CHECK(content.find("Zulu") != std::string::npos);  // custom inventory in use
}

TEST_CASE("usage errors exit with 2 and input errors with 1") {
    CHECK(run("generate --task 9 --out " + kDir) == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("verify --input /tmp/no_such_file.jsonl") == 1);
    CHECK(run("verify --input " + kDir + "/a/task1_en_disjoint_train.tsv") == 1);
    CHECK(run("--help") == 0);
}
