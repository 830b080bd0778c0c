#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lipcert/json_io.hpp"

using lipcert::Json;
namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("lipcert_cli_" + std::to_string(static_cast<long>(::getpid())));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

std::string write_file(const std::string& name, const std::string& text) {
    const std::string path = path_of(name);
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct RunResult {
    int code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string capture = path_of("stdout.txt");
    const std::string cmd = std::string(LIPCERT_BIN) + " " + args + " > " + capture + " 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return {WEXITSTATUS(status), slurp(capture)};
}

Json run_json(const std::string& args, int expected_code) {
    const RunResult r = run(args);
    INFO("command: " << args << "\noutput: " << r.output);
    CHECK(r.code == expected_code);
    Json doc = Json::parse(r.output, nullptr, false);
    REQUIRE(!doc.is_discarded());
    return doc;
}

// Two constant scalar members on a two-point space.
std::string const_family() {
    return write_file("const.json", R"({
      "domain": {"dist": [[0, 1], [1, 0]]},
      "norm": "sup", "dim": 1, "base": 0,
      "members": [[[0.3], [0.3]], [[-0.2], [-0.2]]]
    })");
}

// The members x and -x on {0, 1}; equal norms pointwise but opposite values.
std::string flip_family() {
    return write_file("flip.json", R"({
      "domain": {"dist": [[0, 1], [1, 0]]},
      "norm": "sup", "dim": 1, "base": 0,
      "members": [[[0], [1]], [[0], [-1]]]
    })");
}

std::string line_space() {
    return write_file("space.json", R"({"dist": [[0, 1, 3], [1, 0, 2], [3, 2, 0]]})");
}

std::string one_part_cover() {
    return write_file("onepart.json",
                      R"({"ambient": "points", "size": 2, "parts": [[0, 1]]})");
}

}  // namespace

TEST_CASE("validate accepts spaces and families, exit 0") {
    Json doc = run_json("validate " + line_space(), 0);
    CHECK(doc.at("valid") == true);
    CHECK(doc.at("findings").empty());
    CHECK(doc.at("manifest").at("command") == "validate");
    CHECK(doc.contains("schema"));

    doc = run_json("validate " + const_family(), 0);
    CHECK(doc.at("valid") == true);
}

TEST_CASE("validate reports the first axiom violation, exit 1") {
    const std::string asym = write_file("asym.json", R"({"dist": [[0, 1], [2, 0]]})");
    const Json doc = run_json("validate " + asym, 1);
    CHECK(doc.at("valid") == false);
    REQUIRE(!doc.at("findings").empty());
    CHECK(doc.at("findings").at(0).at("axiom") == "Asymmetry");
}

TEST_CASE("malformed requests exit 2 with a diagnostic code") {
    auto error_code = [](const std::string& args) {
        const Json doc = run_json(args, 2);
        return doc.at("error").at("code").get<std::string>();
    };

    CHECK(error_code("validate " + path_of("nosuch.json")) == "Io");
    CHECK(error_code("validate " + write_file("broken.json", "not json {")) == "Schema");
    CHECK(error_code("check --condition bogus --family " + const_family()) == "Usage");
    CHECK(error_code("check --condition B --family " + const_family()) == "MissingWitness");
    CHECK(error_code("check --condition lambda --family " + const_family()) ==
          "MissingWitness");
    CHECK(error_code("check --condition equicontinuity --family " + const_family() +
                     " --eps 1") == "Usage");
    const std::string bad_cover =
        write_file("badcover.json", R"({"ambient": "points", "size": 3, "parts": [[0, 9]]})");
    CHECK(error_code("check --condition B --family " + const_family() + " --cover " +
                     bad_cover) == "CoverMismatch");
    CHECK(error_code("fixture bogus") == "Usage");
    CHECK(error_code("fixture riesz --p 1") == "Shape");
    CHECK(error_code("fixture riesz --p 11") == "TooLarge");
    CHECK(error_code("oracle") == "Usage");
    CHECK(error_code("synthesize --kind bogus --family " + const_family()) == "Usage");
    CHECK(error_code("synthesize --kind equicontinuity --family " + const_family()) ==
          "MissingWitness");

    CHECK(run("").code == 2);  // no subcommand; CLI11 usage text, not JSON
}

TEST_CASE("check maps verdicts to exit codes") {
    const std::string fam = const_family();
    const std::string cover = one_part_cover();

    Json doc = run_json("check --condition B --family " + fam + " --cover " + cover +
                            " --eps 0",
                        0);
    CHECK(doc.at("report").at("verdict") == "pass");
    CHECK(doc.at("report").at("achieved").get<double>() == 0);

    doc = run_json("check --condition DS --family " + flip_family() + " --cover " + cover +
                       " --eps 0.5",
                   1);
    CHECK(doc.at("report").at("verdict") == "fail");
    REQUIRE(doc.at("report").contains("violation"));
    CHECK(doc.at("report").at("violation").at("part") == 0);

    doc = run_json("check --condition equinormed --family " + fam + " --eps 0", 0);
    CHECK(doc.at("report").at("verdict") == "pass");

    // The only off-diagonal pair sits at distance 1: invisible below it,
    // oscillation 1 once the threshold reaches it.
    doc = run_json("check --condition equicontinuity --family " + flip_family() +
                       " --delta 0.25 --eps 0.1",
                   0);
    CHECK(doc.at("report").at("achieved").get<double>() == 0);
    doc = run_json("check --condition equicontinuity --family " + flip_family() +
                       " --delta 1 --eps 0.5",
                   1);
    CHECK(doc.at("report").at("achieved").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("synthesize emits a witness that re-checks clean") {
    const std::string gen = path_of("gen.json");
    run_json("gen --seed 11 --points 6 --members 3 --dim 2 --out " + gen, 0);

    const std::string bwit = path_of("bwit.json");
    Json doc = run_json("synthesize --kind B --family " + gen + " --eps 0.5 --out " + bwit, 0);
    CHECK(doc.at("verification").at("verdict") == "pass");
    CHECK(!doc.at("witness").at("parts").empty());

    // The emitted witness document feeds straight back into check.
    doc = run_json("check --condition B --family " + gen + " --cover " + bwit + " --eps 0.5",
                   0);
    CHECK(doc.at("report").at("verdict") == "pass");

    doc = run_json("synthesize --kind DS --family " + gen + " --eps 0.5", 0);
    CHECK(doc.at("verification").at("verdict") == "pass");

    doc = run_json("synthesize --kind equinorm --family " + gen + " --eps 0.5", 0);
    CHECK(doc.at("witness").contains("Y"));
    CHECK(doc.at("verification").at("verdict") == "pass");

    doc = run_json("synthesize --kind flatness --family " + gen + " --eps 0.25", 0);
    CHECK(doc.at("witness").contains("delta"));

    doc = run_json("synthesize --kind ds-cover --family " + gen + " --delta 0.1 --eps 10", 0);
    CHECK(doc.at("verification").at("verdict") == "pass");
}

TEST_CASE("fixture verifies its claims and exits 0") {
    Json doc = run_json("fixture riesz --p 3", 0);
    CHECK(doc.at("verdict") == "pass");
    REQUIRE(!doc.at("outcomes").empty());
    for (const auto& o : doc.at("outcomes")) CHECK(o.at("observed") == o.at("expected"));
    CHECK(doc.at("fixture").contains("space"));

    doc = run_json("fixture zminus --K 4", 0);
    CHECK(doc.at("verdict") == "pass");
}

TEST_CASE("fixture output feeds validate and oracle unedited") {
    const std::string fix = path_of("fix.json");
    run_json("fixture linfty --out " + fix, 0);

    Json doc = run_json("validate " + fix, 0);
    CHECK(doc.at("valid") == true);

    doc = run_json("oracle --space " + fix, 0);
    const auto& exact = doc.at("profile").at("exact");
    const auto& greedy = doc.at("profile").at("greedy");
    REQUIRE(!exact.empty());
    REQUIRE(exact.size() == greedy.size());
    for (size_t i = 0; i < exact.size(); ++i)
        CHECK(exact.at(i).get<int>() <= greedy.at(i).get<int>());
    CHECK(exact.back().get<int>() == 1);

    doc = run_json("oracle --family " + fix + " --kind B --parts 2", 0);
    CHECK(doc.at("min_oscillation").get<double>() >= 0);

    // Nine points exceed the exact-partition budget.
    const std::string big = path_of("big.json");
    run_json("gen --seed 3 --points 9 --members 2 --dim 1 --out " + big, 0);
    doc = run_json("oracle --family " + big + " --kind B --parts 2", 2);
    CHECK(doc.at("error").at("code") == "TooLarge");
}

TEST_CASE("identical invocations emit identical bytes") {
    const std::string a = path_of("rerun_a.json");
    const std::string b = path_of("rerun_b.json");
    run_json("fixture riesz --p 3 --out " + a, 0);
    run_json("fixture riesz --p 3 --out " + b, 0);
    const std::string bytes_a = slurp(a);
    CHECK(!bytes_a.empty());
    CHECK(bytes_a == slurp(b));

    run_json("gen --seed 42 --out " + a, 0);
    run_json("gen --seed 42 --out " + b, 0);
    CHECK(slurp(a) == slurp(b));

    run_json("gen --seed 43 --out " + b, 0);
    const Json da = Json::parse(slurp(a));
    const Json db = Json::parse(slurp(b));
    CHECK(da.at("family") != db.at("family"));
}
