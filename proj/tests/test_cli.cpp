#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "maslov/cli.hpp"

using namespace maslov;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("maslov_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string file(const std::string& name) {
    return (scratch() / name).string();
}

void write(const std::string& path, const std::string& text) {
    std::ofstream(path) << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string small_config(const std::string& extra = "") {
    return R"({"n": 1, "seed": 5, "sizes": {"det_restriction": 3, "conjugation": 2, "positive_conjugation": 2,
              "iota_vanishing": 2, "pjp": 3, "homogeneity": 2, "uniqueness": 2, "defect": 4})" +
           extra + "}";
}

} // namespace

TEST_CASE("gen phase writes a loop with expected angle 1") {
    const Run g = run({"gen", "phase", "--theta", "6.2831853", "--n", "1", "--out", file("loop.json")});
    REQUIRE(g.code == 0);
    const Json j = read_json_file(file("loop.json"));
    CHECK(j["n"] == 1);
    CHECK(j["times"].size() == 257);
    CHECK(j["meta"]["expected_angle"].get<double>() == doctest::Approx(1.0).epsilon(1e-7));
    const Run l = run({"loop", "--in", file("loop.json")});
    CHECK(l.code == 0);
    CHECK(Json::parse(l.out)["index"] == 1);
}

TEST_CASE("gen spd / shear / hamiltonian validate") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"gen", "spd", "--n", "2", "--scale", "1", "--seed", "7"},
             {"gen", "shear", "--n", "1"},
             {"gen", "hamiltonian", "--n", "2", "--seed", "3"},
             {"gen", "unitary", "--n", "3", "--seed", "3"},
             {"gen", "mixed", "--n", "2", "--seed", "4", "--samples", "65"}}) {
        auto a = args;
        a.insert(a.end(), {"--out", file("gen.json")});
        REQUIRE(run(a).code == 0);
        const Run v = run({"validate", "--in", file("gen.json")});
        CHECK(v.code == 0);
        CHECK(Json::parse(v.out)["valid"] == true);
    }
    const Json shear = read_json_file(file("gen.json"));
    CHECK(shear["times"].size() == 65);
}

TEST_CASE("shear endpoint is [[1, 1], [0, 1]]") {
    REQUIRE(run({"gen", "shear", "--n", "1", "--out", file("shear.json")}).code == 0);
    const Json j = read_json_file(file("shear.json"));
    const auto end = j["samples"].back().get<std::vector<double>>();
    CHECK(end[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(end[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(end[2]) <= 1e-12);
    CHECK(end[3] == doctest::Approx(1.0).epsilon(1e-12));
    const Run m = run({"mu", "--in", file("shear.json")});
    REQUIRE(m.code == 0);
    const Json v = Json::parse(m.out);
    CHECK(std::abs(v["value"].get<double>()) <= v["err_bound"].get<double>());
}

TEST_CASE("mu of phase pi/3 and of the identity") {
    REQUIRE(run({"gen", "phase", "--theta", "1.0471975511965976", "--out", file("p3.json")}).code == 0);
    const Json v = Json::parse(run({"mu", "--in", file("p3.json")}).out);
    CHECK(v["value"].get<double>() == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
    CHECK(v["converged"] == true);
    REQUIRE(run({"gen", "identity", "--n", "2", "--out", file("id.json")}).code == 0);
    CHECK(Json::parse(run({"mu", "--in", file("id.json")}).out)["value"].get<double>() == 0.0);
    const Json r = Json::parse(run({"rho", "--in", file("p3.json")}).out);
    CHECK(r["rho"].get<double>() == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("outputs are byte-identical across runs") {
    REQUIRE(run({"gen", "mixed", "--n", "2", "--seed", "11", "--out", file("a.json")}).code == 0);
    REQUIRE(run({"gen", "mixed", "--n", "2", "--seed", "11", "--out", file("b.json")}).code == 0);
    CHECK(slurp(file("a.json")) == slurp(file("b.json")));
    CHECK(run({"mu", "--in", file("a.json")}).out == run({"mu", "--in", file("b.json")}).out);
    // Round trip through the file keeps every bit.
    const CoverElement g = path_from_json(read_json_file(file("a.json")));
    CHECK(to_canonical_json(path_to_json(g)) == slurp(file("a.json")));
}

TEST_CASE("invalid input exits 2") {
    CHECK(run({"mu", "--in", file("missing.json")}).code == 2);
    write(file("garbage.json"), "{not json");
    CHECK(run({"validate", "--in", file("garbage.json")}).code == 2);
    write(file("odd.json"), R"({"n": 1, "times": [0, 1], "samples": [[1, 0, 0, 1], [2, 0, 0, 2]]})");
    const Run v = run({"validate", "--in", file("odd.json")});
    CHECK(v.code == 2);
    CHECK(Json::parse(v.out)["valid"] == false);
    CHECK(run({"gen", "phase"}).code == 2);
    CHECK(run({"gen", "phase", "--theta", "1", "--theta", "2", "--n", "3"}).code == 2);
    CHECK(run({"gen", "nonsense"}).code == 2);
    CHECK(run({"mu", "--in", file("a.json"), "--m-max", "21"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"loop", "--in", file("p3.json")}).code == 2);
}

TEST_CASE("coarse ingested paths are resolution failures") {
    // Quarter turns per step: phases are orthogonal, refinement would be needed.
    write(file("coarse.json"),
          R"({"n": 1, "times": [0, 0.5, 1], "samples": [[1, 0, 0, 1], [0, -1, 1, 0], [-1, 0, 0, -1]]})");
    CHECK(run({"mu", "--in", file("coarse.json")}).code == 3);
    CHECK(run({"gen", "phase", "--theta", "100", "--samples", "3"}).code == 3);
}

TEST_CASE("report honours the exit-code contract") {
    write(file("cfg.json"), small_config());
    const Run ok = run({"report", "--config", file("cfg.json"), "--out", "-"});
    CHECK(ok.code == 0);
    const Json j = Json::parse(ok.out);
    CHECK(j["pass"] == true);
    CHECK(j["checks"].size() >= 10);
    for (const auto& c : j["checks"])
        CHECK(c["pass"] == (c["max_violation"].get<double>() <= c["tolerance"].get<double>()));

    write(file("zero.json"),
          small_config(R"(, "tolerances": {"mu": 0, "slack": 0, "det": 0, "chain": 0, "pjp": 0})"));
    CHECK(run({"report", "--config", file("zero.json"), "--out", file("zero_report.json")}).code == 1);
    CHECK(Json::parse(slurp(file("zero_report.json")))["pass"] == false);

    write(file("neg.json"), small_config(R"(, "tolerances": {"slack": -1})"));
    CHECK(run({"report", "--config", file("neg.json")}).code == 2);
    write(file("typo.json"), small_config(R"(, "sedd": 3)"));
    CHECK(run({"report", "--config", file("typo.json")}).code == 2);
    write(file("empty_size.json"), R"({"sizes": {"positive_conjugation": 0}})");
    CHECK(run({"report", "--config", file("empty_size.json")}).code == 2);
}

TEST_CASE("defect on a unitary corpus is a homomorphism") {
    write(file("du.json"), R"({"n": 2, "corpus": "unitary", "sizes": {"defect": 10}})");
    const Run r = run({"defect", "--config", file("du.json")});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["count"] == 10);
    CHECK(j["max_defect"].get<double>() <= 1e-9);
    const Run csv = run({"defect", "--config", file("du.json"), "--format", "csv"});
    CHECK(csv.out.rfind("g_seed,h_seed,defect,mu_defect\n", 0) == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 11);
}

TEST_CASE("baseline files resolve relative to the config") {
    write(file("base.json"), R"({"max_defect": 0.125})");
    write(file("with_base.json"), small_config(R"(, "baseline_file": "base.json")"));
    const RunConfig rc = load_run_config(file("with_base.json"));
    CHECK(rc.baseline_defect.value() == 0.125);
    CHECK(suite_of(rc).baseline_defect.value() == 0.125);
}

TEST_CASE("shipped configs parse") {
    const fs::path root = MASLOV_SOURCE_DIR;
    CHECK_NOTHROW(load_run_config(root / "configs/default_n1.json"));
    CHECK_NOTHROW(load_run_config(root / "configs/defect_n1.json"));
}

TEST_CASE("canonical json formatting") {
    Json j;
    j["b"] = 0.1;
    j["a"] = 3;
    j["c"] = Json::array({1.0, 2.5});
    j["d"] = std::nan("");
    CHECK(to_canonical_json(j) == "{\n  \"b\": 0.10000000000000001,\n  \"a\": 3,\n  \"c\": [1.0, 2.5],\n  \"d\": null\n}\n");
}
