#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "olk/json_io.hpp"

using namespace olk;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(OLK_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_spec(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / ("olk_cli_" + name + ".json");
    std::ofstream(path) << body;
    return path.string();
}

double value_of(const Run& r) { return real_from_json(Json::parse(r.out).at("value"), "value"); }

}  // namespace

TEST_CASE("eval computes closed-form values") {
    const auto lux = write_spec("lux", R"({"f": [3, 4], "weight": {"kind": "constant", "c": 1},
                                          "phi": {"kind": "power", "p": 2}})");
    const Run r = run("eval norm-luxemburg --spec " + lux);
    CHECK(r.code == 0);
    CHECK(value_of(r) == doctest::Approx(5.0).epsilon(1e-14));

    const auto mod = write_spec("mod", R"({"f": [8, 1], "v": [4, 1], "phi": {"kind": "power", "p": 2}})");
    CHECK(value_of(run("eval modular-M --spec " + mod)) == doctest::Approx(17.0));

    const auto conj = write_spec("conj", R"({"t": 3, "phi": {"kind": "power", "p": 2, "normalized": true}})");
    CHECK(value_of(run("eval conjugate --spec " + conj)) == doctest::Approx(4.5));

    const auto fund = write_spec("fund", R"({"t": 4, "weight": {"kind": "constant", "c": 1},
                                           "phi": {"kind": "power", "p": 2}})");
    CHECK(value_of(run("eval fundamental-env --spec " + fund)) == doctest::Approx(2.0));
    CHECK(value_of(run("eval fundamental-G --spec " + fund)) == doctest::Approx(2.0));

    const auto rr = run("eval rearrange --spec " + write_spec("re", R"({"f": [1, 3, 2]})"));
    const StepFn fs = stepfn_from_json(Json::parse(rr.out).at("value"), "value");
    CHECK(fs.values() == std::vector<double>{3.0, 2.0, 1.0, 0.0});
}

TEST_CASE("envelope-P reports its bounds") {
    const auto p = write_spec("envp", R"({"f": {"breakpoints": [0, 1, 2, "inf"], "values": [2, 2, 0]},
                                         "weight": {"kind": "step", "breakpoints": [0, 1, 2, "inf"], "values": [4, 1, 0]},
                                         "phi": {"kind": "power", "p": 2}})");
    const Run r = run("eval envelope-P --tol 1e-9 --spec " + p);
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(real_from_json(j["value"], "value") == doctest::Approx(3.2).epsilon(1e-7));
    CHECK(real_from_json(j["lower"], "lower") <= real_from_json(j["value"], "value"));
    CHECK(real_from_json(j["upper"], "upper") == doctest::Approx(5.0));
}

TEST_CASE("malformed input exits with code 2") {
    CHECK(run("eval norm-luxemburg --spec /nonexistent/spec.json").code == 2);
    CHECK(run("eval norm-luxemburg --spec " + write_spec("bad", "{ not json")).code == 2);
    CHECK(run("eval norm-luxemburg --spec " + write_spec("nophi", R"({"f": [1], "weight": {"kind": "constant", "c": 1}})"))
              .code == 2);
    CHECK(run("eval frobnicate --spec " + write_spec("any", "{}")).code == 2);
    CHECK(run("check --suite no-such-suite").code == 2);
    CHECK(run("check --suite exchange --all").code == 2);
    CHECK(run("check").code == 2);
}

TEST_CASE("precondition violations exit with code 2") {
    const auto ex = write_spec("ex", R"({"s": [1, 2], "t": [2, 1], "phi": {"kind": "power", "p": 2}})");
    CHECK(run("check --suite exchange --spec " + ex).code == 2);
    const auto ok = write_spec("exok", R"({"s": [2, 1], "t": [2, 1], "phi": {"kind": "power", "p": 2}})");
    const Run r = run("check --suite exchange --spec " + ok);
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["rhs"] == 4.5);
}

TEST_CASE("check output is reproducible and replayable") {
    const Run a = run("check --suite holder --trials 25 --seed 5 --no-timestamp --threads 1");
    const Run b = run("check --suite holder --trials 25 --seed 5 --no-timestamp --threads 3");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    const Run csv = run("check --suite exchange --trials 5 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("suite,trial,seed,lhs,rhs,verdict\n", 0) == 0);

    const Run rep = run("check --suite exchange --replay 12345 --trial 3");
    CHECK(rep.code == 0);
    CHECK(Json::parse(rep.out)["verdict"] == "pass");
}

TEST_CASE("suites subcommand lists every suite") {
    const Run r = run("suites");
    CHECK(r.code == 0);
    CHECK(r.out.find("triangle-envelope") != std::string::npos);
    CHECK(r.out.find("prop-finite") != std::string::npos);
}
