#include <doctest.h>

#include "olk/json_io.hpp"

using namespace olk;

TEST_CASE("reals accept inf strings and round trip with full precision") {
    CHECK(std::isinf(real_from_json(Json("inf"), "x")));
    CHECK(std::isinf(real_from_json(Json("infinity"), "x")));
    CHECK(real_from_json(Json(2.5), "x") == 2.5);
    CHECK_THROWS_AS(real_from_json(Json("abc"), "x"), SpecError);
    CHECK(real_from_json(real_to_json(0.1), "x") == 0.1);
    CHECK(real_to_json(kInf) == Json("inf"));
}

TEST_CASE("step function forms") {
    const StepFn f = stepfn_from_json(Json::parse(R"({"breakpoints":[0,1,"inf"],"values":[2,0]})"), "f");
    CHECK(f == StepFn({0.0, 1.0, kInf}, {2.0, 0.0}));
    CHECK(stepfn_from_json(stepfn_to_json(f), "f") == f);
    CHECK(stepfn_from_json(Json::parse("[3, 1]"), "f") == seq_to_step({3.0, 1.0}));
    CHECK(stepfn_from_json(Json::parse(R"({"seq":[3, 1]})"), "f") == seq_to_step({3.0, 1.0}));
    try {
        stepfn_from_json(Json::parse(R"({"breakpoints":[0,2,1],"values":[1,1]})"), "f");
        FAIL("expected SpecError");
    } catch (const SpecError& e) {
        CHECK(std::string(e.what()).find('f') != std::string::npos);
    }
    CHECK_THROWS_AS(stepfn_from_json(Json::parse(R"({"values":[1]})"), "f"), SpecError);
}

TEST_CASE("Orlicz functions round trip") {
    for (const OrliczFn& phi : {OrliczFn::power(2.5), OrliczFn::power_normalized(3.0), OrliczFn::expm1(),
                                OrliczFn::pwl({{1.0, 0.5}, {2.0, 2.0}})}) {
        const OrliczFn back = phi_from_json(phi_to_json(phi));
        for (double u : {0.1, 1.0, 3.7}) CHECK(back(u) == phi(u));
    }
    CHECK_THROWS_AS(phi_from_json(Json::parse(R"({"kind":"cosh"})")), SpecError);
    CHECK_THROWS_AS(phi_from_json(Json::parse(R"({"kind":"power","p":0.5})")), SpecError);
}

TEST_CASE("weights round trip") {
    for (const Weight& w : {Weight::constant(2.0), Weight::constant(1.0, 3.0), Weight::power(0.5, 2.0),
                            Weight::step(StepFn({0.0, 1.0, kInf}, {2.0, 1.0})), Weight::example314(5),
                            Weight::example415(8)}) {
        const Weight back = weight_from_json(weight_to_json(w));
        CHECK(back.kind() == w.kind());
        for (double t : {0.5, 0.9}) CHECK(back.cumulative(t) == w.cumulative(t));
    }
    CHECK_THROWS_AS(weight_from_json(Json::parse(R"({"kind":"power","gamma":-1})")), SpecError);
    CHECK_THROWS_AS(weight_from_json(Json::parse(R"({"kind":"example314","kmax":0})")), SpecError);
}

TEST_CASE("parse errors carry their position") {
    try {
        parse_json("{\n  \"a\": ,\n}", "bundle.json");
        FAIL("expected SpecError");
    } catch (const SpecError& e) {
        CHECK(std::string(e.what()).find("bundle.json") != std::string::npos);
    }
}

TEST_CASE("FNV-1a reference values") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
