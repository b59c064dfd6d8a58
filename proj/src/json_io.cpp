#include "olk/json_io.hpp"

#include <cstdio>

namespace olk {

namespace {

const Json& require(const Json& j, const char* key, const std::string& field) {
    if (!j.is_object() || !j.contains(key)) throw SpecError(field + ": missing field \"" + key + "\"");
    return j.at(key);
}

std::vector<double> reals(const Json& j, const std::string& field) {
    if (!j.is_array()) throw SpecError(field + ": expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(real_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

template <class F>
auto wrap(const std::string& field, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SpecError&) {
        throw;
    } catch (const std::exception& e) {
        throw SpecError(field + ": " + e.what());
    }
}

}  // namespace

double real_from_json(const Json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "infinity" || s == "Infinity") return kInf;
    }
    throw SpecError(field + ": expected a number or \"inf\"");
}

Json real_to_json(double x) {
    if (std::isinf(x)) return x > 0 ? Json("inf") : Json("-inf");
    // 17 significant digits round-trip every double.
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return Json::parse(buf);
}

StepFn stepfn_from_json(const Json& j, const std::string& field) {
    if (j.is_array()) return seq_to_step(seq_from_json(j, field));
    if (j.is_object() && j.contains("seq")) return seq_to_step(seq_from_json(j.at("seq"), field + ".seq"));
    auto b = reals(require(j, "breakpoints", field), field + ".breakpoints");
    auto v = reals(require(j, "values", field), field + ".values");
    return wrap(field, [&] { return StepFn(std::move(b), std::move(v)); });
}

Json stepfn_to_json(const StepFn& f) {
    Json j;
    j["breakpoints"] = Json::array();
    j["values"] = Json::array();
    for (double b : f.breakpoints()) j["breakpoints"].push_back(real_to_json(b));
    for (double v : f.values()) j["values"].push_back(real_to_json(v));
    return j;
}

Seq seq_from_json(const Json& j, const std::string& field) {
    if (j.is_object() && j.contains("seq")) return seq_from_json(j.at("seq"), field + ".seq");
    auto e = reals(j, field);
    for (double x : e)
        if (!std::isfinite(x)) throw SpecError(field + ": sequence entries must be finite");
    return Seq(std::move(e));
}

Json seq_to_json(const Seq& x) {
    Json j = Json::array();
    for (double v : x.entries) j.push_back(real_to_json(v));
    return j;
}

OrliczFn phi_from_json(const Json& j, const std::string& field) {
    const auto kind = require(j, "kind", field);
    if (!kind.is_string()) throw SpecError(field + ".kind: expected a string");
    const auto k = kind.get<std::string>();
    return wrap(field, [&] {
        if (k == "power") {
            const double p = real_from_json(require(j, "p", field), field + ".p");
            const bool normalized = j.value("normalized", false);
            if (normalized) return OrliczFn::power_normalized(p);
            const double scale = j.contains("scale") ? real_from_json(j.at("scale"), field + ".scale") : 1.0;
            return OrliczFn::power(p, scale);
        }
        if (k == "expm1") return OrliczFn::expm1();
        if (k == "pwl") {
            const auto& pts = require(j, "points", field);
            if (!pts.is_array()) throw SpecError(field + ".points: expected an array of [t, y] pairs");
            std::vector<std::pair<double, double>> v;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const auto sub = field + ".points[" + std::to_string(i) + "]";
                if (!pts[i].is_array() || pts[i].size() != 2) throw SpecError(sub + ": expected [t, y]");
                v.emplace_back(real_from_json(pts[i][0], sub), real_from_json(pts[i][1], sub));
            }
            return OrliczFn::pwl(std::move(v));
        }
        throw SpecError(field + ".kind: unknown Orlicz family \"" + k + "\"");
    });
}

Json phi_to_json(const OrliczFn& phi) {
    Json j;
    switch (phi.kind()) {
        case OrliczFn::Kind::power:
            j["kind"] = "power";
            j["p"] = real_to_json(phi.exponent());
            j["scale"] = real_to_json(phi.scale());
            break;
        case OrliczFn::Kind::expm1: j["kind"] = "expm1"; break;
        case OrliczFn::Kind::pwl:
            j["kind"] = "pwl";
            j["points"] = Json::array();
            for (std::size_t i = 1; i < phi.points().size(); ++i)
                j["points"].push_back(Json::array({real_to_json(phi.points()[i].first), real_to_json(phi.points()[i].second)}));
            break;
    }
    return j;
}

Weight weight_from_json(const Json& j, const std::string& field) {
    const auto kind = require(j, "kind", field);
    if (!kind.is_string()) throw SpecError(field + ".kind: expected a string");
    const auto k = kind.get<std::string>();
    return wrap(field, [&] {
        if (k == "constant") {
            const double c = j.contains("c") ? real_from_json(j.at("c"), field + ".c") : 1.0;
            const double end = j.contains("end") ? real_from_json(j.at("end"), field + ".end") : kInf;
            return Weight::constant(c, end);
        }
        if (k == "power") {
            const double g = real_from_json(require(j, "gamma", field), field + ".gamma");
            const double coef = j.contains("coef") ? real_from_json(j.at("coef"), field + ".coef") : 1.0;
            return Weight::power(g, coef);
        }
        if (k == "step") {
            if (j.contains("seq")) return Weight::from_sequence(seq_from_json(j.at("seq"), field + ".seq"));
            return Weight::step(stepfn_from_json(j, field));
        }
        if (k == "example314") return Weight::example314(j.value("kmax", 8));
        if (k == "example415") return Weight::example415(j.value("kmax", 8));
        throw SpecError(field + ".kind: unknown weight \"" + k + "\"");
    });
}

Json weight_to_json(const Weight& w) {
    Json j;
    switch (w.kind()) {
        case Weight::Kind::constant:
            j["kind"] = "constant";
            j["c"] = real_to_json(w.constant_value());
            if (std::isfinite(w.domain_end())) j["end"] = real_to_json(w.domain_end());
            break;
        case Weight::Kind::power:
            j["kind"] = "power";
            j["gamma"] = real_to_json(w.gamma());
            j["coef"] = real_to_json(w.pieces().front().coef);
            break;
        case Weight::Kind::step: {
            j = stepfn_to_json(w.as_step());
            j["kind"] = "step";
            break;
        }
        case Weight::Kind::example314: j["kind"] = "example314"; j["kmax"] = w.kmax(); break;
        case Weight::Kind::example415: j["kind"] = "example415"; j["kmax"] = w.kmax(); break;
        case Weight::Kind::envelope: j["kind"] = "envelope"; j["name"] = w.name(); break;
    }
    return j;
}

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SpecError(source + ": " + e.what());
    }
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace olk
