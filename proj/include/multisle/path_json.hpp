#pragma once

// JSON round-trip for paths (debugging, golden tests).

#include <json.hpp>

#include "contour.hpp"

namespace multisle {

inline nlohmann::json segment_to_json(const Segment& s) {
    nlohmann::json j;
    if (s.is_arc) {
        j["type"] = "arc";
        j["center"] = {s.center.real(), s.center.imag()};
        j["radius"] = s.radius;
        j["ang0"] = s.ang0;
        j["ang1"] = s.ang1;
    } else {
        j["type"] = "segment";
        j["p0"] = {s.p0.real(), s.p0.imag()};
        j["p1"] = {s.p1.real(), s.p1.imag()};
    }
    return j;
}

inline nlohmann::json path_to_json(const Path& p) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : p) j.push_back(segment_to_json(s));
    return j;
}

inline Segment segment_from_json(const nlohmann::json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "arc") {
        auto c = j.at("center");
        return Segment::arc(cplx(c.at(0).get<double>(), c.at(1).get<double>()),
                            j.at("radius").get<double>(), j.at("ang0").get<double>(),
                            j.at("ang1").get<double>());
    }
    if (type != "segment") throw invalid_argument("path json: unknown segment type");
    auto a = j.at("p0");
    auto b = j.at("p1");
    return Segment::line(cplx(a.at(0).get<double>(), a.at(1).get<double>()),
                         cplx(b.at(0).get<double>(), b.at(1).get<double>()));
}

inline Path path_from_json(const nlohmann::json& j) {
    Path p;
    for (const auto& e : j) p.push_back(segment_from_json(e));
    return p;
}

} // namespace multisle
