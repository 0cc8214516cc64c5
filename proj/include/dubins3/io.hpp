#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "dubins3/three_point.hpp"
#include "dubins3/tour.hpp"
#include "json.hpp"

namespace dubins3::io {

namespace detail {

inline double finite_field(const nlohmann::json& obj, const char* key, const char* where) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw std::runtime_error(std::string(where) + ": missing numeric field \"" + key + "\"");
    const double v = obj[key].get<double>();
    if (!std::isfinite(v))
        throw std::runtime_error(std::string(where) + ": field \"" + key + "\" is not finite");
    return v;
}

inline nlohmann::json parse_or_throw(const std::string& text, const char* what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("invalid ") + what + " JSON: " + e.what());
    }
}

}  // namespace detail

/// Instance format: {"rmin": r, "start": {"x","y","theta"},
///                   "mid": {"x","y"}, "end": {"x","y","theta"}}.
inline ThreePointInstance instance_from_json(const std::string& text) {
    const auto j = detail::parse_or_throw(text, "instance");
    for (const char* key : {"rmin", "start", "mid", "end"})
        if (!j.contains(key))
            throw std::runtime_error(std::string("instance: missing field \"") + key + "\"");
    const auto& s = j["start"];
    const auto& m = j["mid"];
    const auto& e = j["end"];
    ThreePointInstance inst{
        {{detail::finite_field(s, "x", "start"), detail::finite_field(s, "y", "start")},
         norm_2pi(detail::finite_field(s, "theta", "start"))},
        {detail::finite_field(m, "x", "mid"), detail::finite_field(m, "y", "mid")},
        {{detail::finite_field(e, "x", "end"), detail::finite_field(e, "y", "end")},
         norm_2pi(detail::finite_field(e, "theta", "end"))},
        detail::finite_field(j, "rmin", "instance")};
    validate(inst);
    return inst;
}

/// Tour format: {"rmin": r, "poses": [{"x","y","theta"}, ...]}. The length
/// is recomputed on load, so hand-edited files stay consistent.
inline Tour tour_from_json(const std::string& text) {
    const auto j = detail::parse_or_throw(text, "tour");
    if (!j.contains("poses") || !j["poses"].is_array())
        throw std::runtime_error("tour: missing \"poses\" array");
    Tour tour;
    tour.rmin = detail::finite_field(j, "rmin", "tour");
    for (const auto& p : j["poses"]) {
        tour.poses.push_back({{detail::finite_field(p, "x", "pose"),
                               detail::finite_field(p, "y", "pose")},
                              norm_2pi(detail::finite_field(p, "theta", "pose"))});
    }
    validate(tour);
    tour.total_length = tour_length(tour.poses, tour.rmin);
    return tour;
}

inline std::string tour_to_json(const Tour& tour) {
    nlohmann::json j;
    j["rmin"] = tour.rmin;
    j["total_length"] = tour.total_length;
    j["poses"] = nlohmann::json::array();
    for (const Pose& p : tour.poses)
        j["poses"].push_back({{"x", p.position.x}, {"y", p.position.y}, {"theta", p.heading}});
    return j.dump(2) + "\n";
}

/// Points file: one "x,y" pair per line; blank lines are skipped.
inline std::vector<Point> points_from_csv(std::istream& in) {
    std::vector<Point> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        double x = 0.0, y = 0.0;
        char comma = 0;
        if (!(row >> x >> comma >> y) || comma != ',' || !std::isfinite(x) || !std::isfinite(y))
            throw std::runtime_error("points line " + std::to_string(lineno) + ": expected \"x,y\"");
        std::string tail;
        if (row >> tail)
            throw std::runtime_error("points line " + std::to_string(lineno) +
                                     ": trailing content \"" + tail + "\"");
        pts.push_back({x, y});
    }
    return pts;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace dubins3::io
