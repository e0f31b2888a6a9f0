#pragma once

// Serialization: rationals as "num/den" plus a fixed 6-decimal rendering,
// reports and path records as JSON (insertion-ordered keys) or CSV, and an
// atomic file writer so consumers never observe a partial file.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "exact.hpp"
#include "sim.hpp"

namespace cpdo::io {

using json = nlohmann::ordered_json;

// shortest round-trip rendering; identical input bits give identical text
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string format_fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// 4 significant digits, for approximation output
inline std::string format_sig4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline std::string format_rational(const rational& r) {
    std::ostringstream os;
    os << numerator(r) << '/' << denominator(r);
    return os.str();
}

inline double rational_to_double(const rational& r) {
    return r.convert_to<double>();
}

inline json rational_json(const rational& r) {
    return json{{"fraction", format_rational(r)},
                {"decimal", format_fixed6(rational_to_double(r))}};
}

inline json report_to_json(const EnsembleReport& r) {
    json j;
    j["params"] = {{"gamma", r.gamma},
                   {"delta", r.delta},
                   {"p_heads", r.p_heads},
                   {"cash_in_level", r.cash_in_level}};
    j["n_paths"] = r.n_paths;
    j["max_tosses"] = r.max_tosses;
    j["seed"] = r.seed;
    j["cash_out"] = {{"count", r.n_cash_out},
                     {"proportion", r.prop_cash_out},
                     {"se", r.se_cash_out}};
    j["cash_in"] = {{"count", r.n_cash_in},
                    {"proportion", r.prop_cash_in},
                    {"se", r.se_cash_in}};
    j["alive"] = {{"count", r.n_alive},
                  {"proportion", r.prop_alive},
                  {"se", r.se_alive}};
    j["final_x"] = {{"mean", r.mean_final_x}, {"variance", r.var_final_x}};
    j["near_tie_paths"] = r.near_tie_paths;
    j["ruin_histogram"] =
        {{"bucket_width", r.ruin_bucket_width}, {"counts", r.ruin_histogram}};
    return j;
}

inline std::string report_to_csv(const EnsembleReport& r) {
    std::ostringstream os;
    os << "field,value\n";
    os << "gamma," << format_double(r.gamma) << '\n';
    os << "delta," << format_double(r.delta) << '\n';
    os << "p_heads," << format_double(r.p_heads) << '\n';
    os << "cash_in_level," << format_double(r.cash_in_level) << '\n';
    os << "n_paths," << r.n_paths << '\n';
    os << "max_tosses," << r.max_tosses << '\n';
    os << "seed," << r.seed << '\n';
    os << "cash_out_count," << r.n_cash_out << '\n';
    os << "cash_out_proportion," << format_double(r.prop_cash_out) << '\n';
    os << "cash_out_se," << format_double(r.se_cash_out) << '\n';
    os << "cash_in_count," << r.n_cash_in << '\n';
    os << "cash_in_proportion," << format_double(r.prop_cash_in) << '\n';
    os << "cash_in_se," << format_double(r.se_cash_in) << '\n';
    os << "alive_count," << r.n_alive << '\n';
    os << "alive_proportion," << format_double(r.prop_alive) << '\n';
    os << "alive_se," << format_double(r.se_alive) << '\n';
    os << "final_x_mean," << format_double(r.mean_final_x) << '\n';
    os << "final_x_variance," << format_double(r.var_final_x) << '\n';
    os << "near_tie_paths," << r.near_tie_paths << '\n';
    os << "ruin_bucket_width," << format_double(r.ruin_bucket_width) << '\n';
    for (std::size_t i = 0; i < r.ruin_histogram.size(); ++i)
        os << "ruin_bucket_" << i << ',' << r.ruin_histogram[i] << '\n';
    return os.str();
}

inline json path_to_json(const PathRecord& r) {
    json j;
    j["path_id"] = r.path_id;
    j["termination"] = to_string(r.termination);
    j["tosses_used"] = r.tosses_used;
    j["n_heads"] = r.n_heads;
    j["final_x"] = r.final_x;
    j["near_tie"] = r.near_tie;
    return j;
}

inline json paths_to_json(const std::vector<PathRecord>& records) {
    json arr = json::array();
    for (const PathRecord& r : records) arr.push_back(path_to_json(r));
    return arr;
}

inline std::string paths_to_csv(const std::vector<PathRecord>& records) {
    std::ostringstream os;
    os << "path_id,termination,tosses_used,n_heads,final_x,near_tie\n";
    for (const PathRecord& r : records)
        os << r.path_id << ',' << to_string(r.termination) << ','
           << r.tosses_used << ',' << r.n_heads << ','
           << format_double(r.final_x) << ',' << (r.near_tie ? 1 : 0) << '\n';
    return os.str();
}

inline json trajectory_to_json(const PathRecord& r) {
    json j = path_to_json(r);
    json traj = json::array();
    long t = 1;
    for (const PathPoint& p : r.trajectory)
        traj.push_back({{"toss", t++}, {"outcome", p.outcome}, {"x", p.x}});
    j["trajectory"] = std::move(traj);
    return j;
}

inline std::string trajectory_to_csv(const PathRecord& r) {
    std::ostringstream os;
    os << "toss,outcome,x\n";
    long t = 1;
    for (const PathPoint& p : r.trajectory)
        os << t++ << ',' << p.outcome << ',' << format_double(p.x) << '\n';
    return os.str();
}

// write to a sibling temp file, then rename over the target
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace cpdo::io
