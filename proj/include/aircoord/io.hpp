#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aircoord/analysis.hpp"
#include "aircoord/types.hpp"

namespace aircoord::io {

using json = nlohmann::ordered_json;

/// Fixed 6-significant-digit, locale-independent number formatting for all
/// text outputs.
inline std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

inline std::string fmt6(const std::optional<double>& v) { return v ? fmt6(*v) : ""; }

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const {
        std::string out;
        for (std::size_t i = 0; i < header.size(); ++i)
            out += (i ? "," : "") + header[i];
        out += "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out += (i ? "," : "") + row[i];
            out += "\n";
        }
        return out;
    }
};

/// Writes a file once, atomically: temp file in the same directory, then
/// rename over the destination.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "."
                                                                   : path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

inline const std::vector<std::string>& equilibrium_columns() {
    static const std::vector<std::string> cols = {
        "structure",      "method",         "fee",
        "fare",           "theta",          "demand",
        "lump_sum",       "cost_share",     "airline_profit",
        "airport_profit", "airport_utility","total_profit",
        "consumer_surplus","welfare",       "tax_revenue",
        "swe",            "ge"};
    return cols;
}

inline std::vector<std::string> equilibrium_row(const ChannelParams& pr, const Equilibrium& eq) {
    const double swe_v = analysis::swe(pr, eq);
    const auto ge_v = analysis::ge(pr, eq);
    return {to_string(eq.structure),
            to_string(eq.method),
            fmt6(eq.fee),
            fmt6(eq.fare),
            fmt6(eq.theta),
            fmt6(eq.demand),
            fmt6(eq.lump_sum),
            fmt6(eq.cost_share),
            fmt6(eq.airline_profit),
            fmt6(eq.airport_profit),
            fmt6(eq.airport_utility),
            fmt6(eq.total_profit),
            fmt6(eq.consumer_surplus),
            fmt6(eq.welfare),
            fmt6(eq.tax_revenue),
            fmt6(swe_v),
            ge_v ? fmt6(*ge_v) : ""};
}

inline json equilibrium_json(const ChannelParams& pr, const Equilibrium& eq) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    json j;
    j["structure"] = to_string(eq.structure);
    j["method"] = to_string(eq.method);
    j["fee"] = opt(eq.fee);
    j["fare"] = eq.fare;
    j["theta"] = eq.theta;
    j["demand"] = eq.demand;
    j["lump_sum"] = opt(eq.lump_sum);
    j["cost_share"] = opt(eq.cost_share);
    j["airline_profit"] = opt(eq.airline_profit);
    j["airport_profit"] = opt(eq.airport_profit);
    j["airport_utility"] = opt(eq.airport_utility);
    j["total_profit"] = eq.total_profit;
    j["consumer_surplus"] = eq.consumer_surplus;
    j["welfare"] = eq.welfare;
    j["tax_revenue"] = eq.tax_revenue;
    j["swe"] = analysis::swe(pr, eq);
    const auto ge_v = analysis::ge(pr, eq);
    j["ge"] = ge_v ? json(*ge_v) : json(nullptr);
    return j;
}

} // namespace aircoord::io
