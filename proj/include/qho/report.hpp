#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qho/error.hpp"

namespace qho {

struct Check {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
};

/// Outcome of one CLI command: what ran, with which parameters, which files
/// it wrote and which checks it evaluated.
struct RunReport {
    std::string command;
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    std::vector<std::string> outputs;
    std::vector<Check> checks;
    std::optional<std::string> error;

    /// Passes when measured <= tolerance. Non-finite measurements fail and
    /// are recorded as the largest double.
    void add_check(std::string name, double measured, double tolerance) {
        const bool ok = std::isfinite(measured) && measured <= tolerance;
        add_check(std::move(name), ok, measured, tolerance);
    }

    void add_check(std::string name, bool passed, double measured, double tolerance) {
        if (!std::isfinite(measured)) {
            measured = std::numeric_limits<double>::max();
            passed = false;
        }
        checks.push_back({std::move(name), passed, measured, tolerance});
    }

    bool all_passed() const {
        if (error) return false;
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

inline void to_json(nlohmann::ordered_json& j, const Check& c) {
    j = nlohmann::ordered_json{{"name", c.name}, {"passed", c.passed}, {"measured", c.measured},
                               {"tolerance", c.tolerance}};
}

inline void from_json(const nlohmann::ordered_json& j, Check& c) {
    j.at("name").get_to(c.name);
    j.at("passed").get_to(c.passed);
    j.at("measured").get_to(c.measured);
    j.at("tolerance").get_to(c.tolerance);
}

inline void to_json(nlohmann::ordered_json& j, const RunReport& r) {
    j = nlohmann::ordered_json{{"command", r.command},
                               {"parameters", r.parameters},
                               {"outputs", r.outputs},
                               {"checks", r.checks}};
    if (r.error) j["error"] = *r.error;
}

inline void from_json(const nlohmann::ordered_json& j, RunReport& r) {
    j.at("command").get_to(r.command);
    r.parameters = j.at("parameters");
    j.at("outputs").get_to(r.outputs);
    j.at("checks").get_to(r.checks);
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
}

/// 0 when every check passed, 1 otherwise.
inline int exit_code(const RunReport& r) { return r.all_passed() ? 0 : 1; }

/// Number with 15 significant digits.
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

/// Comma-separated table with a single header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

    void add_numbers(std::initializer_list<double> values) {
        std::vector<std::string> row;
        for (double v : values) row.push_back(format_number(v));
        rows.push_back(std::move(row));
    }

    std::string str() const {
        std::string out;
        auto line = [&out](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out += ',';
                out += cells[i];
            }
            out += '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return out;
    }

    void write(const std::filesystem::path& path) const {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError("cannot open " + path.string() + " for writing");
        os << str();
        os.close();
        if (!os) throw IoError("failed writing " + path.string());
    }
};

inline void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
}

}  // namespace qho
