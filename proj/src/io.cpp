#include "concave_field/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "concave_field/errors.hpp"

namespace concave_field {

std::vector<std::pair<std::string, std::string>> RunManifest::fields() const {
    return {
        {"command", command},
        {"model", model_spec},
        {"n", std::to_string(n)},
        {"K", std::to_string(K)},
        {"lambda_or_regime", lambda_or_regime},
        {"replicas", std::to_string(replicas)},
        {"seed", std::to_string(seed)},
        {"grid", grid_spec},
        {"output_path", output_path},
        {"tool_version", tool_version},
    };
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void Table::add_row(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_double(v));
    rows.push_back(std::move(row));
}

std::string to_csv(const RunManifest& manifest, const Table& table) {
    std::string out;
    for (const auto& [key, value] : manifest.fields())
        out += "# " + key + "=" + value + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out += (c ? "," : "") + table.columns[c];
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + row[c];
        out += "\n";
    }
    return out;
}

namespace {

nlohmann::ordered_json manifest_json(const RunManifest& manifest) {
    nlohmann::ordered_json j;
    for (const auto& [key, value] : manifest.fields()) j[key] = value;
    return j;
}

} // namespace

std::string to_json(const RunManifest& manifest, const Table& table) {
    nlohmann::ordered_json j;
    j["manifest"] = manifest_json(manifest);
    j["columns"] = table.columns;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const std::string& cell : row) r.push_back(cell);
        rows.push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

std::string reports_to_json(const RunManifest& manifest, const std::vector<TestReport>& reports) {
    nlohmann::ordered_json j;
    j["manifest"] = manifest_json(manifest);
    auto& arr = j["reports"] = nlohmann::ordered_json::array();
    bool all_pass = true;
    for (const TestReport& r : reports) {
        nlohmann::ordered_json e;
        e["name"] = r.name;
        e["checks"] = r.checks;
        e["statistic"] = r.statistic;
        e["critical"] = r.critical;
        e["sample_size"] = r.sample_size;
        e["pass"] = r.pass;
        if (!r.detail.empty()) e["detail"] = r.detail;
        arr.push_back(std::move(e));
        all_pass = all_pass && r.pass;
    }
    j["all_pass"] = all_pass;
    return j.dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("write_output: cannot open " + path);
    out << content;
}

} // namespace concave_field
