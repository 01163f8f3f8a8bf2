#ifndef CONCAVE_FIELD_IO_HPP
#define CONCAVE_FIELD_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "concave_field/stats.hpp"

namespace concave_field {

inline constexpr const char* kToolVersion = "0.1.0";

// Everything needed to reproduce an output file bit for bit. Serialized
// into every CSV (comment header) and JSON (manifest object).
struct RunManifest {
    std::string command;
    std::string model_spec;
    std::size_t n = 0;
    std::size_t K = 0;
    std::string lambda_or_regime;
    std::size_t replicas = 0;
    std::uint64_t seed = 0;
    std::string grid_spec;
    std::string output_path;
    std::string tool_version = kToolVersion;

    std::vector<std::pair<std::string, std::string>> fields() const;
};

// Shortest-round-trip decimal rendering; the same value always prints the
// same bytes.
std::string format_double(double v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
};

std::string to_csv(const RunManifest& manifest, const Table& table);
std::string to_json(const RunManifest& manifest, const Table& table);
std::string reports_to_json(const RunManifest& manifest, const std::vector<TestReport>& reports);

// Writes to the path, or stdout when path is empty.
void write_output(const std::string& path, const std::string& content);

} // namespace concave_field

#endif
