#pragma once

#include "linkdyn/sample_path.hpp"
#include "linkdyn/stats.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace linkdyn::io {

/// Round-trip-exact decimal formatting (17 significant digits).
std::string format_double(double v);

/// CSV with a one-line '#'-prefixed JSON metadata header. Every column must
/// have the same length.
void write_csv(const std::filesystem::path& path, const nlohmann::json& metadata,
               const std::vector<std::string>& column_names,
               const std::vector<const std::vector<double>*>& columns);

void write_path_csv(const std::filesystem::path& path, const nlohmann::json& metadata,
                    const sim::SamplePath& sample_path, const std::string& value_name);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

nlohmann::json to_json(const verify::VerificationReport& report);
nlohmann::json to_json(const verify::CrossingSummary& summary);

const char* stat_kind_name(verify::StatKind kind);

} // namespace linkdyn::io
