#include "linkdyn/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace linkdyn::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const nlohmann::json& metadata,
               const std::vector<std::string>& column_names,
               const std::vector<const std::vector<double>*>& columns) {
    if (column_names.size() != columns.size() || columns.empty()) {
        throw std::invalid_argument("write_csv: column names and data must match");
    }
    const std::size_t rows = columns.front()->size();
    for (const auto* c : columns) {
        if (c->size() != rows) throw std::invalid_argument("write_csv: ragged columns");
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
    out << "# " << metadata.dump() << "\n";
    for (std::size_t i = 0; i < column_names.size(); ++i) {
        out << column_names[i] << (i + 1 < column_names.size() ? "," : "\n");
    }
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << format_double((*columns[c])[r]) << (c + 1 < columns.size() ? "," : "\n");
        }
    }
}

void write_path_csv(const std::filesystem::path& path, const nlohmann::json& metadata,
                    const sim::SamplePath& sample_path, const std::string& value_name) {
    std::vector<double> t(sample_path.values.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i) * sample_path.dt;
    write_csv(path, metadata, {"t", value_name}, {&t, &sample_path.values});
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_json: cannot open " + path.string());
    out << doc.dump(2) << "\n";
}

const char* stat_kind_name(verify::StatKind kind) {
    switch (kind) {
        case verify::StatKind::ks: return "ks";
        case verify::StatKind::l1_histogram: return "l1_histogram";
        case verify::StatKind::max_abs_dev: return "max_abs_dev";
        case verify::StatKind::binomial_z: return "binomial_z";
    }
    return "unknown";
}

nlohmann::json to_json(const verify::VerificationReport& report) {
    return nlohmann::json{{"name", report.name},
                          {"statistic", stat_kind_name(report.statistic)},
                          {"value", report.value},
                          {"threshold", report.threshold},
                          {"direction",
                           report.direction == verify::PassDirection::value_leq_threshold ? "leq" : "geq"},
                          {"pass", report.pass},
                          {"n_samples", report.n_samples},
                          {"seed", report.seed},
                          {"runtime_seconds", report.runtime_seconds},
                          {"details", report.details}};
}

nlohmann::json to_json(const verify::CrossingSummary& summary) {
    return nlohmann::json{{"threshold", summary.threshold},
                          {"fraction_on", summary.fraction_on},
                          {"horizon_seconds", summary.horizon},
                          {"n_on_durations", summary.on_durations.size()},
                          {"n_off_durations", summary.off_durations.size()}};
}

} // namespace linkdyn::io
