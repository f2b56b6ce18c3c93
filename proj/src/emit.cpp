#include "galton/emit.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace galton {

using nlohmann::ordered_json;

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.14e", v);
    return buf;
}

namespace {

std::string format_tau_label(double tau) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", tau);
    return buf;
}

std::string detector_label(DetectorId det) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%+d%s", det.x, dir_name(det.d));
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

void write_sidecar(const std::filesystem::path& data_path, const RunConfig& config,
                   const std::string& command, const ordered_json& extra) {
    ordered_json meta;
    meta["artifact_version"] = kArtifactVersion;
    meta["command"] = command;
    for (const auto& [key, value] : extra.items()) meta[key] = value;
    meta["config"] = ordered_json::parse(run_config_to_json(config));
    write_file(data_path.string() + ".meta.json", meta.dump(2) + "\n");
}

} // namespace

std::string pattern_file_name(const std::string& prefix, double tau, OutputFormat format) {
    return prefix + "pattern_tau" + format_tau_label(tau) + "." + format_name(format);
}

std::string gtau_file_name(const std::string& prefix, const DetectorPair& pair,
                           OutputFormat format) {
    return prefix + "gtau_" + detector_label(pair.first) + "_" + detector_label(pair.second) +
           "." + format_name(format);
}

std::string write_pattern(const std::string& dir, const std::string& prefix,
                          const PatternMatrix& matrix, const RunConfig& config,
                          const std::string& command) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path =
        std::filesystem::path(dir) / pattern_file_name(prefix, matrix.tau, config.format);

    const int nd = int(matrix.dets.size());
    std::string content;
    if (config.format == OutputFormat::Csv) {
        content += "x1,d1,x2,d2,G\n";
        for (int i = 0; i < nd; ++i) {
            for (int j = 0; j < nd; ++j) {
                const DetectorId a = matrix.dets[i];
                const DetectorId b = matrix.dets[j];
                content += std::to_string(a.x) + "," + dir_name(a.d) + "," +
                           std::to_string(b.x) + "," + dir_name(b.d) + "," +
                           format_value(matrix.at(i, j)) + "\n";
            }
        }
    } else {
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < nd; ++i)
            for (int j = 0; j < nd; ++j)
                rows.push_back({{"x1", matrix.dets[i].x},
                                {"d1", dir_name(matrix.dets[i].d)},
                                {"x2", matrix.dets[j].x},
                                {"d2", dir_name(matrix.dets[j].d)},
                                {"G", matrix.at(i, j)}});
        content = ordered_json{{"rows", rows}}.dump(2) + "\n";
    }
    write_file(path, content);
    write_sidecar(path, config, command,
                  {{"tau", matrix.tau},
                   {"normalization", normalization_name(matrix.norm)},
                   {"steps", matrix.steps}});
    return path.string();
}

std::string write_gtau(const std::string& dir, const std::string& prefix,
                       const DetectorPair& pair, const std::vector<GtauRow>& rows,
                       bool include_nonlinear, const RunConfig& config,
                       const std::string& command) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path =
        std::filesystem::path(dir) / gtau_file_name(prefix, pair, config.format);

    std::string content;
    if (config.format == OutputFormat::Csv) {
        content += include_nonlinear ? "tau,G_nonlinear,G_linear\n" : "tau,G_linear\n";
        for (const GtauRow& row : rows) {
            content += format_value(row.tau);
            if (include_nonlinear) content += "," + format_value(row.g_nonlinear);
            content += "," + format_value(row.g_linear) + "\n";
        }
    } else {
        ordered_json arr = ordered_json::array();
        for (const GtauRow& row : rows) {
            ordered_json obj{{"tau", row.tau}};
            if (include_nonlinear) obj["G_nonlinear"] = row.g_nonlinear;
            obj["G_linear"] = row.g_linear;
            arr.push_back(obj);
        }
        content = ordered_json{{"rows", arr}}.dump(2) + "\n";
    }
    write_file(path, content);
    write_sidecar(path, config, command,
                  {{"x1", pair.first.x},
                   {"d1", dir_name(pair.first.d)},
                   {"x2", pair.second.x},
                   {"d2", dir_name(pair.second.d)}});
    return path.string();
}

std::string write_text_file(const std::string& dir, const std::string& name,
                            const std::string& content) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    write_file(path, content);
    return path.string();
}

} // namespace galton
