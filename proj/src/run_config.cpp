#include "galton/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace galton {

using nlohmann::ordered_json;

const char* format_name(OutputFormat f) {
    return f == OutputFormat::Csv ? "csv" : "json";
}

void RunConfig::validate() const {
    if (!(gamma > 0.0)) throw ConfigError("config: gamma must be > 0");
    if (!(kappa > 0.0)) throw ConfigError("config: kappa must be > 0");
    if (steps < 1) throw ConfigError("config: steps must be >= 1");
    if (tau_values.empty()) throw ConfigError("config: tau_values must be nonempty");
    for (double tau : tau_values)
        if (tau < 0.0) throw ConfigError("config: tau_values must be >= 0");
    if (!(tau_max > 0.0)) throw ConfigError("config: tau_max must be > 0");
    if (tau_points < 2) throw ConfigError("config: tau_points must be >= 2");
    for (const DetectorPair& pair : detector_pairs) {
        for (DetectorId det : {pair.first, pair.second}) {
            if (!is_valid_detector(det, steps))
                throw ConfigError("config: detector (" + std::to_string(det.x) + "," +
                                  dir_name(det.d) + ") invalid for steps=" +
                                  std::to_string(steps));
        }
    }
}

namespace {

Dir parse_dir(const std::string& s, const std::string& where) {
    if (s == "L") return Dir::L;
    if (s == "R") return Dir::R;
    throw ConfigError("config: " + where + ": direction must be \"L\" or \"R\"");
}

DetectorPair parse_pair(const ordered_json& j, size_t index) {
    const std::string where = "detectors[" + std::to_string(index) + "]";
    if (!j.is_object()) throw ConfigError("config: " + where + " must be an object");
    static const std::set<std::string> keys = {"x1", "d1", "x2", "d2"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!keys.count(key)) throw ConfigError("config: " + where + ": unknown key \"" + key + "\"");
    }
    for (const std::string& key : keys)
        if (!j.contains(key)) throw ConfigError("config: " + where + ": missing key \"" + key + "\"");
    DetectorPair pair;
    pair.first = {j.at("x1").get<int>(), parse_dir(j.at("d1").get<std::string>(), where)};
    pair.second = {j.at("x2").get<int>(), parse_dir(j.at("d2").get<std::string>(), where)};
    return pair;
}

} // namespace

RunConfig parse_run_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");

    static const std::set<std::string> known = {
        "gamma",  "kappa",      "delta",         "steps",   "tau_values", "detectors",
        "normalization", "output_dir", "format", "tau_max", "tau_points"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key)) throw ConfigError("config: unknown key \"" + key + "\"");
    }

    RunConfig config;
    try {
        if (j.contains("gamma")) config.gamma = j.at("gamma").get<double>();
        if (j.contains("kappa")) config.kappa = j.at("kappa").get<double>();
        if (j.contains("delta")) config.delta = j.at("delta").get<double>();
        if (j.contains("steps")) config.steps = j.at("steps").get<int>();
        if (j.contains("tau_values")) config.tau_values = j.at("tau_values").get<std::vector<double>>();
        if (j.contains("detectors")) {
            config.detector_pairs.clear();
            const auto& arr = j.at("detectors");
            if (!arr.is_array()) throw ConfigError("config: detectors must be an array");
            for (size_t i = 0; i < arr.size(); ++i)
                config.detector_pairs.push_back(parse_pair(arr[i], i));
        }
        if (j.contains("normalization")) {
            const std::string s = j.at("normalization").get<std::string>();
            if (s == "raw")
                config.normalization = Normalization::Raw;
            else if (s == "max")
                config.normalization = Normalization::Max;
            else
                throw ConfigError("config: normalization must be \"raw\" or \"max\"");
        }
        if (j.contains("output_dir")) config.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("format")) {
            const std::string s = j.at("format").get<std::string>();
            if (s == "csv")
                config.format = OutputFormat::Csv;
            else if (s == "json")
                config.format = OutputFormat::Json;
            else
                throw ConfigError("config: format must be \"csv\" or \"json\"");
        }
        if (j.contains("tau_max")) config.tau_max = j.at("tau_max").get<double>();
        if (j.contains("tau_points")) config.tau_points = j.at("tau_points").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    config.validate();
    return config;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

std::string run_config_to_json(const RunConfig& config) {
    ordered_json j;
    j["gamma"] = config.gamma;
    j["kappa"] = config.kappa;
    j["delta"] = config.delta;
    j["steps"] = config.steps;
    j["tau_values"] = config.tau_values;
    ordered_json pairs = ordered_json::array();
    for (const DetectorPair& pair : config.detector_pairs) {
        pairs.push_back({{"x1", pair.first.x},
                         {"d1", dir_name(pair.first.d)},
                         {"x2", pair.second.x},
                         {"d2", dir_name(pair.second.d)}});
    }
    j["detectors"] = pairs;
    j["normalization"] = normalization_name(config.normalization);
    j["output_dir"] = config.output_dir;
    j["format"] = format_name(config.format);
    j["tau_max"] = config.tau_max;
    j["tau_points"] = config.tau_points;
    return j.dump(2) + "\n";
}

std::vector<double> parse_tau_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t used = 0;
        double v;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("invalid tau value \"" + item + "\"");
        }
        while (used < item.size() && std::isspace((unsigned char)item[used])) ++used;
        if (used != item.size()) throw ConfigError("invalid tau value \"" + item + "\"");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty tau list");
    return out;
}

} // namespace galton
