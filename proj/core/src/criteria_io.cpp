#include "citeangle/classifier.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace citeangle {
namespace {

using nlohmann::json;

double number_field(const json& v, const std::string& key) {
    if (!v.is_number()) {
        throw ConfigError("criteria key '" + key + "' must be a number");
    }
    return v.get<double>();
}

int integer_field(const json& v, const std::string& key) {
    const double d = number_field(v, key);
    if (std::trunc(d) != d || std::abs(d) > 1e9) {
        throw ConfigError("criteria key '" + key + "' must be an integer");
    }
    return static_cast<int>(d);
}

std::string string_field(const json& v, const std::string& key) {
    if (!v.is_string()) {
        throw ConfigError("criteria key '" + key + "' must be a string");
    }
    return v.get<std::string>();
}

}  // namespace

CriteriaConfig parse_criteria(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed criteria file: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("criteria file must hold a flat JSON object");
    }

    CriteriaConfig c;
    for (const auto& [key, value] : doc.items()) {
        if (key == "beta1_possible_deg") c.beta1_possible_deg = number_field(value, key);
        else if (key == "beta1_higher_deg") c.beta1_higher_deg = number_field(value, key);
        else if (key == "beta2_possible_deg") c.beta2_possible_deg = number_field(value, key);
        else if (key == "beta2_higher_deg") c.beta2_higher_deg = number_field(value, key);
        else if (key == "sca_min") c.sca_min = number_field(value, key);
        else if (key == "scb_min") c.scb_min = number_field(value, key);
        else if (key == "ac_sg_max") c.ac_sg_max = number_field(value, key);
        else if (key == "ac_sb_max") c.ac_sb_max = number_field(value, key);
        else if (key == "dt_min") c.dt_min = integer_field(value, key);
        else if (key == "window_len") c.window_len = integer_field(value, key);
        else if (key == "cs_floor") c.cs_floor = number_field(value, key);
        else if (key == "ac_sg_window") {
            const auto s = string_field(value, key);
            if (s == "after_peak") c.ac_sg_window = AcSgWindow::after_peak;
            else if (s == "between_peaks") c.ac_sg_window = AcSgWindow::between_peaks;
            else throw ConfigError("ac_sg_window must be after_peak or between_peaks, got '" + s + "'");
        } else if (key == "sleep_from") {
            const auto s = string_field(value, key);
            if (s == "after_early_peak") c.sleep_from = SleepFrom::after_early_peak;
            else if (s == "publication") c.sleep_from = SleepFrom::publication;
            else throw ConfigError("sleep_from must be after_early_peak or publication, got '" + s + "'");
        } else {
            throw ConfigError("unknown criteria key '" + key + "'");
        }
    }
    c.validate();
    return c;
}

CriteriaConfig load_criteria(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open criteria file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_criteria(buf.str());
}

std::string criteria_to_json(const CriteriaConfig& c) {
    json doc = json::object();
    doc["beta1_possible_deg"] = c.beta1_possible_deg;
    doc["beta1_higher_deg"] = c.beta1_higher_deg;
    doc["beta2_possible_deg"] = c.beta2_possible_deg;
    doc["beta2_higher_deg"] = c.beta2_higher_deg;
    doc["sca_min"] = c.sca_min;
    doc["scb_min"] = c.scb_min;
    doc["ac_sg_max"] = c.ac_sg_max;
    doc["ac_sb_max"] = c.ac_sb_max;
    doc["dt_min"] = c.dt_min;
    doc["window_len"] = c.window_len;
    doc["ac_sg_window"] = to_string(c.ac_sg_window);
    doc["sleep_from"] = to_string(c.sleep_from);
    doc["cs_floor"] = c.cs_floor;
    return doc.dump(2);
}

}  // namespace citeangle
