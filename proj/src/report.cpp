#include "qpovm/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qpovm/error.hpp"
#include "qpovm/version.hpp"

namespace qpovm {

Field Field::text(std::string name, std::string value) {
    Field f;
    f.name_ = std::move(name);
    f.kind_ = Kind::text;
    f.text_ = std::move(value);
    return f;
}

Field Field::boolean(std::string name, bool value) {
    Field f;
    f.name_ = std::move(name);
    f.kind_ = Kind::boolean;
    f.bool_ = value;
    f.text_ = value ? "true" : "false";
    return f;
}

Field Field::integer(std::string name, long long value) {
    Field f;
    f.name_ = std::move(name);
    f.kind_ = Kind::integer;
    f.int_ = value;
    return f;
}

Field Field::real(std::string name, double value, RealStyle style) {
    Field f;
    f.name_ = std::move(name);
    f.kind_ = Kind::real;
    f.real_ = value;
    f.style_ = style;
    return f;
}

Field Field::real_list(std::string name, std::vector<double> values) {
    Field f;
    f.name_ = std::move(name);
    f.kind_ = Kind::real_list;
    f.list_ = std::move(values);
    return f;
}

std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string format_display(double value, RealStyle style) {
    char buf[40];
    switch (style) {
        case RealStyle::eta:
            std::snprintf(buf, sizeof buf, "%.4f", value);
            break;
        case RealStyle::svalue:
            std::snprintf(buf, sizeof buf, "%.2f", value);
            break;
        case RealStyle::general:
            std::snprintf(buf, sizeof buf, "%.6g", value);
            break;
    }
    return buf;
}

std::string current_timestamp() {
    std::time_t now = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        long long fixed = std::strtoll(epoch, &end, 10);
        if (end != epoch && *end == '\0') now = static_cast<std::time_t>(fixed);
    }
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

namespace {

std::string csv_escape(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char ch : value) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

std::string join_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ';';
        out += format_full(values[i]);
    }
    return out;
}

}  // namespace

std::string render_csv(const ReportDocument& doc) {
    std::ostringstream out;
    out << "# tool: " << kToolName << ' ' << kToolVersion << '\n';
    out << "# command: " << doc.command << '\n';
    out << "# timestamp: " << current_timestamp() << '\n';
    if (doc.seed) out << "# seed: " << *doc.seed << '\n';
    for (const auto& [key, value] : doc.config) {
        out << "# config: " << key << '=' << value << '\n';
    }
    if (doc.rows.empty()) return out.str();

    const Row& header = doc.rows.front();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i > 0) out << ',';
        out << csv_escape(header[i].name());
        if (header[i].kind() == Field::Kind::real) {
            out << ',' << csv_escape(header[i].name() + "_full");
        }
    }
    out << '\n';

    for (const Row& row : doc.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            const Field& f = row[i];
            switch (f.kind()) {
                case Field::Kind::text:
                case Field::Kind::boolean:
                    out << csv_escape(f.text_value());
                    break;
                case Field::Kind::integer:
                    out << f.int_value();
                    break;
                case Field::Kind::real:
                    out << format_display(f.real_value(), f.style()) << ','
                        << format_full(f.real_value());
                    break;
                case Field::Kind::real_list:
                    out << csv_escape(join_list(f.list_value()));
                    break;
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string render_json(const ReportDocument& doc) {
    nlohmann::ordered_json root;
    root["tool"] = kToolName;
    root["version"] = kToolVersion;
    root["timestamp"] = current_timestamp();
    root["command"] = doc.command;
    if (doc.seed) root["seed"] = *doc.seed;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [key, value] : doc.config) config[key] = value;
    root["config"] = std::move(config);

    nlohmann::ordered_json payload = nlohmann::ordered_json::array();
    for (const Row& row : doc.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const Field& f : row) {
            switch (f.kind()) {
                case Field::Kind::text:
                    obj[f.name()] = f.text_value();
                    break;
                case Field::Kind::boolean:
                    obj[f.name()] = f.bool_value();
                    break;
                case Field::Kind::integer:
                    obj[f.name()] = f.int_value();
                    break;
                case Field::Kind::real:
                    obj[f.name()] = f.real_value();
                    break;
                case Field::Kind::real_list:
                    obj[f.name()] = f.list_value();
                    break;
            }
        }
        payload.push_back(std::move(obj));
    }
    root["payload"] = std::move(payload);
    return root.dump(2) + "\n";
}

void write_report(const ReportDocument& doc, OutputFormat format, const std::string& out_path) {
    std::string rendered = format == OutputFormat::csv ? render_csv(doc) : render_json(doc);
    if (out_path.empty()) {
        std::cout << rendered;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error("BadFile", "cannot open output file: " + out_path);
    file << rendered;
}

}  // namespace qpovm
