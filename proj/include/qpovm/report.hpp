#pragma once

// Report envelopes and payload rendering. Every command produces a
// ReportDocument; CSV puts the envelope in '#' comment lines above the rows,
// JSON nests the payload under the envelope. Numeric CSV payloads carry a
// rounded display column (4 decimals for eta-like values, 2 for correlation
// sums, 6 significant digits otherwise) next to a 17-significant-digit
// full-precision column; JSON payloads hold the full-precision values.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qpovm {

enum class OutputFormat { csv, json };

enum class RealStyle {
    eta,      // 4 decimals
    svalue,   // 2 decimals
    general,  // 6 significant digits
};

class Field {
public:
    enum class Kind { text, boolean, integer, real, real_list };

    static Field text(std::string name, std::string value);
    static Field boolean(std::string name, bool value);
    static Field integer(std::string name, long long value);
    static Field real(std::string name, double value, RealStyle style);
    static Field real_list(std::string name, std::vector<double> values);

    const std::string& name() const { return name_; }
    Kind kind() const { return kind_; }
    const std::string& text_value() const { return text_; }  // also "true"/"false" for booleans
    bool bool_value() const { return bool_; }
    long long int_value() const { return int_; }
    double real_value() const { return real_; }
    RealStyle style() const { return style_; }
    const std::vector<double>& list_value() const { return list_; }

private:
    std::string name_;
    Kind kind_ = Kind::text;
    std::string text_;
    bool bool_ = false;
    long long int_ = 0;
    double real_ = 0.0;
    RealStyle style_ = RealStyle::general;
    std::vector<double> list_;
};

using Row = std::vector<Field>;

struct ReportDocument {
    std::string command;
    std::optional<std::uint64_t> seed;  // present for stochastic commands
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<Row> rows;
};

// 17-significant-digit decimal form that round-trips the double exactly
std::string format_full(double value);
// rounded display form for one style
std::string format_display(double value, RealStyle style);

// ISO-8601 UTC timestamp; honors SOURCE_DATE_EPOCH for reproducible output.
std::string current_timestamp();

std::string render_csv(const ReportDocument& doc);
std::string render_json(const ReportDocument& doc);

// Renders and writes to `out_path`, or stdout when the path is empty.
void write_report(const ReportDocument& doc, OutputFormat format, const std::string& out_path);

}  // namespace qpovm
