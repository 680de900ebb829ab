#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "coopnet/error.hpp"

namespace coopnet {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

// Shortest round-trip representation; "inf", "-inf", "nan" for non-finite values.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline double parse_double_field(const std::string& s) {
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    if (s == "nan") return NAN;
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw InvalidParameter("not a number: '" + s + "'");
    return v;
}

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void comment_timestamp() {
        auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        os_ << "# generated " << buf << '\n';
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) os_ << ',';
            os_ << csv_field(fields[i]);
        }
        os_ << '\n';
    }

private:
    std::ostream& os_;
};

// Splits one record; quoted fields may not span lines. Lines starting with '#' are skipped by read_csv.
inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted) throw MalformedEdgeList("unterminated quoted CSV field");
    out.push_back(std::move(cur));
    return out;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw MissingInput("CSV has no column '" + name + "'");
    }
};

inline CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv_line(line);
        if (t.header.empty()) {
            t.header = std::move(fields);
            continue;
        }
        if (fields.size() != t.header.size()) throw MissingInput("CSV row has " + std::to_string(fields.size()) + " fields, header has " + std::to_string(t.header.size()));
        t.rows.push_back(std::move(fields));
    }
    if (t.header.empty()) throw MissingInput("empty CSV input");
    return t;
}

} // namespace coopnet
