#include "gravmeas/jsonio.hpp"

#include <cstdio>

namespace gravmeas {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string r;
    r.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': r += "\\\""; break;
            case '\\': r += "\\\\"; break;
            case '\n': r += "\\n"; break;
            case '\t': r += "\\t"; break;
            default: r += c;
        }
    }
    return r;
}

void JsonWriter::comma_indent() {
    if (depth_ == 0) return;
    if (!first_.back()) out_ += ",";
    first_.back() = false;
    out_ += "\n";
    out_.append(2 * depth_, ' ');
}

JsonWriter& JsonWriter::begin_object() {
    comma_indent();
    out_ += "{";
    first_.push_back(true);
    ++depth_;
    return *this;
}

JsonWriter& JsonWriter::begin_object(const std::string& key) {
    comma_indent();
    out_ += "\"" + json_escape(key) + "\": {";
    first_.push_back(true);
    ++depth_;
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    --depth_;
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) {
        out_ += "\n";
        out_.append(2 * depth_, ' ');
    }
    out_ += "}";
    if (depth_ == 0) out_ += "\n";
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
    comma_indent();
    out_ += "\"" + json_escape(key) + "\": [";
    first_.push_back(true);
    ++depth_;
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    --depth_;
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) {
        out_ += "\n";
        out_.append(2 * depth_, ' ');
    }
    out_ += "]";
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, double v) {
    comma_indent();
    out_ += "\"" + json_escape(key) + "\": " + fmt_double(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& v) {
    comma_indent();
    out_ += "\"" + json_escape(key) + "\": \"" + json_escape(v) + "\"";
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const char* v) {
    return field(key, std::string(v));
}

JsonWriter& JsonWriter::field(const std::string& key, bool v) {
    comma_indent();
    out_ += "\"" + json_escape(key) + "\": " + (v ? "true" : "false");
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, long v) {
    comma_indent();
    out_ += "\"" + json_escape(key) + "\": " + std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::element(const std::string& v) {
    comma_indent();
    out_ += "\"" + json_escape(v) + "\"";
    return *this;
}

JsonWriter& JsonWriter::element(double v) {
    comma_indent();
    out_ += fmt_double(v);
    return *this;
}

std::string JsonWriter::str() const { return out_; }

}  // namespace gravmeas
