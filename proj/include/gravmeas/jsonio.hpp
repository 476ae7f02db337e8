#pragma once

#include <string>
#include <vector>

namespace gravmeas {

// Doubles print with 17 significant digits so identical values give
// identical bytes and parse back bit-exact.
std::string fmt_double(double v);

// Minimal ordered JSON emitter: keys appear in insertion order, floats via
// fmt_double, two-space indentation, trailing newline. Golden-file tests
// rely on the byte stability.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key);
    JsonWriter& end_array();
    JsonWriter& field(const std::string& key, double v);
    JsonWriter& field(const std::string& key, const std::string& v);
    JsonWriter& field(const std::string& key, const char* v);
    JsonWriter& field(const std::string& key, bool v);
    JsonWriter& field(const std::string& key, long v);
    JsonWriter& element(const std::string& v);
    JsonWriter& element(double v);
    // opens a nested object under `key`
    JsonWriter& begin_object(const std::string& key);

    std::string str() const;

  private:
    void comma_indent();
    std::string out_;
    std::vector<bool> first_;  // per nesting level
    int depth_ = 0;
};

std::string json_escape(const std::string& s);

}  // namespace gravmeas
