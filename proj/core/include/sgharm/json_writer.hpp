#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sgharm {

/// Renders a double with 15 significant digits. All numeric output of the
/// project funnels through this so that identical inputs give byte-identical
/// documents.
std::string format_double(double value);

/// Minimal streaming JSON writer with explicit structure calls. Keys are
/// emitted in insertion order; doubles go through format_double; non-finite
/// doubles become null.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);

  JsonWriter& value(double v);
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(long long v);
  JsonWriter& value(unsigned long long v);
  JsonWriter& value(std::size_t v) { return value(static_cast<unsigned long long>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();

 private:
  void separator();
  void write_escaped(std::string_view s);

  std::ostream& out_;
  // one flag per open container: true once the first element was written
  std::vector<bool> has_elements_;
  bool pending_key_ = false;
};

}  // namespace sgharm
