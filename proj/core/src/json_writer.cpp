#include "sgharm/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace sgharm {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", value);
  return buf;
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ << '{';
  has_elements_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  has_elements_.pop_back();
  out_ << '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ << '[';
  has_elements_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  has_elements_.pop_back();
  out_ << ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  if (!has_elements_.empty() && has_elements_.back()) out_ << ',';
  if (!has_elements_.empty()) has_elements_.back() = true;
  out_ << '"';
  write_escaped(name);
  out_ << "\":";
  pending_key_ = true;
  return *this;
}

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!has_elements_.empty()) {
    if (has_elements_.back()) out_ << ',';
    has_elements_.back() = true;
  }
}

JsonWriter& JsonWriter::value(double v) {
  separator();
  if (std::isfinite(v)) {
    out_ << format_double(v);
  } else {
    out_ << "null";
  }
  return *this;
}

JsonWriter& JsonWriter::value(long long v) {
  separator();
  out_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(unsigned long long v) {
  separator();
  out_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separator();
  out_ << (v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  separator();
  out_ << '"';
  write_escaped(v);
  out_ << '"';
  return *this;
}

JsonWriter& JsonWriter::null() {
  separator();
  out_ << "null";
  return *this;
}

void JsonWriter::write_escaped(std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '"': out_ << "\\\""; break;
      case '\\': out_ << "\\\\"; break;
      case '\n': out_ << "\\n"; break;
      case '\r': out_ << "\\r"; break;
      case '\t': out_ << "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out_ << buf;
        } else {
          out_ << c;
        }
    }
  }
}

}  // namespace sgharm
