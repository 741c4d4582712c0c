#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

namespace graspgen::detail {

/// Streaming JSON writer with deterministic output: keys in call order,
/// doubles rendered with 17 significant digits (round-trip exact), two-space
/// indentation. Arrays can be emitted inline (single line) for compact
/// numeric triples.
class JsonWriter {
public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  void begin_object() {
    prepare_value();
    os_ << '{';
    stack_.push_back({Scope::Object, false});
  }
  void end_object() {
    const bool had = stack_.back().any;
    const bool inl = inline_depth_ > 0;
    stack_.pop_back();
    if (had && !inl) newline_indent();
    os_ << '}';
  }

  void begin_array(bool inline_elements = false) {
    prepare_value();
    os_ << '[';
    stack_.push_back({Scope::Array, false});
    if (inline_elements) ++inline_depth_;
    inline_flags_.push_back(inline_elements);
  }
  void end_array() {
    const bool had = stack_.back().any;
    stack_.pop_back();
    const bool was_inline = inline_flags_.back();
    inline_flags_.pop_back();
    if (was_inline) {
      --inline_depth_;
    } else if (had) {
      newline_indent();
    }
    os_ << ']';
  }

  void key(std::string_view name) {
    separate();
    write_string(name);
    os_ << ": ";
    pending_key_ = true;
  }

  void value(double v) {
    prepare_value();
    char buf[40];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    os_.write(buf, res.ptr - buf);
  }
  void value(std::uint64_t v) {
    prepare_value();
    os_ << v;
  }
  void value(int v) {
    prepare_value();
    os_ << v;
  }
  void value(bool v) {
    prepare_value();
    os_ << (v ? "true" : "false");
  }
  void value(std::string_view v) {
    prepare_value();
    write_string(v);
  }
  void value(const char* v) { value(std::string_view(v)); }

private:
  enum class Scope { Object, Array };
  struct Frame {
    Scope scope;
    bool any;
  };

  void separate() {
    if (stack_.empty()) return;
    const bool first = !stack_.back().any;
    stack_.back().any = true;
    if (inline_depth_ > 0) {
      if (!first) os_ << ", ";
    } else {
      if (!first) os_ << ',';
      newline_indent();
    }
  }

  void prepare_value() {
    if (pending_key_) {
      pending_key_ = false;
      return;
    }
    if (!stack_.empty() && stack_.back().scope == Scope::Array) separate();
  }

  void newline_indent() {
    os_ << '\n';
    for (std::size_t i = 0; i < stack_.size(); ++i) os_ << "  ";
  }

  void write_string(std::string_view s) {
    os_ << '"';
    for (char c : s) {
      switch (c) {
        case '"':
          os_ << "\\\"";
          break;
        case '\\':
          os_ << "\\\\";
          break;
        case '\n':
          os_ << "\\n";
          break;
        case '\r':
          os_ << "\\r";
          break;
        case '\t':
          os_ << "\\t";
          break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            const char hex[] = "0123456789abcdef";
            os_ << "\\u00" << hex[(c >> 4) & 0xf] << hex[c & 0xf];
          } else {
            os_ << c;
          }
      }
    }
    os_ << '"';
  }

  std::ostream& os_;
  std::vector<Frame> stack_;
  std::vector<bool> inline_flags_;
  int inline_depth_ = 0;
  bool pending_key_ = false;
};

}  // namespace graspgen::detail
