#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crncomp/core.hpp"

namespace crncomp {

/// Syntax or semantic error in `.crn` text, with a 1-based position.
/// what() reads "path:line:column: message" when the source file is known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message, const std::string& path = {});

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::string& path() const { return path_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
  std::string path_;
};

struct ParseOptions {
  /// When false, every species used in a reaction must be declared first.
  bool auto_declare = true;
};

/// Result of parsing a `.crn` document. `mscrc` is present iff the text
/// declares inputs or outputs; a missing side defaults to the complement.
struct NetworkDocument {
  Crn crn;
  std::optional<MsCrc> mscrc;
  /// Source line of every reaction, in reaction order.
  std::vector<std::size_t> reaction_lines;

  bool is_mscrc() const { return mscrc.has_value(); }
};

NetworkDocument parse_network(std::string_view text, const ParseOptions& options = {});

/// Parses text that must declare an input/output partition.
MsCrc parse_mscrc(std::string_view text, const ParseOptions& options = {});

/// Reads and parses a file. I/O failures surface as std::runtime_error.
NetworkDocument load_network(const std::string& path, const ParseOptions& options = {});

struct FormatOptions {
  /// Lines emitted as `# ...` before the declarations.
  std::vector<std::string> header_comments;
  /// Optional per-reaction trailing comments. When non-empty, reversible
  /// pairs are not folded into `<=>`.
  std::vector<std::string> reaction_comments;
};

/// Canonical `.crn` text. Adjacent exact-reverse pairs are written as
/// `<=>` so that parsing the output reproduces the reaction order.
std::string format_network(const Crn& crn, const FormatOptions& options = {});
std::string format_network(const MsCrc& net, const FormatOptions& options = {});

std::string format_complex(const Complex& c, const Crn& crn);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

}  // namespace crncomp
