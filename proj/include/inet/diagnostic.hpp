#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace inet {

/// 1-based source region. A default-constructed span (line 0) means "no location".
struct SourceSpan {
  int startLine = 0;
  int startCol = 0;
  int endLine = 0;
  int endCol = 0;

  bool known() const { return startLine > 0; }
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Error, Warning };

/// Diagnostic codes used across the front end, checker and translator.
namespace code {
inline constexpr const char* Syntax = "SYNTAX";
inline constexpr const char* Arity = "ARITY";
inline constexpr const char* Linearity = "LINEARITY";
inline constexpr const char* Interface = "INTERFACE";
inline constexpr const char* Unsupported = "UNSUPPORTED";
inline constexpr const char* Subnet = "SUBNET";
inline constexpr const char* Sequential = "SEQUENTIAL";
inline constexpr const char* Duplicate = "DUPLICATE";
inline constexpr const char* Conflict = "CONFLICT";
inline constexpr const char* DroppedIntermediate = "DROPPED-INTERMEDIATE";
inline constexpr const char* Io = "IO";
}  // namespace code

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  SourceSpan span;
  std::optional<SourceSpan> relatedSpan;

  bool isError() const { return severity == Severity::Error; }
};

bool hasErrors(const std::vector<Diagnostic>& diags);

/// Renders `path:line:col: error[CODE]: message`, plus a note line for the related span.
std::string formatDiagnostic(const Diagnostic& d, const std::string& path);

/// Exception carrying one or more diagnostics. Parse, arity and linearity
/// failures, and fatal translation errors, are reported this way.
class Error : public std::runtime_error {
 public:
  explicit Error(Diagnostic d);
  explicit Error(std::vector<Diagnostic> ds);

  const Diagnostic& diagnostic() const { return diagnostics_.front(); }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  const std::string& code() const { return diagnostics_.front().code; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace inet
