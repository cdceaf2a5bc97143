#pragma once

#include <stdexcept>
#include <string>

namespace tmr {

// Input-side failures: bad lines, unknown tags, misaligned corpora.
// Exit-code mapping in the CLI: InputError -> 2, InconsistentRunsError -> 3.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class MalformedLineError : public InputError {
 public:
  MalformedLineError(const std::string& source, size_t line_no,
                     const std::string& detail)
      : InputError(source + ":" + std::to_string(line_no) + ": " + detail),
        line_no(line_no) {}
  size_t line_no;
};

class UnknownTagError : public InputError {
 public:
  UnknownTagError(const std::string& source, size_t line_no,
                  const std::string& tag)
      : InputError(source + ":" + std::to_string(line_no) +
                   ": unknown tag \"" + tag + "\""),
        line_no(line_no) {}
  size_t line_no;
};

class NoEntitiesError : public InputError {
 public:
  explicit NoEntitiesError(const std::string& source)
      : InputError(source +
                   ": no entity tags found, cannot detect tag scheme "
                   "(pass the scheme explicitly)") {}
};

class SegmentationMismatchError : public InputError {
 public:
  explicit SegmentationMismatchError(const std::string& msg)
      : InputError(msg) {}
};

class OverlappingMentionsError : public std::logic_error {
 public:
  explicit OverlappingMentionsError(const std::string& msg)
      : std::logic_error(msg) {}
};

class InconsistentRunsError : public std::runtime_error {
 public:
  explicit InconsistentRunsError(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace tmr
