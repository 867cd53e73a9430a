#pragma once

#include "nsforge/io.hpp"

#include <string>
#include <vector>

namespace nsforge::cli {

enum class Status { Ok, Negative, Error };

struct CommandResult {
  Status status = Status::Ok;
  io::Json payload = io::Json::object();
  std::vector<std::string> diagnostics;
  bool written = false;  // document already sent to --out

  int exit_code() const { return static_cast<int>(status); }
  /// The newline-terminated document for stdout (ok / negative) or stderr (error).
  std::string render() const;
};

/// argv[0] is the program name. Never throws; --out is honoured here.
CommandResult run(const std::vector<std::string>& argv);

}  // namespace nsforge::cli
