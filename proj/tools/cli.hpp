#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "versal/field.hpp"

namespace versal::cli {

struct JobSpec {
  std::string command;
  std::optional<std::string> field_spec;
  std::string input_path;
  std::map<std::string, std::string> options;
};

struct BaseSpec {
  std::vector<std::string> params;
  unsigned order = 1;
  std::vector<std::string> relations;
  bool order_given = false;
};

struct InputSpec {
  std::vector<std::string> vars;
  Field field;
  bool field_given = false;
  std::vector<std::string> equations;
  std::optional<BaseSpec> base;
};

struct Report {
  nlohmann::ordered_json structured;
  std::string text;
  int exit_code = 0;
};

extern const std::vector<std::string> kCommands;

/// Line-oriented input: `vars:`, `field:`, one equation per line, then an
/// optional `base:` block with `params:`, `order:` and `relations:`.
/// Throws ParseError with the offending line number.
InputSpec parse_input(const std::string& text);

/// Never throws for bad input: errors become exit codes 1 (mathematical
/// rejection) or 2 (parse / IO).
Report run(const JobSpec& job);

std::string render_text(const nlohmann::ordered_json& doc);

/// Drops timing fields so reports can be compared byte for byte.
nlohmann::ordered_json without_timings(nlohmann::ordered_json doc);

}  // namespace versal::cli
