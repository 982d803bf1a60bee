#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "valx/extension.hpp"
#include "valx/parse.hpp"

namespace valx {

enum class Command { classify, value, degdom, equiv, image, limsets, residue, fiber, report };

std::optional<Command> command_from_name(const std::string& name);
std::string command_name(Command c);

struct CommandSpec {
  Command command = Command::report;
  std::string field;               // empty: laurentQ unless the sequence names one
  std::string seq;
  std::string seq2;
  std::vector<std::string> phi;
  bool json = false;
  std::optional<Window> window;
  std::optional<long> prefix;
  std::size_t prime = 0;           // collapsed coordinates for `fiber`
};

// "a:b" with 0 <= a <= b.
Window parse_window(const std::string& text);

using Json = nlohmann::ordered_json;

// Report object: {sequence, kind, gauge_cut, breadth, pseudo_limits, queries}.
Json sequence_report(const SeqSpec& spec, const PMSeq& E, const std::vector<std::string>& phis);

// Exit status: 0 success, 1 domain error, 2 syntax error or missing argument.
int run(const CommandSpec& cmd, std::ostream& out, std::ostream& err);

}  // namespace valx
