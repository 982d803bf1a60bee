#include <iostream>

#include <CLI11.hpp>

#include "valx/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"valx: extensions of a valuation to K(X) through pseudo-monotone sequences"};
  std::string command, window, format = "text";
  valx::CommandSpec cmd;
  long prefix = 0;

  app.add_option("command", command,
                 "classify | value | degdom | equiv | image | limsets | residue | fiber | report")
      ->required();
  app.add_option("--field", cmd.field, "laurentQ, laurentQ:F7, laurentQ:Q5, padic:5, composite:5");
  app.add_option("--seq", cmd.seq, "sequence, e.g. pcv(alpha=0, breadth=\">=1\")");
  app.add_option("--seq2", cmd.seq2, "second sequence for equiv");
  app.add_option("--phi", cmd.phi, "rational function in X (repeatable)");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--window", window, "index window a:b (default 8:24)");
  app.add_option("--prefix", prefix, "audit prefix length")->check(CLI::Range(3L, 4096L));
  app.add_option("--prime", cmd.prime, "collapsed coordinates for fiber (0 = maximal ideal)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto c = valx::command_from_name(command);
  if (!c) {
    std::cerr << "usage error: unknown command '" << command << "'\n";
    return 2;
  }
  cmd.command = *c;
  cmd.json = format == "json";
  if (prefix) cmd.prefix = prefix;
  if (!window.empty()) {
    try {
      cmd.window = valx::parse_window(window);
    } catch (const valx::SyntaxError& e) {
      std::cerr << "syntax error: " << e.what() << "\n";
      return 2;
    }
  }
  return valx::run(cmd, std::cout, std::cerr);
}
