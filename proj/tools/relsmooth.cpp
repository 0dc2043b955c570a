// relsmooth run script.rsm [--format json|text] [--max-pairs N]
//                          [--max-degree N] [--cutoff N] [--seed N]
//
// Exit codes: 0 all commands succeeded, 1 some command failed,
// 2 parse error or unreadable script.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "relsmooth/relsmooth.hpp"

int main(int argc, char** argv) {
  CLI::App app{"smoothness and relative homological invariants of "
               "finitely presented algebra extensions"};
  app.require_subcommand(1);

  std::string path, format = "text";
  relsmooth::engine::ExecOptions opt;

  CLI::App* run = app.add_subcommand("run", "execute a script");
  run->add_option("script", path, "script file (.rsm)")->required();
  run->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  run->add_option("--max-pairs", opt.bud.max_pairs,
                  "Groebner S-pair budget")
      ->envname("RELSMOOTH_BUDGET_MAX_PAIRS");
  run->add_option("--max-degree", opt.bud.max_degree,
                  "Groebner degree budget")
      ->envname("RELSMOOTH_BUDGET_MAX_DEGREE");
  run->add_option("--cutoff", opt.cutoff, "resolution length cutoff")
      ->envname("RELSMOOTH_BUDGET_CUTOFF");
  run->add_option("--seed", opt.seed, "random seed (reserved)");

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(path);
  if (!in) {
    std::cerr << "relsmooth: cannot open '" << path << "'\n";
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  relsmooth::dsl::Script script;
  try {
    script = relsmooth::dsl::Parser{}.parse(buf.str());
  } catch (const relsmooth::dsl::ParseError& e) {
    std::cerr << "relsmooth: " << path << ": " << e.what() << "\n";
    return 2;
  }

  relsmooth::engine::ExecResult res = relsmooth::engine::execute(script, opt);
  if (format == "json")
    std::cout << res.report.dump(2) << "\n";
  else
    std::cout << res.text;
  return res.ok ? 0 : 1;
}
