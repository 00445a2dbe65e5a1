#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  using versal::cli::JobSpec;
  CLI::App app{"versal-kit: deformation invariants of isolated complete intersection singularities"};
  JobSpec job;
  std::string field, json_path;
  unsigned order = 0;
  app.add_option("command", job.command, "invariants | miniversal | ks | lift | verify | ext")->required();
  app.add_option("input", job.input_path, "input file")->required();
  app.add_option("--field", field, "coefficient field: Q or Fp:P");
  app.add_option("--order", order, "truncation order for lift and verify (default 3)");
  app.add_option("--json", json_path, "write the JSON report to this file");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!field.empty()) job.field_spec = field;
  if (order > 0) job.options["order"] = std::to_string(order);

  versal::cli::Report rep = versal::cli::run(job);
  std::cout << rep.text;
  if (rep.structured.contains("error"))
    std::cerr << "error: " << rep.structured["error"]["message"].get<std::string>() << "\n";
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return 2;
    }
    out << rep.structured.dump(2) << "\n";
  }
  return rep.exit_code;
}
