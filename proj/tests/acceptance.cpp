// Acceptance run: one PASS/FAIL line per criterion; exit status 0 iff all pass.
#include <iostream>

#include "CLI11.hpp"
#include "ncnls/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria 1-9"};
  std::string profile = "full", configs = "configs", out = "out/acceptance";
  std::vector<int> only;
  int workers = 1;
  app.add_option("--profile", profile)->check(CLI::IsMember({"full", "reduced"}));
  app.add_option("--configs", configs);
  app.add_option("--out", out);
  app.add_option("--only", only)->delimiter(',');
  app.add_option("--workers", workers);
  CLI11_PARSE(app, argc, argv);

  ncnls::AcceptanceOptions options;
  options.profile = ncnls::parse_profile(profile);
  options.config_dir = configs;
  options.output_dir = out;
  options.workers = workers;
  options.only = {only.begin(), only.end()};
  options.log = [](const std::string& s) { std::cout << "# " << s << std::endl; };

  const auto results = ncnls::run_acceptance(options);
  std::cout << ncnls::format_results(results);
  std::cout << "profile " << profile << ": " << (ncnls::all_passed(results) ? "all criteria passed" : "some criteria failed")
            << std::endl;
  return ncnls::all_passed(results) ? 0 : 1;
}
