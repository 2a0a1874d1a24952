// Command-line front end: loads a scenario (file or preset), runs the
// requested verification suites and emits the report.
//
// Exit status: 0 all PASS, 1 any FAIL, 2 UNRESOLVED present, 3 usage/IO
// error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "gkoszul/gkoszul.hpp"

namespace {

std::set<std::string> expand_suites(const std::vector<std::string>& names) {
  std::set<std::string> all = {"euler", "thm21", "thm22", "thm31", "cor33", "icis"};
  std::set<std::string> out;
  for (const auto& n : names) {
    if (n == "all") return all;
    if (!all.count(n)) throw gkoszul::ParseError("unknown suite '" + n + "'");
    out.insert(n);
  }
  if (out.empty()) return all;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gkoszul: builds generalized Koszul complexes and bicomplexes over "
               "weighted-graded rings and verifies their homology length formulas"};

  std::string scenario_arg;
  std::vector<std::string> suites_arg;
  std::string t_arg, field_arg, report_fmt = "text", out_path;
  int bound = -1, window = -1, jobs = 0;

  app.add_option("scenario", scenario_arg,
                 "scenario JSON file or preset name (cusp, brieskorn:x^A+y^B, fermat3, fermat4, "
                 "ci-curve, ci-surface, koszul-xyz, split-unit)")
      ->required();
  app.add_option("--suite", suites_arg, "suites to run: euler thm21 thm22 thm31 cor33 icis all")
      ->delimiter(',');
  app.add_option("--t", t_arg, "t range as from:to (overrides the scenario)");
  app.add_option("--bound", bound, "absolute degree bound B");
  app.add_option("--window", window, "termination window W");
  app.add_option("--field", field_arg, "field override: fp:<p> or q");
  app.add_option("--report", report_fmt, "report format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", out_path, "write the report to a file instead of stdout");
  app.add_option("--jobs", jobs, "worker threads for degree-parallel computations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    auto doc = gkoszul::load_scenario_json(scenario_arg);
    auto suites = expand_suites(suites_arg);

    std::optional<int> bound_ov, window_ov;
    if (bound >= 0) bound_ov = bound;
    if (window >= 1) window_ov = window;
    std::optional<std::pair<int, int>> t_ov;
    if (!t_arg.empty()) {
      int lo, hi;
      if (std::sscanf(t_arg.c_str(), "%d:%d", &lo, &hi) != 2 || lo > hi)
        throw gkoszul::ParseError("--t expects from:to");
      t_ov = {lo, hi};
    }

    std::string field_spec = field_arg.empty()
                                 ? doc.value("field", std::string("fp:32003"))
                                 : field_arg;

    std::optional<gkoszul::Report> rep;
    if (field_spec == "q") {
      gkoszul::RationalField field;
      rep = gkoszul::run_scenario(field, doc, suites, bound_ov, window_ov, t_ov, jobs);
    } else if (field_spec.rfind("fp:", 0) == 0) {
      gkoszul::FpField field(std::stoull(field_spec.substr(3)));
      rep = gkoszul::run_scenario(field, doc, suites, bound_ov, window_ov, t_ov, jobs);
    } else {
      throw gkoszul::ParseError("field must be fp:<p> or q");
    }

    std::string body;
    if (report_fmt == "json")
      body = rep->to_json().dump(2) + "\n";
    else if (report_fmt == "csv")
      body = rep->to_csv();
    else
      body = rep->to_text();

    if (out_path.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return 3;
      }
      out << body;
    }
    return rep->exit_status();
  } catch (const gkoszul::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const gkoszul::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
