// qkverify: command line front end for the verification suites.
//
//   qkverify verify <suite> [--cubic homog|complete|incomplete|n1|rand3|file.json]
//                           [--samples N] [--seed S] [--c VAL] [--tol-scale X]
//                           [--format text|json|csv] [--out FILE]
//
// Exit status: 0 all checks pass, 1 at least one check fails, 2 usage or
// configuration error. Reports carry no timing, so a fixed seed produces
// byte-identical output.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmap/cubic.hpp"
#include "qmap/cubic_json.hpp"
#include "qmap/verify.hpp"

namespace {

bool is_preset(const std::string& name) {
  return name == "homog" || name == "complete" || name == "incomplete" || name == "n1" ||
         name == "rand3";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical certification of the q-map family of quaternionic metrics"};
  app.require_subcommand(1);

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  ver->add_option("suite", suite, "one of killing, brackets, liealg, mirror, sduality, twistor, density, all")
      ->required()
      ->check(CLI::IsMember({"killing", "brackets", "liealg", "mirror", "sduality",
                             "twistor", "density", "all"}));
  std::string cubic = "homog";
  ver->add_option("--cubic", cubic,
                  "cubic preset (homog|complete|incomplete|n1|rand3) or a JSON file");
  int samples = 0;
  ver->add_option("--samples", samples, "sample count override, 0 keeps suite defaults")
      ->check(CLI::NonNegativeNumber);
  std::uint64_t seed = 1;
  ver->add_option("--seed", seed, "random stream seed");
  double c = 0.0;
  ver->add_option("--c", c, "one-loop deformation parameter");
  double tol_scale = 1.0;
  ver->add_option("--tol-scale", tol_scale, "multiply every tolerance")
      ->check(CLI::PositiveNumber);
  std::string format = "text";
  ver->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  std::string out;
  ver->add_option("--out", out, "write the report to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  qmap::VerifyContext ctx;
  try {
    if (is_preset(cubic)) {
      qmap::Preset pr = qmap::make_preset(cubic, seed);
      ctx.f = pr.form;
      ctx.base_t = pr.base_t;
      ctx.cubic_name = pr.name;
      if (cubic == "homog") {
        ctx.has_curve = true;
        ctx.curve = qmap::CurveId::Homogeneous;
      } else if (cubic == "complete") {
        ctx.has_curve = true;
        ctx.curve = qmap::CurveId::InhomogeneousComplete;
      } else if (cubic == "incomplete") {
        ctx.has_curve = true;
        ctx.curve = qmap::CurveId::IncompleteMaximal;
      }
    } else {
      std::ifstream in(cubic);
      if (!in) {
        std::cerr << "config error: cannot open cubic file: " << cubic << "\n";
        return 2;
      }
      nlohmann::json j;
      in >> j;
      ctx.f = qmap::cubic_from_json(j);
      if (j.contains("base_t"))
        ctx.base_t = j["base_t"].get<std::vector<double>>();
      else
        ctx.base_t = qmap::Vec(ctx.f.n(), 1.0);
      if (static_cast<int>(ctx.base_t.size()) != ctx.f.n()) {
        std::cerr << "config error: base_t must have " << ctx.f.n() << " entries\n";
        return 2;
      }
      ctx.cubic_name = cubic;
    }
    if (!qmap::log_hess_negdef(ctx.f, ctx.base_t)) {
      std::cerr << "config error: base point is not in the positivity domain of the cubic\n";
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  ctx.c = c;
  ctx.seed = seed;
  ctx.samples = samples;
  ctx.tol_scale = tol_scale;

  std::vector<qmap::SuiteReport> reports;
  try {
    reports = qmap::run_suites(suite, ctx);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass();

  std::string body;
  if (format == "json")
    body = qmap::to_json(reports);
  else if (format == "csv")
    body = qmap::to_csv(reports);
  else
    body = qmap::to_text(reports);

  if (!out.empty()) {
    std::ofstream o(out);
    if (!o) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
    o << body;
    std::cout << (pass ? "PASS" : "FAIL") << " " << suite << " -> " << out << "\n";
  } else {
    std::cout << body;
  }
  return pass ? 0 : 1;
}
