#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "scissors/acceptance.hpp"
#include "scissors/reports.hpp"

using namespace scissors;

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string coeff;
  int truncate = -1;
  int bits = 200;
  int closure_rounds = 3;
  std::string out;
  std::string level;
};

void emit(const Json& j, const Options& o) {
  if (o.out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error("ParseError", "cannot write " + o.out);
  f << j.dump(2) << "\n";
}

std::string summary(const Json& homology, const std::string& name) {
  std::string s;
  for (auto& g : homology) {
    HomologyGroup h;
    h.degree = g["degree"];
    h.rank = g["rank"];
    for (auto& t : g["torsion"]) h.torsion.push_back(t.is_string() ? Int(t.get<std::string>()) : Int(t.get<long>()));
    if (!h.zero()) s += "  " + name + "_" + std::to_string(h.degree) + " = " + h.str() + "\n";
  }
  return s.empty() ? "  all homology vanishes\n" : s;
}

int cmd_homology(const Options& o) {
  Coeff c = parse_coeff(o.coeff.empty() ? "z" : o.coeff);
  auto out = homology_report(read_json_file(o.inputs.at(0)), c, o.closure_rounds);
  emit(out, o);
  std::cerr << "reduced homology over " << coeff_name(c) << ":\n" << summary(out["homology"], "H~");
  return 0;
}

int cmd_dehn_complex(const Options& o) {
  Coeff c = parse_coeff(o.coeff.empty() ? "zhalf" : o.coeff);
  auto out = dehn_complex_report(read_json_file(o.inputs.at(0)), read_json_file(o.inputs.at(1)), o.truncate, c,
                                 o.closure_rounds);
  emit(out, o);
  auto& ss = out["spectral_sequence"];
  std::cerr << "Dehn complex, d = " << out["d"] << ", group order " << out["group_order"] << "\n"
            << summary(out["homology"], "H") << "bottom row matches: " << ss["bottom_row_matches"]
            << ", rows below vanish: " << ss["below_row_vanishes"] << "\n";
  if (!out["message"].get<std::string>().empty()) std::cerr << out["message"].get<std::string>() << "\n";
  return 0;
}

int cmd_classical(const Options& o) {
  auto out = classical_report(read_json_file(o.inputs.at(0)), o.bits);
  emit(out, o);
  auto& t = out["dehn_invariant"];
  std::cerr << "Dehn invariant: " << t["text"].get<std::string>()
            << (t["heuristic"].get<bool>() ? "  (nonvanishing certified heuristically)" : "")
            << "\nvolume: " << out["volume"].dump() << "\n";
  return 0;
}

int cmd_ccs(const Options& o) {
  auto out = ccs_report(read_json_file(o.inputs.at(0)), o.bits);
  emit(out, o);
  std::cerr << "simplex with " << out["vertices"].size() << " vertices, sign " << out["sign"] << ", volume "
            << out["volume"]["value"].dump() << "\n";
  return 0;
}

int cmd_selftest(const Options& o) {
  auto ids = criteria_for_level(o.level);
  Json results = Json::array();
  int failed = 0;
  for (int id : ids) {
    auto r = run_criterion(id);
    std::cerr << format_result(r) << "\n";
    results.push_back({{"criterion", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"seconds", r.seconds},
                       {"limit_seconds", r.limit},
                       {"detail", r.detail}});
    failed += !r.pass;
  }
  emit({{"level", o.level}, {"passed", static_cast<int>(ids.size()) - failed}, {"failed", failed}, {"results", results}},
       o);
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scissors congruence computations: buildings, Dehn complexes, classical Dehn invariants"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--out", o.out, "write JSON here instead of standard output");
  };
  auto positive = CLI::PositiveNumber;

  auto* hom = app.add_subcommand("homology", "reduced homology of a simplicial set or of the building of a family");
  hom->add_option("file", o.inputs, "simpset or family JSON")->required()->expected(1)->check(CLI::ExistingFile);
  hom->add_option("--coeff", o.coeff, "z, zhalf or q")->check(CLI::IsMember({"z", "zhalf", "q"}));
  hom->add_option("--closure-rounds", o.closure_rounds, "closure round limit")->check(positive);
  add_common(hom);

  auto* dc = app.add_subcommand("dehn-complex", "Dehn complex of a family under a finite group");
  dc->add_option("files", o.inputs, "family JSON, group JSON")->required()->expected(2)->check(CLI::ExistingFile);
  dc->add_option("--coeff", o.coeff, "z, zhalf or q (default zhalf)")->check(CLI::IsMember({"z", "zhalf", "q"}));
  dc->add_option("--truncate", o.truncate, "bar complex truncation degree")->check(positive);
  dc->add_option("--closure-rounds", o.closure_rounds, "closure round limit")->check(positive);
  add_common(dc);

  auto* cl = app.add_subcommand("classical", "Dehn invariant and volume of a polytope");
  cl->add_option("file", o.inputs, "polytope JSON")->required()->expected(1)->check(CLI::ExistingFile);
  cl->add_option("--bits", o.bits, "working precision in bits")->check(CLI::Range(64, 100000));
  add_common(cl);

  auto* ccs = app.add_subcommand("ccs", "geodesic simplex of a tuple of isometries");
  ccs->add_option("file", o.inputs, "tuple JSON")->required()->expected(1)->check(CLI::ExistingFile);
  ccs->add_option("--bits", o.bits, "working precision in bits")->check(CLI::Range(64, 100000));
  add_common(ccs);

  auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
  st->add_option("level", o.level, "fast or full")->required();
  add_common(st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*hom) return cmd_homology(o);
    if (*dc) return cmd_dehn_complex(o);
    if (*cl) return cmd_classical(o);
    if (*ccs) return cmd_ccs(o);
    return cmd_selftest(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return 2;
  }
}
