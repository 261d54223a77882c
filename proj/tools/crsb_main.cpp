// crsb: batch driver for spherical Coxeter complexes and buildings.
// Builds presets, certifies convexity / complete reducibility, runs the
// decomposition, and fuzzes the invariant batteries over seeded corpora.
#include <CLI11.hpp>
#include <iostream>

#include "crsb/battery.hpp"
#include "crsb/json_io.hpp"

using namespace crsb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitViolation = 3;

BuildingPtr load_building(const std::string& path) {
  return building_from_json(read_json_file(path));
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file_atomic(path, content);
}

int cmd_build(const std::string& preset, const std::string& input, const std::string& out,
              const std::string& emit_kind, bool no_delta) {
  BuildingPtr b;
  if (!preset.empty())
    b = build_preset(preset);
  else
    b = load_building(input);
  WdReport report = verify_wd_axioms(*b);
  if (!report.ok()) {
    std::cerr << "WD axioms fail (" << report.violations.size() << " violations):\n"
              << wd_report_to_json(report).dump(2) << "\n";
    return kExitViolation;
  }
  if (emit_kind == "dot")
    emit(out, building_dot(*b));
  else
    emit(out, building_to_json(*b, !no_delta).dump(2) + "\n");
  std::cout << "chambers: " << b->n_chambers << "\nvertices: " << b->vertices.size()
            << "\nsimplices: " << b->simplices.size() << "\n";
  return kExitOk;
}

int cmd_check(const std::string& building_path, const std::string& subcomplex_path,
              const std::string& mode, const std::string& out, const std::string& emit_kind,
              bool serial) {
  Exec ex = serial ? Exec::serial : Exec::parallel;
  BuildingPtr b = load_building(building_path);
  Subcomplex a = subcomplex_from_json(b, read_json_file(subcomplex_path), true);
  if (emit_kind == "dot") {
    emit(out, subcomplex_dot(a));
    return kExitOk;
  }
  json j;
  bool pass = true;
  ConvexityCertificate conv = is_convex(a, ex);
  j["convex"] = convexity_to_json(*b, conv);
  pass = pass && conv.convex;
  if (mode == "cr" || mode == "all") {
    CrCertificate cr = complete_reducibility(a, CrMode::All, ex);
    j["cr"] = cr_to_json(*b, cr);
    pass = pass && cr.completely_reducible;
  }
  j["pass"] = pass;
  emit(out, j.dump(2) + "\n");
  std::cout << (pass ? "all checks passed" : "check failed, certificate written") << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_decompose(const std::string& building_path, const std::string& subcomplex_path,
                  const std::string& out, bool serial) {
  Exec ex = serial ? Exec::serial : Exec::parallel;
  BuildingPtr b = load_building(building_path);
  Subcomplex a = subcomplex_from_json(b, read_json_file(subcomplex_path), true);
  Decomposition d = decompose(a, ex);
  emit(out, decomposition_to_json(*b, d).dump(2) + "\n");
  if (!d.precheck_ok) {
    std::cout << "refused: subcomplex is not convex and completely reducible\n";
    return kExitCheckFailed;
  }
  if (!d.violations.empty()) {
    std::cout << d.violations.size() << " invariant violations\n";
    return kExitViolation;
  }
  std::cout << "m = " << d.m << ", k = " << d.k
            << ", Z chambers = " << (d.z ? d.z->n_chambers : 0) << "\n";
  return kExitOk;
}

int cmd_fuzz(const std::string& building_path, int count, uint64_t seed, const std::string& out,
             bool serial) {
  Exec ex = serial ? Exec::serial : Exec::parallel;
  BuildingPtr b = load_building(building_path);
  BatteryResult total;
  WdReport wd = verify_wd_axioms(*b, ex);
  if (!wd.ok()) {
    for (const auto& v : wd.violations)
      total.violations.push_back({"wd-" + v.rule, v.detail});
  } else {
    total = run_fuzz(b, count, seed, ex);
  }
  json j = battery_to_json(total);
  j["seed"] = seed;
  j["count"] = count;
  if (!out.empty()) emit(out, j.dump(2) + "\n");
  std::cout << "cases: " << total.cases << ", convex: " << total.convex_cases
            << ", cr: " << total.cr_cases << ", empty: " << total.skipped_empty
            << ", violations: " << total.violations.size() << "\n";
  if (!total.violations.empty()) {
    std::cerr << violations_to_json(total.violations).dump(2) << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_gen(const std::string& building_path, const std::string& kind, uint64_t seed, int index,
            const std::string& out) {
  BuildingPtr b = load_building(building_path);
  Subcomplex a;
  if (kind == "apartment") {
    const auto& aps = all_apartments(*b);
    const Apartment& ap = aps[size_t(index) % aps.size()];
    std::vector<int> ids;
    for (int c : ap.chambers) ids.push_back(b->chamber_simplex(c));
    a = Subcomplex(b, ids, true);
  } else if (kind == "chamber") {
    a = Subcomplex(b, {b->chamber_simplex(index % b->n_chambers)}, true);
  } else if (kind == "full") {
    a = full_subcomplex(b);
  } else if (kind == "hull" || kind == "fixed") {
    Rng rng(seed);
    for (int i = 0;; ++i) {
      GeneratedSubcomplex g = random_convex_subcomplex(b, rng);
      bool is_fixed = g.description.rfind("fixed", 0) == 0;
      if ((kind == "fixed") == is_fixed || i > 256) {
        a = g.a;
        std::cout << g.description << "\n";
        break;
      }
    }
  } else {
    std::cerr << "unknown kind: " << kind << "\n";
    return 1;
  }
  emit(out, subcomplex_to_json(a).dump() + "\n");
  std::cout << "simplices: " << a.size() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for spherical buildings and convex subcomplexes"};
  app.require_subcommand(1);

  std::string preset, input, out, building_path, subcomplex_path;
  std::string mode = "all", emit_kind = "json", kind = "hull";
  int count = 100, index = 0;
  uint64_t seed = 1;
  bool serial = false, no_delta = false;

  auto* build = app.add_subcommand("build", "construct a building and write interchange JSON");
  auto* opt_preset = build->add_option("--preset", preset, "preset name, e.g. fano, pg32, fano*s0");
  build->add_option("--input", input, "building JSON to revalidate")->excludes(opt_preset);
  build->add_option("-o,--output", out, "output file (- for stdout)");
  build->add_option("--emit", emit_kind, "json|dot");
  build->add_flag("--no-delta", no_delta, "omit the dense delta table");

  auto* check = app.add_subcommand("check", "convexity / complete reducibility certificates");
  check->add_option("--building", building_path, "building JSON")->required();
  check->add_option("--subcomplex", subcomplex_path, "subcomplex JSON")->required();
  check->add_option("--mode", mode, "convex|cr|all");
  check->add_option("-o,--output", out, "certificate file");
  check->add_option("--emit", emit_kind, "json|dot");
  check->add_flag("--serial", serial, "serial kernels");

  auto* dec = app.add_subcommand("decompose", "decompose a convex cr subcomplex");
  dec->add_option("--building", building_path, "building JSON")->required();
  dec->add_option("--subcomplex", subcomplex_path, "subcomplex JSON")->required();
  dec->add_option("-o,--output", out, "decomposition file");
  dec->add_flag("--serial", serial, "serial kernels");

  auto* fuzz = app.add_subcommand("fuzz", "run the invariant batteries over generated subcomplexes");
  fuzz->add_option("--building", building_path, "building JSON")->required();
  fuzz->add_option("--count", count, "number of generated subcomplexes");
  fuzz->add_option("--seed", seed, "RNG seed");
  fuzz->add_option("-o,--output", out, "summary file");
  fuzz->add_flag("--serial", serial, "serial kernels");

  auto* gen = app.add_subcommand("gen", "generate a subcomplex file");
  gen->add_option("--building", building_path, "building JSON")->required();
  gen->add_option("--kind", kind, "apartment|chamber|full|hull|fixed");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--index", index, "apartment/chamber index");
  gen->add_option("-o,--output", out, "subcomplex file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      if (preset.empty() && input.empty())
        throw CLI::ValidationError("build", "need --preset or --input");
      return cmd_build(preset, input, out, emit_kind, no_delta);
    }
    if (check->parsed()) return cmd_check(building_path, subcomplex_path, mode, out, emit_kind, serial);
    if (dec->parsed()) return cmd_decompose(building_path, subcomplex_path, out, serial);
    if (fuzz->parsed()) return cmd_fuzz(building_path, count, seed, out, serial);
    if (gen->parsed()) return cmd_gen(building_path, kind, seed, index, out);
  } catch (const ViolationError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
