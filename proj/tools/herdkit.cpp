#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <herdkit/coalg.hpp>
#include <herdkit/corpus.hpp>
#include <herdkit/errors.hpp>
#include <herdkit/io.hpp>
#include <herdkit/reconstruct.hpp>
#include <herdkit/setcore.hpp>
#include <herdkit/tannaka.hpp>
#include <herdkit/vflock.hpp>

namespace fs = std::filesystem;
using namespace herdkit;

namespace {

struct Output {
  std::string out_dir;
  bool json = false;
  bool all_witnesses = false;
};

void add_output_flags(CLI::App* cmd, Output& o) {
  cmd->add_option("--out", o.out_dir, "directory for report.json and produced files");
  cmd->add_flag("--json", o.json, "print the report as JSON");
  cmd->add_flag("--all-witnesses", o.all_witnesses, "witness on every failed check");
}

// Renders the report, writes artifacts under --out, returns the exit code:
// 0 all checks passed, 1 otherwise.
int emit(const std::string& command, const CheckReport& rep, const Output& opt,
         const std::vector<std::pair<std::string, Json>>& artifacts = {},
         const Json& extra = Json::object()) {
  const bool failed = !rep.all_passed() || extra.contains("error");
  const Json checks = report_to_json(rep, opt.all_witnesses)["checks"];
  Json report{{"kind", "report"},
              {"command", command},
              {"all_passed", !failed},
              {"checks", checks}};
  for (const auto& [key, value] : extra.items()) report[key] = value;
  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    Json written = Json::object();
    for (const auto& [name, body] : artifacts) {
      const fs::path file = fs::path(opt.out_dir) / name;
      write_json_file(file, body);
      written[name] = file.string();
    }
    if (!written.empty()) report["artifacts"] = written;
    write_json_file(fs::path(opt.out_dir) / "report.json", report);
  }
  if (opt.json) {
    std::cout << report.dump(2) << "\n";
    return failed ? 1 : 0;
  }
  std::size_t passed = 0;
  bool witness_shown = false;
  for (const auto& c : rep.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
    if (c.passed) {
      ++passed;
    } else if (c.witness && (opt.all_witnesses || !witness_shown)) {
      witness_shown = true;
      std::cout << "  at input (";
      for (std::size_t i = 0; i < c.witness->input.size(); ++i)
        std::cout << (i ? "," : "") << c.witness->input[i];
      std::cout << ") component " << c.witness->component << ": " << c.witness->lhs
                << " vs " << c.witness->rhs << "\n";
    }
  }
  if (extra.contains("error"))
    std::cout << "error " << extra["error"]["kind"].get<std::string>() << ": "
              << extra["error"]["message"].get<std::string>() << "\n";
  std::cout << passed << "/" << rep.checks.size() << " checks passed\n";
  if (report.contains("artifacts"))
    for (const auto& [name, path] : report["artifacts"].items())
      std::cout << "wrote " << path.get<std::string>() << "\n";
  return failed ? 1 : 0;
}

Json load_file(const std::string& file) { return read_json_file(file); }

StructureFile load_structure(const std::string& file) {
  return structure_from_json(load_file(file), file);
}

Herd load_herd(const std::string& file) {
  return as_herd(load_structure(file), file);
}

Comodule load_comodule(const std::string& file) {
  return comodule_from_json(load_file(file), fs::path(file).parent_path(), file);
}

int cmd_verify(const std::string& what, const std::string& file, const Output& opt) {
  CheckReport rep;
  if (what == "heap") {
    rep = check_heap(heap_from_json(load_file(file), file));
  } else if (what == "group") {
    rep = check_group(group_from_json(load_file(file), file));
  } else if (what == "comonoid") {
    rep = check_comonoid(as_comonoid(load_structure(file)));
  } else if (what == "herd") {
    rep = check_herd(load_herd(file));
  } else if (what == "bimonoid") {
    const StructureFile s = load_structure(file);
    rep = s.nu ? check_hopf(as_hopf(s, file)) : check_bimonoid(as_bimonoid(s, file));
  } else {
    rep = check_comodule(load_comodule(file));
  }
  return emit("verify " + what, rep, opt);
}

int cmd_heap_to_group(const std::string& file, const Output& opt) {
  const HeapTable h = heap_from_json(load_file(file), file);
  CheckReport pre = check_heap(h);
  if (!pre.all_passed()) return emit("heap-to-group", pre, opt);
  const HeapToGroup r = heap_to_group(h);
  CheckReport rep = check_group(r.group);
  Json extra{{"varpi", r.varpi}};
  if (r.empty_carrier)
    extra["warnings"] = Json::array({"empty carrier collapses to the trivial group"});
  return emit("heap-to-group", rep, opt, {{"group.json", group_to_json(r.group)}}, extra);
}

int cmd_group_to_heap(const std::string& file, const Output& opt) {
  const GroupTable g = group_from_json(load_file(file), file);
  CheckReport pre = check_group(g);
  if (!pre.all_passed()) return emit("group-to-heap", pre, opt);
  const HeapTable h = group_to_heap(g);
  return emit("group-to-heap", check_heap(h), opt, {{"heap.json", heap_to_json(h)}});
}

int cmd_linearize(const std::string& file, const Output& opt) {
  const Json j = load_file(file);
  const std::string kind = kind_of(j, file);
  if (kind == "heap") {
    const HeapTable h = heap_from_json(j, file);
    CheckReport pre = check_heap(h);
    if (!pre.all_passed()) return emit("linearize", pre, opt);
    const Herd a = heap_algebra(h);
    return emit("linearize", check_herd(a), opt,
                {{"structure.json", structure_to_json(structure_of(a))}});
  }
  if (kind == "group") {
    const GroupTable g = group_from_json(j, file);
    CheckReport pre = check_group(g);
    if (!pre.all_passed()) return emit("linearize", pre, opt);
    const HopfMonoid h = group_algebra(g);
    return emit("linearize", check_hopf(h), opt,
                {{"structure.json", structure_to_json(structure_of(h))}});
  }
  throw SchemaError(file + "/kind", "expected \"heap\" or \"group\"");
}

Json reconstruction_to_json(const Reconstruction& r) {
  return Json{{"side", r.side},         {"dim", r.hdim},
              {"varpi", matrix_to_json(r.varpi)},
              {"delta", matrix_to_json(r.hbi.delta)},
              {"eps", matrix_to_json(r.hbi.eps)},
              {"mu", matrix_to_json(r.hbi.mu)},
              {"eta", matrix_to_json(r.hbi.eta)},
              {"nu", matrix_to_json(r.nuH)},
              {"action", matrix_to_json(r.action)}};
}

int cmd_reconstruct(const std::string& file, const std::string& side, const Output& opt) {
  const Herd a = load_herd(file);
  CheckReport pre = check_herd(a);
  if (!pre.all_passed()) return emit("reconstruct", pre, opt);
  CheckReport rep;
  Json extra = Json::object();
  std::vector<std::pair<std::string, Json>> artifacts;
  std::optional<Reconstruction> left, right;
  if (side == "left" || side == "both") {
    left = reconstruct(a, "left");
    rep.merge(left->report, "left");
    extra["left"] = reconstruction_to_json(*left);
    artifacts.emplace_back("left_hopf.json", structure_to_json(structure_of(left->hopf())));
  }
  if (side == "right" || side == "both") {
    right = reconstruct(a, "right");
    rep.merge(right->report, "right");
    extra["right"] = reconstruction_to_json(*right);
    artifacts.emplace_back("right_hopf.json", structure_to_json(structure_of(right->hopf())));
  }
  if (left && right) rep.merge(bimodule_check(*left, *right));
  return emit("reconstruct", rep, opt, artifacts, extra);
}

int cmd_antipode(const std::string& file, const Output& opt) {
  const Bimonoid b = as_bimonoid(load_structure(file), file);
  CheckReport pre = check_bimonoid(b);
  if (!pre.all_passed()) return emit("antipode", pre, opt);
  try {
    const HopfMonoid h = antipode_from_fusion(b);
    CheckReport rep = check_hopf(h);
    rep.merge(check_fusion_identities(h));
    return emit("antipode", rep, opt,
                {{"hopf.json", structure_to_json(structure_of(h))}},
                Json{{"nu", matrix_to_json(h.nu)}});
  } catch (const NoAntipodeError& e) {
    CheckReport rep = pre;
    rep.fail("fusion_invertible", Witness{{}, 0, "singular", "invertible"});
    const Json extra{{"error", Json{{"kind", "NoAntipodeError"},
                                    {"message", e.what()},
                                    {"fusion", matrix_to_json(e.fusion)}}}};
    return emit("antipode", rep, opt, {}, extra);
  }
}

// Objects must be comodules over the named herd before the flock maps make
// sense; failures surface as ordinary failed checks, not exceptions.
CheckReport precheck_objects(const Herd& a, const std::vector<Comodule>& objs,
                             const std::string& label) {
  CheckReport rep;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const std::string name = label + "_" + std::to_string(i);
    rep.add(name + "_over_given_herd",
            detail::same_herd(a, objs[i].over)
                ? std::nullopt
                : std::make_optional(Witness{{i}, 0, "a different herd",
                                             "the --herd structure"}));
    rep.merge(check_comodule(objs[i]), name);
  }
  return rep;
}

int cmd_flock(const std::string& herd_file, const std::vector<std::string>& object_files,
              const std::string& unit_file, const Output& opt) {
  const Herd a = load_herd(herd_file);
  std::vector<Comodule> objs;
  for (const auto& f : object_files) objs.push_back(load_comodule(f));
  CheckReport rep = precheck_objects(a, objs, "object");
  std::optional<Comodule> unit;
  if (!unit_file.empty()) {
    unit = load_comodule(unit_file);
    rep.merge(precheck_objects(a, {*unit}, "unit"));
  }
  if (!rep.all_passed()) return emit("flock check", rep, opt);

  // The five slots cycle through the supplied objects.
  const auto at = [&](std::size_t i) -> const Comodule& { return objs[i % objs.size()]; };
  const FlockData fd = flock_maps(a, at(0), at(1), at(2), at(3), at(4));
  rep.merge(fd.report);
  if (unit) rep.merge(unit_object_check(a, *unit, objs).report, "unit");
  return emit("flock check", rep, opt, {{"q_left.json", comodule_to_json(fd.q_left)}});
}

int cmd_tannaka(const std::string& herd_file, const std::string& diagram_file,
                const Output& opt) {
  const Herd a = load_herd(herd_file);
  const Diagram d =
      diagram_from_json(load_file(diagram_file), fs::path(diagram_file).parent_path(),
                        diagram_file);
  CheckReport rep = precheck_objects(a, d.objects, "object");
  rep.merge(check_diagram(d));
  if (!rep.all_passed()) return emit("tannaka", rep, opt);
  try {
    const Coend e = coend_herd(coend_comonoid(coend(d)), a);
    const Herd eh{Comonoid{e.dim, e.deltaE, e.epsE}, e.qE};
    rep.merge(check_herd(eh), "coend");
    return emit("tannaka", rep, opt,
                {{"coend.json", structure_to_json(structure_of(eh))}},
                Json{{"dim", e.dim}});
  } catch (const MissingObjectError& e) {
    const Json extra{{"error", Json{{"kind", "MissingObjectError"}, {"message", e.what()}}}};
    return emit("tannaka", rep, opt, {}, extra);
  }
}

int cmd_corpus(const std::string& kind, std::size_t max_size, const Output& opt) {
  const auto files = corpus_files(kind, max_size);
  fs::create_directories(opt.out_dir);
  Json names = Json::array();
  for (const auto& [name, body] : files) {
    write_json_file(fs::path(opt.out_dir) / name, body);
    names.push_back(name);
  }
  return emit("corpus", CheckReport{}, opt, {}, Json{{"files", names}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-rational toolkit for heaps, herds and their Hopf reconstructions"};
  app.require_subcommand(1);
  std::function<int()> run;

  Output vopt;
  std::string vfile;
  CLI::App* verify = app.add_subcommand("verify", "check the axioms of a structure file");
  verify->require_subcommand(1);
  for (const std::string what : {"heap", "group", "comonoid", "herd", "bimonoid", "comodule"}) {
    CLI::App* sub = verify->add_subcommand(what, "verify a " + what + " file");
    sub->add_option("file", vfile, "input file")->required();
    add_output_flags(sub, vopt);
    sub->callback([&run, what, &vfile, &vopt] {
      run = [what, &vfile, &vopt] { return cmd_verify(what, vfile, vopt); };
    });
  }

  Output hgopt;
  std::string hgfile;
  CLI::App* htg = app.add_subcommand("heap-to-group", "quotient a heap to its group");
  htg->add_option("file", hgfile, "heap file")->required();
  add_output_flags(htg, hgopt);
  htg->callback([&] { run = [&] { return cmd_heap_to_group(hgfile, hgopt); }; });

  Output ghopt;
  std::string ghfile;
  CLI::App* gth = app.add_subcommand("group-to-heap", "read a heap off a group");
  gth->add_option("file", ghfile, "group file")->required();
  add_output_flags(gth, ghopt);
  gth->callback([&] { run = [&] { return cmd_group_to_heap(ghfile, ghopt); }; });

  Output lopt;
  std::string lfile;
  CLI::App* lin = app.add_subcommand("linearize", "structure constants of a table");
  lin->add_option("file", lfile, "heap or group file")->required();
  add_output_flags(lin, lopt);
  lin->callback([&] { run = [&] { return cmd_linearize(lfile, lopt); }; });

  Output ropt;
  std::string rfile, rside = "both";
  CLI::App* rec = app.add_subcommand("reconstruct", "Hopf monoid on the herd quotient");
  rec->add_option("file", rfile, "herd structure file")->required();
  rec->add_option("--side", rside, "left, right or both")
      ->check(CLI::IsMember({"left", "right", "both"}));
  add_output_flags(rec, ropt);
  rec->callback([&] { run = [&] { return cmd_reconstruct(rfile, rside, ropt); }; });

  Output aopt;
  std::string afile;
  CLI::App* anti = app.add_subcommand("antipode", "antipode from the fusion operator");
  anti->add_option("file", afile, "bimonoid structure file")->required();
  add_output_flags(anti, aopt);
  anti->callback([&] { run = [&] { return cmd_antipode(afile, aopt); }; });

  Output fopt;
  std::string fherd, funit;
  std::vector<std::string> fobjects;
  CLI::App* flock = app.add_subcommand("flock", "comodule flock checks");
  CLI::App* fcheck = flock->add_subcommand("check", "flock conditions on given objects");
  fcheck->add_option("--herd", fherd, "herd structure file")->required();
  fcheck->add_option("--objects", fobjects, "comodule files")->required()->expected(-1);
  fcheck->add_option("--unit", funit, "candidate unit comodule file");
  add_output_flags(fcheck, fopt);
  fcheck->callback([&] { run = [&] { return cmd_flock(fherd, fobjects, funit, fopt); }; });

  Output topt;
  std::string therd, tdiagram;
  CLI::App* tan = app.add_subcommand("tannaka", "coend herd of a comodule diagram");
  tan->add_option("--herd", therd, "herd structure file")->required();
  tan->add_option("--diagram", tdiagram, "diagram file")->required();
  add_output_flags(tan, topt);
  tan->callback([&] { run = [&] { return cmd_tannaka(therd, tdiagram, topt); }; });

  Output copt;
  std::string ckind = "all";
  std::size_t cmax = 8;
  CLI::App* corpus = app.add_subcommand("corpus", "write the deterministic test corpus");
  corpus->add_option("--kind", ckind, "group, heap, herd, comodule or all")
      ->check(CLI::IsMember({"group", "heap", "herd", "comodule", "all"}));
  corpus->add_option("--max-size", cmax, "largest group order to include");
  corpus->add_option("--out", copt.out_dir, "output directory")->required();
  corpus->add_flag("--json", copt.json, "print the report as JSON");
  corpus->callback([&] { run = [&] { return cmd_corpus(ckind, cmax, copt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return run();
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
