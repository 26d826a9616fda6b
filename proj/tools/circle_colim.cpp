// circle-colim: command-line front end.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>

#include "circle_colim/affine_weights.hpp"
#include "circle_colim/cocycles.hpp"
#include "circle_colim/colimit_words.hpp"
#include "circle_colim/diffeo.hpp"
#include "circle_colim/errors.hpp"
#include "circle_colim/fixtures.hpp"
#include "circle_colim/io.hpp"
#include "circle_colim/loops.hpp"
#include "circle_colim/selftest.hpp"

namespace fs = std::filesystem;
using namespace circle_colim;
using io::json;

namespace {

struct Options {
  std::string input, cover, out, method, group = "su2", kind, f, g, word, elements, mode, emit, derivation;
  double tol = 0.0;
  std::size_t grid = 0, pieces = 0;
  std::uint64_t seed = 7;
  int level = 1, criterion = 0;
  bool list = false, rank2 = false;
};

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

std::string number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string complex_text(const Complex& z) {
  if (z.imag() == 0.0) return number(z.real() == 0.0 ? 0.0 : z.real());
  return "[" + number(z.real()) + ", " + number(z.imag()) + "]";
}

json support_json(const std::optional<Interval>& arc, bool whole) {
  if (whole) return "whole circle";
  return arc ? io::to_json(*arc) : json(nullptr);
}

int factor_loop(const Options& o) {
  const Loop gamma = io::loop_from_json(io::read_json(o.input));
  const double tol = o.tol > 0 ? o.tol : 1e-10;
  std::vector<Loop> factors;
  json report;
  if (o.method.empty() || o.method == "partition") {
    const Cover cover = io::cover_from_json(io::read_json(o.cover));
    factors = factor_over_cover(gamma, cover);
    report["supports"] = json::array();
    bool contained = true;
    for (std::size_t j = 0; j < factors.size(); ++j) {
      const auto cert = support(factors[j], 1e-12);
      contained = contained && cert.within(cover.at(j), gamma.step());
      report["supports"].push_back(support_json(cert.interval, cert.whole_circle));
    }
    report["supports_contained"] = contained;
    if (!contained) throw ContractViolation("a factor's support leaves its cover interval");
  } else if (o.method == "small") {
    if (o.pieces == 0) throw PreconditionError("--method small needs --pieces");
    factors = factor_small(gamma, o.pieces);
  } else {
    throw PreconditionError("unknown --method '" + o.method + "' (expected partition or small)");
  }
  const double err = sup_distance(product(factors), gamma);
  report["factors"] = factors.size();
  report["reconstruction_error"] = err;
  if (!o.out.empty())
    for (std::size_t j = 0; j < factors.size(); ++j) io::write_json(fs::path(o.out) / ("factor_" + std::to_string(j + 1) + ".json"), io::to_json(factors[j]));
  print(report);
  if (!(err <= tol)) throw ContractViolation("reconstruction error " + number(err) + " exceeds --tol " + number(tol));
  return 0;
}

int factor_diffeo(const Options& o) {
  const CircleDiffeo phi = io::diffeo_from_json(io::read_json(o.input));
  const Cover cover = io::cover_from_json(io::read_json(o.cover));
  const double tol = o.tol > 0 ? o.tol : 1e-8;
  const auto factors = factor_over_cover(phi, cover);
  json report;
  report["factors"] = factors.size();
  report["supports"] = json::array();
  report["displacements"] = json::array();
  bool contained = true;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const auto cert = support(factors[j], 1e-12);
    contained = contained && cert.within(cover.at(j), phi.step());
    report["supports"].push_back(support_json(cert.interval, cert.whole_circle));
    report["displacements"].push_back(displacement(factors[j]));
  }
  const double err = sup_distance(compose_all(factors), phi);
  report["reconstruction_error"] = err;
  report["supports_contained"] = contained;
  if (!o.out.empty())
    for (std::size_t j = 0; j < factors.size(); ++j) io::write_json(fs::path(o.out) / ("factor_" + std::to_string(j + 1) + ".json"), io::to_json(factors[j]));
  print(report);
  if (!contained) throw ContractViolation("a factor's support leaves its cover interval");
  if (!(err <= tol)) throw ContractViolation("reconstruction error " + number(err) + " exceeds --tol " + number(tol));
  return 0;
}

int cocycle(const Options& o) {
  const std::string method = o.method.empty() ? "modes" : o.method;
  const json fj = io::read_json(o.f), gj = io::read_json(o.g);
  if (o.kind == "virasoro") {
    if (method == "exact") {
      std::cout << virasoro_cocycle_modes(io::field_from_json_exact(fj), io::field_from_json_exact(gj)).str() << '\n';
      return 0;
    }
    const auto f = io::field_from_json(fj), g = io::field_from_json(gj);
    if (method == "modes") {
      std::cout << complex_text(virasoro_cocycle_modes(f, g)) << '\n';
    } else if (method == "quadrature") {
      std::cout << complex_text(virasoro_cocycle_quadrature(f, g, o.grid)) << '\n';
    } else {
      throw PreconditionError("unknown --method '" + method + "' (expected modes, quadrature or exact)");
    }
    return 0;
  }
  if (o.kind == "affine") {
    const auto f = io::lie_modes_from_json(fj), g = io::lie_modes_from_json(gj);
    if (!(f.group == g.group)) throw PreconditionError("--f and --g are in different groups");
    if (method == "modes") {
      std::cout << complex_text(affine_cocycle_modes(f, g)) << '\n';
    } else if (method == "quadrature") {
      const std::size_t n = o.grid > 0 ? o.grid : 4 * static_cast<std::size_t>(std::max(f.max_mode(), g.max_mode())) + 8;
      std::cout << complex_text(affine_cocycle_quadrature(f.sample(n), g.sample(n))) << '\n';
    } else {
      throw PreconditionError("unknown --method '" + method + "' (expected modes or quadrature)");
    }
    return 0;
  }
  throw PreconditionError("unknown --kind '" + o.kind + "' (expected virasoro or affine)");
}

int weights(const Options& o) {
  if (o.level < 0) throw PreconditionError("--level must be >= 0");
  const DynkinDiagram diagram = parse_lie_type(o.group);
  const RootSystem roots(diagram);
  const auto ws = enumerate_level_k_highest_weights(roots, o.level);
  if (o.list) {
    std::cout << json(ws).dump() << '\n';
  } else if (o.rank2) {
    const auto report = rank2_subdiagram_check(affine_diagram(diagram.name[0], static_cast<int>(roots.rank())));
    json pairs = json::array();
    for (const auto& p : report.pairs) pairs.push_back({{"nodes", {p.i, p.j}}, {"type", p.type}, {"finite", p.finite}});
    print({{"diagram", diagram.name + "~"}, {"pass", report.pass}, {"pairs", pairs}});
  } else {
    print({{"group", diagram.name}, {"level", o.level}, {"count", ws.size()}, {"paraboloid_constant",
                                                                                o.level > 0 ? paraboloid_constant(roots, o.level).str() : "undefined"}});
  }
  return 0;
}

int rewrite(const Options& o) {
  const fs::path store_dir = o.elements;
  Presentation p = io::load_presentation(store_dir);
  if (!o.mode.empty() && o.mode != p.store().mode())
    throw PreconditionError("--mode " + o.mode + " does not match the store's mode " + p.store().mode());
  const Word w = io::word_from_json(io::read_json(o.word));
  const Derivation d = reduce_relation(p, w);
  const fs::path emit = o.emit.empty() ? fs::path("derivation.json") : fs::path(o.emit);
  const fs::path out_store = o.out.empty() ? fs::path(emit.string() + ".store") : fs::path(o.out);
  io::save_presentation(out_store, p);
  json dj = io::to_json(d);
  dj["elements"] = fs::relative(fs::absolute(out_store), fs::absolute(emit).parent_path()).string();
  io::write_json(emit, dj);
  print({{"complete", d.complete}, {"steps", d.steps.size()}, {"diagnostic", d.diagnostic}, {"derivation", emit.string()}});
  if (!d.complete) throw ContractViolation("reduction blocked: " + d.diagnostic);
  return 0;
}

int verify(const Options& o) {
  const fs::path path = o.derivation;
  const json dj = io::read_json(path);
  fs::path store_dir = o.elements;
  if (store_dir.empty()) {
    if (!dj.contains("elements")) throw PreconditionError("derivation names no element store; pass --elements");
    store_dir = fs::absolute(path).parent_path() / dj.at("elements").get<std::string>();
  }
  const Presentation p = io::load_presentation(store_dir);
  const Derivation d = io::derivation_from_json(dj);
  const VerifyReport r = verify_derivation(p, d);
  json report{{"valid", r.valid}, {"reaches_empty", r.reaches_empty}, {"max_drift", r.max_drift}, {"message", r.message}};
  if (r.failed_step) report["failed_step"] = *r.failed_step;
  print(report);
  if (!r.valid) throw ContractViolation("derivation rejected: " + r.message);
  return 0;
}

int selftest(const Options& o) {
  SelftestOptions options;
  options.seed = o.seed;
  options.progress = [](const CriterionResult& r) {
    std::cerr << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << "): " << r.detail << '\n';
  };
  std::vector<CriterionResult> results;
  if (o.criterion > 0)
    results.push_back(run_criterion(o.criterion, options));
  else
    results = run_acceptance(options);
  const json report = to_json(results, o.seed);
  if (!o.out.empty()) io::write_json(o.out, report);
  print(report);
  return report.at("pass").get<bool>() ? 0 : 2;
}

// Writes sample inputs for the other subcommands.
int example(const Options& o) {
  std::mt19937_64 rng(o.seed);
  if (o.out.empty()) throw PreconditionError("example needs --out");
  const std::size_t n = o.grid > 0 ? o.grid : 1024;
  if (o.kind == "cover") {
    io::write_json(o.out, io::to_json(uniform_cover(5, 0.1)));
  } else if (o.kind == "diffeo") {
    io::write_json(o.out, io::to_json(fixtures::random_diffeo(n, o.tol > 0 ? o.tol : 0.05, rng)));
  } else if (o.kind == "loop") {
    io::write_json(o.out, io::to_json(fixtures::random_chart_loop(parse_group(o.group), n, o.tol > 0 ? o.tol : 2.0, rng)));
  } else if (o.kind == "relation") {
    const Cover cover = uniform_cover(5, 0.1);
    const bool diffeo = o.mode == "diffeo";
    std::shared_ptr<ElementStore> store;
    if (diffeo)
      store = std::make_shared<DiffeoStore>(o.grid > 0 ? o.grid : 4096);
    else
      store = std::make_shared<LoopStore>(parse_group(o.group), o.grid > 0 ? o.grid : 256);
    Presentation p(store, cover);
    Word w;
    if (diffeo) {
      const std::size_t m = store->grid_size();
      w = fixtures::diffeo_relation(p, fixtures::random_diffeo(m, 0.03, rng), fixtures::random_diffeo(m, 0.03, rng), rng);
    } else {
      const GroupDescriptor group = parse_group(o.group);
      const std::size_t m = store->grid_size();
      Loop a = fixtures::random_chart_loop(group, m, 1.2, rng), b = fixtures::random_chart_loop(group, m, 1.2, rng);
      while (!in_chart(multiply(a, b))) b = fixtures::random_chart_loop(group, m, 1.2, rng);
      w = fixtures::loop_relation(p, a, b, rng);
    }
    io::save_presentation(fs::path(o.out) / "store", p);
    io::write_json(fs::path(o.out) / "word.json", io::to_json(w));
  } else {
    throw PreconditionError("unknown --kind '" + o.kind + "' (expected cover, diffeo, loop or relation)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colimit presentations of loop groups and circle diffeomorphism groups"};
  app.require_subcommand(1);
  Options o;

  auto* fl = app.add_subcommand("factor-loop", "Factor a loop over a cover (or into small pieces)");
  fl->add_option("--input", o.input, "Loop JSON")->required();
  fl->add_option("--cover", o.cover, "Cover JSON");
  fl->add_option("--tol", o.tol, "Reconstruction tolerance (default 1e-10)");
  fl->add_option("--method", o.method, "partition (default) or small");
  fl->add_option("--pieces", o.pieces, "Number of factors for --method small");
  fl->add_option("--out", o.out, "Directory for the factors");

  auto* fd = app.add_subcommand("factor-diffeo", "Factor a circle diffeomorphism over a cover");
  fd->add_option("--input", o.input, "Diffeomorphism JSON")->required();
  fd->add_option("--cover", o.cover, "Cover JSON")->required();
  fd->add_option("--tol", o.tol, "Reconstruction tolerance (default 1e-8)");
  fd->add_option("--out", o.out, "Directory for the factors");

  auto* cc = app.add_subcommand("cocycle", "Evaluate the Virasoro or affine cocycle");
  cc->add_option("--kind", o.kind, "virasoro or affine")->required();
  cc->add_option("--f", o.f, "First field JSON")->required();
  cc->add_option("--g", o.g, "Second field JSON")->required();
  cc->add_option("--method", o.method, "modes (default), quadrature or exact");
  cc->add_option("--grid", o.grid, "Quadrature points");

  auto* wt = app.add_subcommand("weights", "Level-k highest weights");
  wt->add_option("--group", o.group, "Lie type, e.g. su3, B2, g2")->required();
  wt->add_option("--level", o.level, "Level k");
  wt->add_flag("--list", o.list, "Print the weights as JSON arrays");
  wt->add_flag("--rank2", o.rank2, "Classify the rank-2 subdiagrams of the affine diagram");

  auto* rw = app.add_subcommand("rewrite", "Reduce an identity word to the empty word");
  rw->add_option("--word", o.word, "Word JSON")->required();
  rw->add_option("--elements", o.elements, "Element store directory")->required();
  rw->add_option("--mode", o.mode, "loop or diffeo");
  rw->add_option("--emit", o.emit, "Derivation JSON to write");
  rw->add_option("--out", o.out, "Directory for the extended store (default <emit>.store)");

  auto* vf = app.add_subcommand("verify", "Replay and validate a derivation");
  vf->add_option("--derivation", o.derivation, "Derivation JSON")->required();
  vf->add_option("--elements", o.elements, "Element store directory (default: the one named in the derivation)");

  auto* st = app.add_subcommand("selftest", "Run the acceptance suite");
  st->add_option("--seed", o.seed, "Seed");
  st->add_option("--criterion", o.criterion, "Run only this criterion (1..11)");
  st->add_option("--out", o.out, "Report JSON path");

  auto* ex = app.add_subcommand("example", "Write sample inputs");
  ex->add_option("--kind", o.kind, "cover, diffeo, loop or relation")->required();
  ex->add_option("--out", o.out, "Output file (directory for relation)");
  ex->add_option("--seed", o.seed, "Seed");
  ex->add_option("--grid", o.grid, "Grid size");
  ex->add_option("--group", o.group, "Group for loops");
  ex->add_option("--mode", o.mode, "loop or diffeo (relation)");
  ex->add_option("--tol", o.tol, "Displacement (diffeo) or chart radius (loop)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    if (*fl) return factor_loop(o);
    if (*fd) return factor_diffeo(o);
    if (*cc) return cocycle(o);
    if (*wt) return weights(o);
    if (*rw) return rewrite(o);
    if (*vf) return verify(o);
    if (*st) return selftest(o);
    if (*ex) return example(o);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
