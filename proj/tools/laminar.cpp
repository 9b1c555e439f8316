#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "laminar/check.hpp"
#include "laminar/constructions.hpp"
#include "laminar/dynamics.hpp"
#include "laminar/error.hpp"
#include "laminar/render.hpp"
#include "laminar/serialize.hpp"

using namespace laminar;
using nlohmann::ordered_json;

namespace {

constexpr int kPass = 0, kCheckFailed = 1, kUsage = 2;

struct Options {
  std::string out;
  std::uint64_t seed = 1;
  int depth = 3;
  std::string format = "json";

  std::string what;
  std::string kind;
  int order = 0;
  std::string set = "rationals";
  std::string shift = "0";
  std::string from, to;

  std::vector<std::string> files;
  std::string suite = "all";
  int radius = 6;

  int size = 800;
  int precision = 9;
  std::string marker = "dot";

  std::string test;
  std::string group = "modular";
  int count = 20;
  std::string map = "diag";
  std::size_t horizon = 1000;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FieldElem parse_shift(const std::string& text) {
  if (text == "sqrt2") return FieldElem::sqrt2();
  if (text == "sqrt3") return FieldElem::sqrt3();
  if (text.find(',') != std::string::npos) return FieldElem::parse(text);
  return FieldElem(parse_rational(text));
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty())
    std::cout << text;
  else
    write_atomic(o.out, text);
}

std::vector<Layer> layers_of(const Document& doc, std::vector<BoundaryPoint>& cusps) {
  if (const auto* lam = std::get_if<LaminationFile>(&doc)) return {{lam->name, lam->chords}};
  const auto& col = std::get<CollectionFile>(doc);
  cusps.insert(cusps.end(), col.cusps.begin(), col.cusps.end());
  std::vector<Layer> out;
  for (const auto& s : col.systems) out.push_back({col.kind + "/" + s.name, s.chords});
  return out;
}

RenderSpec render_spec(const Options& o) {
  RenderSpec spec;
  spec.size = o.size;
  spec.precision = o.precision;
  if (o.marker == "dot")
    spec.cusp_marker = RenderSpec::Marker::Dot;
  else if (o.marker == "cross")
    spec.cusp_marker = RenderSpec::Marker::Cross;
  else
    spec.cusp_marker = RenderSpec::Marker::None;
  return spec;
}

std::string as_output(const Options& o, const Document& doc) {
  if (o.format == "json") return serialize(doc);
  std::vector<BoundaryPoint> cusps;
  const auto layers = layers_of(doc, cusps);
  return render_svg(layers, cusps, render_spec(o));
}

DenseSetSpec dense_set(const Options& o, const FieldElem& s) {
  if (o.set == "rationals")
    return DenseSetSpec::rationals(s).with_seeds({BoundaryPoint::real(s), BoundaryPoint::real(s + FieldElem(1))});
  if (o.set == "angles")
    return DenseSetSpec::angles(s).with_seeds(
        {BoundaryPoint::angle(s), BoundaryPoint::angle(s + FieldElem::rational(1, 2))});
  return DenseSetSpec::signed_exp(s).with_seeds({BoundaryPoint::exp(1, s), BoundaryPoint::exp(1, s + FieldElem(1))});
}

int cmd_build(const Options& o) {
  if (o.depth < 0) throw UsageError("--depth must be non-negative");
  Document doc;
  if (o.what == "farey") {
    doc = make_lamination_file("farey", Chart::ExtReal, o.depth, farey_tessellation(o.depth));
  } else if (o.what == "half_farey") {
    DenseSetSpec spec = dense_set(o, parse_shift(o.shift));
    if (!o.from.empty() || !o.to.empty()) {
      if (o.from.empty() || o.to.empty()) throw UsageError("--from and --to go together");
      spec = spec.with_seeds({BoundaryPoint::decode(o.from), BoundaryPoint::decode(o.to)});
    }
    doc = make_lamination_file("half_farey", spec.chart(), o.depth, half_farey(spec, o.depth));
  } else if (o.what == "square") {
    const FieldElem s = parse_shift(o.shift);
    const FieldElem s1 = s + FieldElem(1);
    const Arc I{BoundaryPoint::exp(-1, s1), BoundaryPoint::exp(-1, s)};
    const Arc J{BoundaryPoint::exp(1, s), BoundaryPoint::exp(1, s1)};
    doc = make_lamination_file("square", Chart::SignedExp, o.depth,
                               square_triangulation(I, J, DenseSetSpec::signed_exp(s), o.depth));
  } else {
    if (o.kind.empty()) throw UsageError("build elementary needs --kind");
    doc = make_collection_file(elementary_col3(parse_elementary_kind(o.kind), o.order), o.depth);
  }
  emit(o, as_output(o, doc));
  return kPass;
}

std::vector<Document> load(const std::vector<std::string>& files) {
  std::vector<Document> docs;
  for (const auto& f : files) docs.push_back(parse_document(read_text(f)));
  return docs;
}

int cmd_check(const Options& o) {
  const auto docs = load(o.files);
  const auto result = run_checks(docs, parse_suite(o.suite), o.radius);
  emit(o, result.to_json());
  for (const auto& c : result.checks)
    if (!c.passed()) std::cerr << "FAIL " << c.name << ": " << c.counterexample.value_or("") << "\n";
  return result.exit_code();
}

int cmd_render(const Options& o) {
  std::vector<Layer> layers;
  std::vector<BoundaryPoint> cusps;
  for (const auto& doc : load(o.files))
    for (auto& l : layers_of(doc, cusps)) layers.push_back(std::move(l));
  emit(o, render_svg(layers, cusps, render_spec(o)));
  return kPass;
}

std::vector<ChartAction> group_generators(const Options& o) {
  if (o.group == "modular") return {MobiusMap(0, -1, 1, 0), MobiusMap::translation(FieldElem(1))};
  return elementary_col3(parse_elementary_kind(o.group), o.order).generators;
}

ordered_json points_json(const std::vector<BoundaryPoint>& pts) {
  ordered_json out = ordered_json::array();
  for (const auto& p : pts) out.push_back(p.encode());
  return out;
}

int cmd_dynamics(const Options& o) {
  ordered_json out;
  out["test"] = o.test;
  bool ok = true;
  if (o.test == "cusps") {
    out["group"] = o.group;
    out["radius"] = o.radius;
    out["cusps"] = points_json(cusp_points(group_generators(o), o.radius));
  } else if (o.test == "lemma") {
    const auto r = fixed_point_lemma_check(group_generators(o), o.radius);
    ok = r.holds();
    out["group"] = o.group;
    out["radius"] = o.radius;
    out["elements"] = r.elements;
    out["hyperbolic"] = r.hyperbolic;
    out["parabolic"] = r.parabolic;
    out["shared"] = r.shared;
  } else if (o.test == "wings") {
    const ChartAction g = MobiusMap::translation(FieldElem(1));
    const auto wings = angel_wings(g, IntervalRef::from_endpoints(BoundaryPoint::real(0), BoundaryPoint::infinity()), o.count);
    const auto lamination = orbit_closure({Chord(BoundaryPoint::real(0), BoundaryPoint::infinity())}, {g}, o.count + 5).chords;
    const auto r = check_angel_wings(wings, BoundaryPoint::infinity(), &lamination);
    ok = r.holds();
    out["count"] = o.count;
    out["nested"] = r.nested;
    out["decomposed"] = r.decomposed;
    out["shrinking"] = r.shrinking;
    out["widths"] = r.widths;
    ordered_json us = ordered_json::array();
    for (const auto& w : wings) us.push_back(w.U.encode());
    out["wings"] = us;
  } else {
    ChartAction g;
    if (o.map == "diag")
      g = MobiusMap(2, 0, 0, FieldElem::rational(1, 2));
    else if (o.map == "rotation")
      g = AngleShift(FieldElem::sqrt2());
    else
      throw UsageError("--map must be diag or rotation");
    SamplerOptions opts;
    opts.horizon = o.horizon;
    const auto seq = power_sequence(g);
    const auto r = triple_escape_sampler(seq, sample_triples(o.seed, 200, opts.k_gap), opts);
    out["map"] = o.map;
    out["seed"] = o.seed;
    out["verdict"] = to_string(r.verdict);
    out["horizon"] = r.horizon;
    out["samples"] = r.samples;
    out["collapsed"] = r.collapsed;
    out["last_return"] = r.last_return;
    out["attracting"] = r.attracting ? ordered_json(*r.attracting) : ordered_json();
    out["repelling"] = r.repelling ? ordered_json(*r.repelling) : ordered_json();
    if (r.witness) {
      ok = replay_witness(seq, *r.witness, opts);
      out["witness"] = {{"triple_index", r.witness->triple_index},
                        {"triple", r.witness->triple},
                        {"returns", r.witness->returns.size()},
                        {"replayed", ok}};
    }
  }
  out["passed"] = ok;
  emit(o, out.dump(2) + "\n");
  return ok ? kPass : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact laminations of the circle: build, check, render, dynamics"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--out", o.out, "Output file (default: standard output)");
  app.add_option("--seed", o.seed, "Seed for sampled inputs");
  app.add_option("--depth", o.depth, "Construction depth")->check(CLI::NonNegativeNumber);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "svg"}));

  auto* build = app.add_subcommand("build", "Build a lamination or an elementary collection");
  build->add_option("what", o.what, "farey | half_farey | square | elementary")
      ->required()
      ->check(CLI::IsMember({"farey", "half_farey", "square", "elementary"}));
  build->add_option("--kind", o.kind, "trivial | finite_cyclic | parabolic | hyperbolic | dihedral");
  build->add_option("--n,--order", o.order, "Order of the finite cyclic group");
  build->add_option("--set", o.set, "Dense set of half_farey")->check(CLI::IsMember({"rationals", "angles", "signed_exp"}));
  build->add_option("--shift", o.shift, "Shift of the dense set: a rational, sqrt2, sqrt3 or a,b,c,d");
  build->add_option("--from", o.from, "First seed point of half_farey (encoded)");
  build->add_option("--to", o.to, "Second seed point of half_farey (encoded)");

  auto* check = app.add_subcommand("check", "Run check suites on lamination or collection files");
  check->add_option("files", o.files, "Input files")->required()->check(CLI::ExistingFile);
  check->add_option("--suite", o.suite, "all | axioms | invariance | transversality | pants_like | coherence");
  check->add_option("--radius", o.radius, "Word radius for the cusp comparison")->check(CLI::NonNegativeNumber);

  auto* render = app.add_subcommand("render", "Render lamination files as an SVG chord diagram");
  render->add_option("files", o.files, "Input files")->required()->check(CLI::ExistingFile);
  render->add_option("--size", o.size, "Canvas size in px")->check(CLI::Range(64, 16384));
  render->add_option("--precision", o.precision, "Digits after the decimal point")->check(CLI::Range(0, 17));
  render->add_option("--marker", o.marker, "Cusp marker")->check(CLI::IsMember({"dot", "cross", "none"}));

  auto* dynamics = app.add_subcommand("dynamics", "Dynamical checks");
  dynamics->add_option("--test", o.test, "cusps | lemma | wings | triples")
      ->required()
      ->check(CLI::IsMember({"cusps", "lemma", "wings", "triples"}));
  dynamics->add_option("--group", o.group, "modular or an elementary kind");
  dynamics->add_option("--n,--order", o.order, "Order of the finite cyclic group");
  dynamics->add_option("--radius", o.radius, "Word radius")->check(CLI::NonNegativeNumber);
  dynamics->add_option("--count", o.count, "Number of angel wings")->check(CLI::PositiveNumber);
  dynamics->add_option("--map", o.map, "diag | rotation");
  dynamics->add_option("--horizon", o.horizon, "Sampler horizon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*build) return cmd_build(o);
    if (*check) return cmd_check(o);
    if (*render) return cmd_render(o);
    return cmd_dynamics(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kUsage;
}
