#include "laminar/check.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include <json.hpp>

#include "laminar/dynamics.hpp"
#include "laminar/error.hpp"

namespace laminar {

namespace {

struct Subject {
  std::string label;
  const LaminationFile* file;
};

std::string join(const std::vector<BoundaryPoint>& pts) {
  std::string out;
  for (const auto& p : pts) out += (out.empty() ? "" : ", ") + p.encode();
  return out;
}

class Runner {
 public:
  explicit Runner(Suite suite) : suite_(suite) {}

  bool wants(Suite s) const { return suite_ == Suite::All || suite_ == s; }

  // Registers the check and runs `body`, which reports through fail().
  void run(Suite s, const std::string& name, const std::function<void(CheckStatus&)>& body) {
    if (!wants(s)) return;
    CheckStatus& st = status(s, name);
    const auto t0 = std::chrono::steady_clock::now();
    body(st);
    st.millis += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }

  void declare(Suite s, const std::string& name) {
    if (wants(s)) status(s, name);
  }

  static void fail(CheckStatus& st, const std::string& what) {
    ++st.failures;
    if (!st.counterexample) st.counterexample = what;
  }

  CheckSuiteResult result() const { return {order_}; }

 private:
  CheckStatus& status(Suite s, const std::string& name) {
    for (auto& st : order_)
      if (st.name == name) return st;
    CheckStatus st;
    st.name = name;
    st.suite = to_string(s);
    order_.push_back(std::move(st));
    return order_.back();
  }

  Suite suite_;
  std::vector<CheckStatus> order_;
};

void check_lamination(Runner& r, const Subject& s) {
  const auto& chords = s.file->chords;
  const bool nonempty = !chords.empty();
  const bool one_chart =
      std::all_of(chords.begin(), chords.end(), [&](const Chord& c) { return c.chart() == chords.front().chart(); });

  r.run(Suite::Axioms, "nonempty", [&](CheckStatus& st) {
    ++st.checked;
    if (!nonempty) Runner::fail(st, s.label + ": empty lamination");
  });
  r.run(Suite::Axioms, "single_chart", [&](CheckStatus& st) {
    if (!nonempty) return;
    ++st.checked;
    if (!one_chart) Runner::fail(st, s.label + ": chords in more than one chart");
  });
  r.run(Suite::Axioms, "unlinkedness", [&](CheckStatus& st) {
    if (!nonempty || !one_chart) return;
    ++st.checked;
    for (const auto& v : validate_truncation(chords).violations)
      if (v.kind == Violation::Kind::LinkedPair) Runner::fail(st, s.label + ": " + v.describe());
  });
  r.run(Suite::Coherence, "declared_chart", [&](CheckStatus& st) {
    ++st.checked;
    for (const auto& c : chords)
      if (c.chart() != s.file->chart) {
        Runner::fail(st, s.label + ": chord " + c.encode() + " is not in chart " + chart_name(s.file->chart));
        break;
      }
  });
  r.run(Suite::Coherence, "interval_round_trip", [&](CheckStatus& st) {
    if (!nonempty || !one_chart) return;
    ++st.checked;
    std::vector<Chord> canonical = chords;
    canonicalize(canonical);
    if (to_chords(to_intervals(chords)) != canonical)
      Runner::fail(st, s.label + ": chord set does not survive the interval-family round trip");
  });
}

// First chord of `a` missing from `b`, if any.
std::optional<Chord> first_missing(const std::vector<Chord>& a, const ChordSet& b) {
  for (const auto& c : a)
    if (!b.count(c)) return c;
  return std::nullopt;
}

void check_transverse(Runner& r, const Subject& a, const Subject& b) {
  r.run(Suite::Transversality, "transversality", [&](CheckStatus& st) {
    ++st.checked;
    const ChordSet other(b.file->chords.begin(), b.file->chords.end());
    for (const auto& x : a.file->chords)
      if (other.count(x)) {
        Runner::fail(st, a.label + " and " + b.label + " share the chord " + x.encode());
        break;
      }
  });
}

void check_collection(Runner& r, const CollectionFile& f, const std::array<Subject, 3>& subjects, int cusp_radius) {
  std::optional<Col3Collection> fresh;
  std::string rebuild_error;
  try {
    fresh = elementary_col3(parse_elementary_kind(f.kind), f.order);
  } catch (const Error& e) {
    rebuild_error = e.what();
  }

  r.run(Suite::Invariance, "invariance", [&](CheckStatus& st) {
    if (!fresh) {
      ++st.checked;
      Runner::fail(st, f.kind + ": cannot rebuild the construction: " + rebuild_error);
      return;
    }
    std::vector<ChartAction> actions;
    for (const auto& g : f.generators) {
      actions.push_back(g);
      actions.push_back(inverse(g));
    }
    for (std::size_t i = 0; i < 3; ++i) {
      const auto next = fresh->systems[i].truncation(f.depth + 1);
      const ChordSet have(next.begin(), next.end());
      for (const auto& c : subjects[i].file->chords)
        for (const auto& g : actions) {
          ++st.checked;
          try {
            const Chord img = image(g, c);
            if (!have.count(img))
              Runner::fail(st, subjects[i].label + ": " + action_key(g) + " maps " + c.encode() + " to " + img.encode() +
                                   ", absent at depth " + std::to_string(f.depth + 1));
          } catch (const Error& e) {
            Runner::fail(st, subjects[i].label + ": " + action_key(g) + " on " + c.encode() + ": " + e.what());
          }
        }
    }
  });

  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b) check_transverse(r, subjects[a], subjects[b]);

  r.run(Suite::PantsLike, "pants_like", [&](CheckStatus& st) {
    const auto report = pants_like_check({subjects[0].file->chords, subjects[1].file->chords, subjects[2].file->chords},
                                         f.cusps);
    for (const auto& p : report.pairs) {
      ++st.checked;
      const std::string pair = subjects[p.a].label + " and " + subjects[p.b].label;
      if (!p.transverse) Runner::fail(st, pair + " share a chord");
      if (!p.undeclared.empty()) Runner::fail(st, pair + ": undeclared common endpoints " + join(p.undeclared));
    }
  });

  r.run(Suite::Coherence, "construction_match", [&](CheckStatus& st) {
    ++st.checked;
    if (!fresh) {
      Runner::fail(st, f.kind + ": cannot rebuild the construction: " + rebuild_error);
      return;
    }
    if (f.generators != fresh->generators) Runner::fail(st, f.kind + ": generators differ from the construction");
    for (std::size_t i = 0; i < 3; ++i) {
      const auto expected = fresh->systems[i].truncation(f.depth);
      const ChordSet want(expected.begin(), expected.end());
      const ChordSet have(subjects[i].file->chords.begin(), subjects[i].file->chords.end());
      if (auto c = first_missing(subjects[i].file->chords, want))
        Runner::fail(st, subjects[i].label + ": unexpected chord " + c->encode());
      else if (auto m = first_missing(expected, have))
        Runner::fail(st, subjects[i].label + ": missing chord " + m->encode());
    }
  });

  r.run(Suite::Coherence, "cusps", [&](CheckStatus& st) {
    ++st.checked;
    std::vector<BoundaryPoint> declared = f.cusps;
    std::sort(declared.begin(), declared.end(), LinearLess{});
    try {
      const auto found = cusp_points(f.generators, cusp_radius);
      if (found != declared)
        Runner::fail(st, f.kind + ": declared cusps [" + join(declared) + "] but the ball of radius " +
                             std::to_string(cusp_radius) + " has [" + join(found) + "]");
    } catch (const Error& e) {
      Runner::fail(st, f.kind + ": " + e.what());
    }
  });
}

}  // namespace

Suite parse_suite(std::string_view name) {
  if (name == "all") return Suite::All;
  if (name == "axioms") return Suite::Axioms;
  if (name == "invariance") return Suite::Invariance;
  if (name == "transversality") return Suite::Transversality;
  if (name == "pants_like") return Suite::PantsLike;
  if (name == "coherence") return Suite::Coherence;
  throw Error(ErrorCode::ParseError, "unknown suite '" + std::string(name) + "'");
}

const char* to_string(Suite s) noexcept {
  switch (s) {
    case Suite::All: return "all";
    case Suite::Axioms: return "axioms";
    case Suite::Invariance: return "invariance";
    case Suite::Transversality: return "transversality";
    case Suite::PantsLike: return "pants_like";
    case Suite::Coherence: return "coherence";
  }
  return "unknown";
}

bool CheckSuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckStatus& c) { return c.passed(); });
}

std::string CheckSuiteResult::to_json() const {
  nlohmann::ordered_json out;
  out["passed"] = passed();
  out["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["suite"] = c.suite;
    j["status"] = c.skipped() ? "skip" : (c.passed() ? "pass" : "fail");
    j["checked"] = c.checked;
    j["failures"] = c.failures;
    j["counterexample"] = c.counterexample ? nlohmann::ordered_json(*c.counterexample) : nlohmann::ordered_json();
    j["millis"] = std::round(c.millis * 1000) / 1000;
    out["checks"].push_back(j);
  }
  return out.dump(2) + "\n";
}

CheckSuiteResult run_checks(const std::vector<Document>& docs, Suite suite, int cusp_radius) {
  Runner r(suite);
  for (const char* name : {"nonempty", "single_chart", "unlinkedness"}) r.declare(Suite::Axioms, name);
  r.declare(Suite::Invariance, "invariance");
  r.declare(Suite::Transversality, "transversality");
  r.declare(Suite::PantsLike, "pants_like");
  for (const char* name : {"declared_chart", "interval_round_trip", "construction_match", "cusps"})
    r.declare(Suite::Coherence, name);

  std::vector<Subject> loose;
  for (const auto& doc : docs) {
    if (const auto* lam = std::get_if<LaminationFile>(&doc)) {
      Subject s{lam->name, lam};
      check_lamination(r, s);
      loose.push_back(s);
      continue;
    }
    const auto& col = std::get<CollectionFile>(doc);
    std::array<Subject, 3> subjects;
    for (std::size_t i = 0; i < 3; ++i) {
      subjects[i] = {col.kind + "/" + col.systems[i].name, &col.systems[i]};
      check_lamination(r, subjects[i]);
    }
    check_collection(r, col, subjects, cusp_radius);
  }
  for (std::size_t a = 0; a < loose.size(); ++a)
    for (std::size_t b = a + 1; b < loose.size(); ++b) check_transverse(r, loose[a], loose[b]);
  return r.result();
}

}  // namespace laminar
