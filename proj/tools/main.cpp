/*
 * Command line driver. Problem files come in as JSON, reports leave as a
 * single JSON document on stdout with a one-line summary on stderr.
 *
 * Exit codes: 0 success, 1 input rejected, 2 numerical breakdown, 3 usage.
 */

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpencil/chardet.hpp"
#include "qpencil/core.hpp"
#include "qpencil/harness.hpp"
#include "qpencil/inverse.hpp"
#include "qpencil/pluecker.hpp"
#include "qpencil/roots.hpp"

namespace {

using namespace qpencil;
using nlohmann::json;

// ---------------------------------------------------------------------------
// deterministic JSON emission: keys sorted (std::map), numbers %.17g,
// no locale involvement anywhere
// ---------------------------------------------------------------------------

struct JV {
  enum class K { Bool, Int, Num, Str, Arr, Obj };
  K k = K::Obj;
  bool b = false;
  long long i = 0;
  double d = 0.0;
  std::string s;
  std::vector<JV> arr;
  std::map<std::string, JV> obj;

  static JV B(bool v) { JV j; j.k = K::Bool; j.b = v; return j; }
  static JV I(long long v) { JV j; j.k = K::Int; j.i = v; return j; }
  static JV N(double v) { JV j; j.k = K::Num; j.d = v; return j; }
  static JV S(std::string v) { JV j; j.k = K::Str; j.s = std::move(v); return j; }
  static JV A() { JV j; j.k = K::Arr; return j; }
  static JV O() { JV j; j.k = K::Obj; return j; }
};

void emit_string(const std::string& s, std::string& out) {
  out += '"';
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void emit(const JV& v, std::string& out) {
  switch (v.k) {
    case JV::K::Bool:
      out += v.b ? "true" : "false";
      break;
    case JV::K::Int: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%lld", v.i);
      out += buf;
      break;
    }
    case JV::K::Num: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", v.d);
      out += buf;
      break;
    }
    case JV::K::Str:
      emit_string(v.s, out);
      break;
    case JV::K::Arr: {
      out += '[';
      bool first = true;
      for (const JV& e : v.arr) {
        if (!first) out += ',';
        first = false;
        emit(e, out);
      }
      out += ']';
      break;
    }
    case JV::K::Obj: {
      out += '{';
      bool first = true;
      for (const auto& [key, val] : v.obj) {
        if (!first) out += ',';
        first = false;
        emit_string(key, out);
        out += ':';
        emit(val, out);
      }
      out += '}';
      break;
    }
  }
}

JV jcx(Cx z) {
  JV a = JV::A();
  a.arr = {JV::N(z.real()), JV::N(z.imag())};
  return a;
}

JV jregion(const SearchRegion& r) {
  JV o = JV::O();
  JV re = JV::A();
  re.arr = {JV::N(r.re_min), JV::N(r.re_max)};
  JV im = JV::A();
  im.arr = {JV::N(r.im_min), JV::N(r.im_max)};
  o.obj["re"] = re;
  o.obj["im"] = im;
  return o;
}

JV jentry(const EigenvalueEntry& e) {
  JV o = JV::O();
  o.obj["re"] = JV::N(e.lambda.real());
  o.obj["im"] = JV::N(e.lambda.imag());
  o.obj["multiplicity"] = JV::I(e.multiplicity);
  o.obj["residual"] = JV::N(e.residual);
  return o;
}

JV jspectrum(const Spectrum& s) {
  JV o = JV::O();
  JV ev = JV::A();
  for (const EigenvalueEntry& e : s.eigenvalues) ev.arr.push_back(jentry(e));
  o.obj["eigenvalues"] = ev;
  o.obj["region"] = jregion(s.region);
  o.obj["zero_order"] = JV::I(s.zero_order);
  return o;
}

JV jpluecker(const PlueckerVector& p) {
  JV a = JV::A();
  for (const Cx v : p.flat()) a.arr.push_back(jcx(v));
  return a;
}

JV jbc(const BoundaryMatrix& bc) {
  JV rows = JV::A();
  for (int i = 0; i < 2; ++i) {
    JV row = JV::A();
    for (int j = 0; j < 4; ++j) row.arr.push_back(jcx(bc(i, j)));
    rows.arr.push_back(row);
  }
  return rows;
}

void print_document(const JV& v) {
  std::string out;
  emit(v, out);
  out += '\n';
  std::fputs(out.c_str(), stdout);
}

// ---------------------------------------------------------------------------
// input files
// ---------------------------------------------------------------------------

// input rejections that have no core error code
struct CliError {
  int exit_code;
  std::string code;
  std::string message;
};

[[noreturn]] void reject(std::string code, std::string message) {
  throw CliError{1, std::move(code), std::move(message)};
}

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) known = true;
    if (!known) reject("SchemaError", std::string("unknown key \"") + key +
                                          "\" in " + where);
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) reject("FileError", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    reject("ParseError", path + ": " + e.what());
  }
  if (!j.is_object()) reject("SchemaError", path + ": top level must be an object");
  return j;
}

double as_real(const json& j, const char* where) {
  if (!j.is_number())
    reject("SchemaError", std::string(where) + " must be a number");
  return j.get<double>();
}

Cx as_complex(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2)
    reject("SchemaError", std::string(where) + " must be a [re, im] pair");
  return {as_real(j[0], where), as_real(j[1], where)};
}

Pencil parse_pencil(const json& j) {
  if (!j.is_object()) reject("SchemaError", "pencil must be an object");
  require_keys(j, "pencil", {"b", "c", "L"});
  if (!j.contains("b") || !j.contains("c"))
    reject("SchemaError", "pencil requires b and c");
  const double L = j.contains("L") ? as_real(j["L"], "pencil.L") : 1.0;
  return make_pencil(as_complex(j["b"], "pencil.b"),
                     as_complex(j["c"], "pencil.c"), L);
}

std::array<std::array<Cx, 4>, 2> parse_bc_rows(const json& j) {
  if (!j.is_array() || j.size() != 2)
    reject("SchemaError", "bc must be an array of 2 rows");
  std::array<std::array<Cx, 4>, 2> rows;
  for (int i = 0; i < 2; ++i) {
    if (!j[i].is_array() || j[i].size() != 4)
      reject("SchemaError", "each bc row must have 4 [re, im] entries");
    for (int k = 0; k < 4; ++k) rows[i][k] = as_complex(j[i][k], "bc entry");
  }
  return rows;
}

SearchRegion parse_region(const json& j) {
  if (!j.is_object()) reject("SchemaError", "region must be an object");
  require_keys(j, "region", {"re", "im"});
  if (!j.contains("re") || !j.contains("im"))
    reject("SchemaError", "region requires re and im ranges");
  const auto range = [](const json& r, const char* where) {
    if (!r.is_array() || r.size() != 2)
      reject("SchemaError", std::string(where) + " must be [min, max]");
    return std::pair{as_real(r[0], where), as_real(r[1], where)};
  };
  const auto [re_min, re_max] = range(j["re"], "region.re");
  const auto [im_min, im_max] = range(j["im"], "region.im");
  return make_region(re_min, re_max, im_min, im_max);
}

struct Options {
  RootFinderConfig root;
  RecoveryConfig recovery;
};

Options parse_options(const json& j) {
  Options o;
  if (j.is_null()) return o;
  if (!j.is_object()) reject("SchemaError", "options must be an object");
  require_keys(j, "options",
               {"zero_exclusion_radius", "dedup_radius", "residual_tol",
                "max_multiplicity", "max_depth", "min_box_diameter",
                "edge_jitter", "nullspace_rel_tol", "inconsistency_rel_tol",
                "decomposability_tol"});
  const auto num = [&](const char* key, double& slot) {
    if (j.contains(key)) slot = as_real(j[key], key);
  };
  const auto integer = [&](const char* key, int& slot) {
    if (j.contains(key)) {
      if (!j[key].is_number_integer())
        reject("SchemaError", std::string(key) + " must be an integer");
      slot = j[key].get<int>();
    }
  };
  num("zero_exclusion_radius", o.root.zero_exclusion_radius);
  num("zero_exclusion_radius", o.recovery.zero_exclusion_radius);
  num("dedup_radius", o.root.dedup_radius);
  num("residual_tol", o.root.residual_tol);
  integer("max_multiplicity", o.root.max_multiplicity);
  integer("max_depth", o.root.max_depth);
  num("min_box_diameter", o.root.min_box_diameter);
  num("edge_jitter", o.root.edge_jitter);
  num("nullspace_rel_tol", o.recovery.nullspace_rel_tol);
  num("inconsistency_rel_tol", o.recovery.inconsistency_rel_tol);
  num("decomposability_tol", o.recovery.decomposability_tol);
  return o;
}

struct LoadedProblem {
  Problem problem;
  std::optional<SearchRegion> region;
  Options options;
};

LoadedProblem load_problem(const std::string& path) {
  const json j = load_json(path);
  require_keys(j, path, {"pencil", "bc", "region", "options"});
  if (!j.contains("pencil") || !j.contains("bc"))
    reject("SchemaError", path + " requires pencil and bc");
  LoadedProblem lp{
      make_problem(parse_pencil(j["pencil"]), parse_bc_rows(j["bc"])),
      std::nullopt,
      parse_options(j.contains("options") ? j["options"] : json{})};
  if (j.contains("region")) lp.region = parse_region(j["region"]);
  return lp;
}

struct LoadedSpectrumFile {
  Pencil pencil;
  std::vector<EigenvalueEntry> eigenvalues;
  Options options;
};

LoadedSpectrumFile load_spectrum_file(const std::string& path) {
  const json j = load_json(path);
  require_keys(j, path, {"pencil", "eigenvalues", "options"});
  if (!j.contains("pencil") || !j.contains("eigenvalues"))
    reject("SchemaError", path + " requires pencil and eigenvalues");
  LoadedSpectrumFile out{
      parse_pencil(j["pencil"]),
      {},
      parse_options(j.contains("options") ? j["options"] : json{})};
  if (!j["eigenvalues"].is_array())
    reject("SchemaError", "eigenvalues must be an array");
  for (const json& e : j["eigenvalues"]) {
    if (!e.is_object())
      reject("SchemaError", "each eigenvalue must be an object");
    require_keys(e, "eigenvalue entry", {"re", "im", "multiplicity", "residual"});
    if (!e.contains("re") || !e.contains("im"))
      reject("SchemaError", "eigenvalue entry requires re and im");
    EigenvalueEntry entry;
    entry.lambda = {as_real(e["re"], "re"), as_real(e["im"], "im")};
    if (e.contains("multiplicity")) {
      if (!e["multiplicity"].is_number_integer())
        reject("SchemaError", "multiplicity must be an integer");
      entry.multiplicity = e["multiplicity"].get<int>();
      if (entry.multiplicity < 1)
        reject("SchemaError", "multiplicity must be positive");
    }
    if (e.contains("residual")) entry.residual = as_real(e["residual"], "residual");
    out.eigenvalues.push_back(entry);
  }
  return out;
}

// ---------------------------------------------------------------------------
// argument parsing helpers
// ---------------------------------------------------------------------------

std::vector<double> split_reals(const std::string& text, std::size_t want,
                                const char* what) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw CliError{3, "Usage", std::string(what) + ": \"" + piece +
                             "\" is not a number"};
    }
  }
  if (vals.size() != want)
    throw CliError{3, "Usage", std::string(what) + " needs " +
                           std::to_string(want) + " comma-separated numbers"};
  return vals;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

void write_csv(const std::string& path, const Spectrum& s) {
  std::ofstream out(path);
  if (!out) reject("FileError", "cannot write " + path);
  out << "re,im,multiplicity,residual\n";
  char buf[256];
  for (const EigenvalueEntry& e : s.eigenvalues) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g\n", e.lambda.real(),
                  e.lambda.imag(), e.multiplicity, e.residual);
    out << buf;
  }
  if (!out) reject("FileError", "short write to " + path);
}

int cmd_spectrum(const std::string& path, const std::string& region_arg,
                 const std::string& csv_path) {
  const LoadedProblem lp = load_problem(path);
  SearchRegion region = lp.region.value_or(default_search_region());
  if (!region_arg.empty()) {
    const auto v = split_reals(region_arg, 4, "--region");
    region = make_region(v[0], v[1], v[2], v[3]);
  }
  const Spectrum s = find_eigenvalues(lp.problem, region, lp.options.root);
  if (!csv_path.empty()) write_csv(csv_path, s);
  print_document(jspectrum(s));
  std::fprintf(stderr,
               "%zu eigenvalues in [%g, %g] x [%g, %g]; zero order %d\n",
               s.eigenvalues.size(), s.region.re_min, s.region.re_max,
               s.region.im_min, s.region.im_max, s.zero_order);
  return 0;
}

int cmd_delta(const std::string& path, const std::string& lambda_arg,
              int order) {
  const LoadedProblem lp = load_problem(path);
  const auto v = split_reals(lambda_arg, 2, "--lambda");
  const Cx lambda{v[0], v[1]};
  Cx value;
  if (order == 0) {
    const bool dbl =
        char_roots(lp.problem.pencil).kind == RootKind::Double;
    value = dbl ? delta_direct(lp.problem, lambda)
                : delta_minor(lp.problem, lambda);
  } else {
    value = delta_derivative(lp.problem, lambda, order);
  }
  JV o = JV::O();
  o.obj["lambda"] = jcx(lambda);
  o.obj["order"] = JV::I(order);
  o.obj["value"] = jcx(value);
  print_document(o);
  std::fprintf(stderr, "order %d at (%g, %g): (%g, %g)\n", order,
               lambda.real(), lambda.imag(), value.real(), value.imag());
  return 0;
}

int cmd_minors(const std::string& path) {
  const LoadedProblem lp = load_problem(path);
  const PlueckerVector p = minors(lp.problem.bc);
  const Cx rel = relation_residual(p);
  JV o = JV::O();
  o.obj["pluecker"] = jpluecker(p);
  o.obj["relation_residual"] = jcx(rel);
  print_document(o);
  std::fprintf(stderr, "relation residual magnitude %g\n", std::abs(rel));
  return 0;
}

int cmd_equiv(const std::string& path_a, const std::string& path_b) {
  const LoadedProblem a = load_problem(path_a);
  const LoadedProblem b = load_problem(path_b);
  const bool same = equivalent(a.problem.bc, b.problem.bc);
  JV o = JV::O();
  o.obj["equivalent"] = JV::B(same);
  o.obj["pluecker_a"] = jpluecker(minors(a.problem.bc));
  o.obj["pluecker_b"] = jpluecker(minors(b.problem.bc));
  print_document(o);
  std::fprintf(stderr, "row spaces %s\n", same ? "match" : "differ");
  return 0;
}

int cmd_recover(const std::string& path) {
  const LoadedSpectrumFile sf = load_spectrum_file(path);
  const RecoveryOutcome out =
      recover_from_spectrum(sf.pencil, sf.eigenvalues, sf.options.recovery);
  JV o = JV::O();
  o.obj["status"] = JV::S(recovery_status_name(out.status));
  o.obj["nullspace_dim"] = JV::I(out.nullspace_dim);
  o.obj["residual"] = JV::N(out.residual);
  JV sv = JV::A();
  for (const double s : out.singular_values) sv.arr.push_back(JV::N(s));
  o.obj["singular_values"] = sv;
  if (out.ray) o.obj["ray"] = jpluecker(*out.ray);
  if (out.reconstructed) o.obj["reconstructed"] = jbc(*out.reconstructed);
  print_document(o);
  std::fprintf(stderr, "recovery %s, nullspace dimension %d\n",
               recovery_status_name(out.status), out.nullspace_dim);
  return 0;
}

const char* side_name(WitnessSide s) {
  switch (s) {
    case WitnessSide::OnlyInFirst: return "OnlyInFirst";
    case WitnessSide::OnlyInSecond: return "OnlyInSecond";
    case WitnessSide::MultiplicityMismatch: return "MultiplicityMismatch";
  }
  return "OnlyInFirst";
}

int cmd_verify(int trials, std::uint64_t seed) {
  TrialConfig cfg;
  cfg.num_trials = trials;
  cfg.rng_seed = seed;
  const TrialSummary summary = run_trials(cfg);
  JV o = JV::O();
  o.obj["num_trials"] = JV::I(trials);
  o.obj["seed"] = JV::I(static_cast<long long>(seed));
  o.obj["passes"] = JV::I(summary.passes);
  o.obj["inconclusives"] = JV::I(summary.inconclusives);
  o.obj["failures"] = JV::I(summary.failures);
  JV recs = JV::A();
  for (const TrialRecord& r : summary.records) {
    JV rec = JV::O();
    rec.obj["index"] = JV::I(r.index);
    rec.obj["bc_equivalent"] = JV::B(r.bc_equivalent);
    rec.obj["outcome"] = JV::S(trial_outcome_name(r.outcome));
    rec.obj["detail"] = JV::S(r.detail);
    if (r.witness) {
      JV w = JV::O();
      w.obj["re"] = JV::N(r.witness->lambda.real());
      w.obj["im"] = JV::N(r.witness->lambda.imag());
      w.obj["side"] = JV::S(side_name(r.witness->side));
      w.obj["multiplicity_first"] = JV::I(r.witness->multiplicity_first);
      w.obj["multiplicity_second"] = JV::I(r.witness->multiplicity_second);
      rec.obj["witness"] = w;
    }
    recs.arr.push_back(rec);
  }
  o.obj["trials"] = recs;
  print_document(o);
  std::fprintf(stderr, "%d trials: %d pass, %d inconclusive, %d fail\n",
               trials, summary.passes, summary.inconclusives,
               summary.failures);
  return 0;
}

JV jreport(const ExampleReport& r) {
  JV o = JV::O();
  o.obj["id"] = JV::I(r.example_id);
  o.obj["variant"] = JV::S(variant_name(r.variant));
  o.obj["claim"] = JV::S(r.claim);
  o.obj["claim_holds"] = JV::B(r.claim_holds);
  o.obj["notes"] = JV::S(r.notes);
  if (r.computed.bc_equivalent)
    o.obj["bc_equivalent"] = JV::B(*r.computed.bc_equivalent);
  JV checks = JV::A();
  for (const NamedCheck& c : r.computed.checks) {
    JV chk = JV::O();
    chk.obj["label"] = JV::S(c.label);
    chk.obj["pass"] = JV::B(c.pass);
    chk.obj["detail"] = JV::S(c.detail);
    checks.arr.push_back(chk);
  }
  o.obj["checks"] = checks;
  JV spectra = JV::A();
  for (std::size_t i = 0; i < r.computed.spectra.size(); ++i) {
    JV s = jspectrum(r.computed.spectra[i]);
    s.obj["label"] = JV::S(r.computed.spectrum_labels[i]);
    spectra.arr.push_back(s);
  }
  o.obj["spectra"] = spectra;
  return o;
}

int cmd_examples(int id, const std::string& variant) {
  std::vector<int> ids;
  if (id != 0)
    ids.push_back(id);
  else
    ids = {1, 2, 3, 4, 5};
  std::vector<ExampleVariant> variants;
  if (variant.empty() || variant == "printed")
    variants.push_back(ExampleVariant::AsPrinted);
  if (variant.empty() || variant == "corrected")
    variants.push_back(ExampleVariant::Corrected);
  if (variants.empty())
    throw CliError{3, "Usage", "--variant must be printed or corrected"};

  JV reports = JV::A();
  for (const int k : ids)
    for (const ExampleVariant v : variants) {
      const ExampleReport r = run_example(k, v);
      reports.arr.push_back(jreport(r));
      std::fprintf(stderr, "example %d %-9s claim %s\n", k, variant_name(v),
                   r.claim_holds ? "holds" : "fails");
    }
  JV o = JV::O();
  o.obj["reports"] = reports;
  print_document(o);
  return 0;
}

// ---------------------------------------------------------------------------
// error mapping
// ---------------------------------------------------------------------------

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::Overflow:
    case Errc::BoundaryZero:
    case Errc::NonConvergent:
    case Errc::NewtonDiverged:
    case Errc::MultiplicityCapExceeded:
    case Errc::RankDeficientSystem:
    case Errc::RegionExhausted:
    case Errc::Internal:
      return 2;
    default:
      return 1;
  }
}

void print_error(const std::string& code, const std::string& message) {
  JV o = JV::O();
  o.obj["code"] = JV::S(code);
  o.obj["message"] = JV::S(message);
  std::string out;
  emit(o, out);
  out += '\n';
  std::fputs(out.c_str(), stderr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward and inverse spectral toolkit for quadratic pencils"};
  app.require_subcommand(1);

  std::string problem_path, region_arg, csv_path;
  auto* sp = app.add_subcommand("spectrum",
                                "Eigenvalues of a problem file in a region");
  sp->add_option("problem", problem_path, "problem JSON file")->required();
  sp->add_option("--region", region_arg,
                 "RE_MIN,RE_MAX,IM_MIN,IM_MAX (overrides the file)");
  sp->add_option("--csv", csv_path, "also write re,im,multiplicity,residual");

  std::string delta_path, lambda_arg;
  int order = 0;
  auto* dl = app.add_subcommand("delta",
                                "Characteristic determinant or derivative");
  dl->add_option("problem", delta_path, "problem JSON file")->required();
  dl->add_option("--lambda", lambda_arg, "RE,IM evaluation point")->required();
  dl->add_option("--order", order, "derivative order (default 0)");

  std::string minors_path;
  auto* mn = app.add_subcommand("minors", "Boundary minors and their relation");
  mn->add_option("problem", minors_path, "problem JSON file")->required();

  std::string equiv_a, equiv_b;
  auto* eq = app.add_subcommand("equiv", "Row-space equivalence of two files");
  eq->add_option("a", equiv_a, "first problem JSON file")->required();
  eq->add_option("b", equiv_b, "second problem JSON file")->required();

  std::string recover_path;
  auto* rc = app.add_subcommand("recover",
                                "Boundary conditions from a spectrum file");
  rc->add_option("spectrum", recover_path, "pencil + eigenvalues JSON file")
      ->required();

  int trials = 100;
  std::uint64_t seed = 42;
  auto* vf = app.add_subcommand("verify", "Randomized forward/inverse trials");
  vf->add_option("--trials", trials, "number of trials (default 100)");
  vf->add_option("--seed", seed, "RNG seed (default 42)");

  int example_id = 0;
  std::string variant;
  auto* ex = app.add_subcommand("examples", "Worked example reports");
  ex->add_option("--id", example_id, "example id 1..5 (default all)");
  ex->add_option("--variant", variant, "printed or corrected (default both)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("Usage", e.what());
    return 3;
  }

  try {
    if (sp->parsed()) return cmd_spectrum(problem_path, region_arg, csv_path);
    if (dl->parsed()) return cmd_delta(delta_path, lambda_arg, order);
    if (mn->parsed()) return cmd_minors(minors_path);
    if (eq->parsed()) return cmd_equiv(equiv_a, equiv_b);
    if (rc->parsed()) return cmd_recover(recover_path);
    if (vf->parsed()) return cmd_verify(trials, seed);
    if (ex->parsed()) return cmd_examples(example_id, variant);
  } catch (const CliError& e) {
    print_error(e.code, e.message);
    return e.exit_code;
  } catch (const Error& e) {
    print_error(errc_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    print_error("Internal", e.what());
    return 2;
  }
  return 3;
}
