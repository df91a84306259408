#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "grkit/colimit.hpp"
#include "grkit/graded_k0.hpp"
#include "grkit/graph.hpp"
#include "grkit/iso.hpp"
#include "grkit/k0.hpp"
#include "grkit/monoid.hpp"
#include "grkit/polycephaly.hpp"

namespace grkit::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr int kSchemaVersion = 1;

class NoInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  int code = 0;
  std::string text;
  json result;
};

struct Input {
  std::string path;
  std::string sha256;
  Graph graph;
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

Input load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NoInputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  Input input{path, sha256_hex(bytes), {}};
  try {
    input.graph = fs::path(path).extension() == ".json" ? parse_graph_json(bytes) : parse_graph(bytes);
  } catch (const ParseError& e) {
    throw ParseError(0, path + ": " + e.what());
  }
  return input;
}

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json integers_json(const IntVector& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(integer_json(z));
  return a;
}

json vertex_set_json(const Graph& g, const VertexSet& s) {
  json a = json::array();
  for (VertexId v : s) a.push_back(g.vertex_name(v));
  return a;
}

json group_json(const FinAbGroup& grp) {
  return {{"free_rank", grp.free_rank()}, {"torsion", integers_json(grp.torsion())}, {"text", grp.to_string()}};
}

std::size_t budget_from_env(std::size_t fallback) {
  if (const char* s = std::getenv("LPA_GRKIT_BUDGET")) {
    try {
      return std::stoul(s);
    } catch (const std::exception&) {
      throw std::invalid_argument("LPA_GRKIT_BUDGET must be a nonnegative integer");
    }
  }
  return fallback;
}

// ---------------------------------------------------------------------------
// Subcommands

std::string describe_head(const Graph& g, const Head& h) {
  std::string s = to_string(h.kind);
  if (h.kind == HeadKind::Comet) s += " l=" + std::to_string(h.cycle_length);
  if (h.kind == HeadKind::Rose) s += " n=" + std::to_string(h.petals);
  return s + " at '" + g.vertex_name(h.vertex) + "' lengths " + format_shifts(h.lengths);
}

json head_json(const Graph& g, const Head& h) {
  json j = {{"kind", to_string(h.kind)},
            {"vertex", g.vertex_name(h.vertex)},
            {"component", h.component},
            {"path_count", integer_json(h.path_count())},
            {"length_counts", integers_json(h.lengths.counts())}};
  if (h.kind == HeadKind::Comet) {
    j["cycle_length"] = h.cycle_length;
    j["cycle"] = vertex_set_json(g, h.cycle);
  }
  if (h.kind == HeadKind::Rose) j["petals"] = h.petals;
  return j;
}

Outcome rejected(const NotPolycephaly& why) {
  Outcome o;
  o.code = 3;
  o.text = "not polycephaly: " + to_string(why.reason) + " (" + why.detail + ")";
  o.result = {{"polycephaly", false}, {"reason", to_string(why.reason)}, {"detail", why.detail}};
  return o;
}

Outcome do_classify(const Graph& g) {
  const auto c = classify(g);
  if (const auto* why = std::get_if<NotPolycephaly>(&c)) return rejected(*why);
  const auto& d = std::get<PolycephalyDecomposition>(c);
  Outcome o;
  o.text = "polycephaly: " + std::to_string(d.heads.size()) + " head(s), " + std::to_string(d.component_count) +
           " component(s)";
  json heads = json::array();
  for (const Head& h : d.heads) {
    o.text += "\n  " + describe_head(g, h);
    heads.push_back(head_json(g, h));
  }
  o.result = {{"polycephaly", true}, {"components", d.component_count}, {"heads", heads}};
  return o;
}

json block_json(const BlockDescriptor& b) {
  std::string ring;
  switch (b.ring) {
    case BlockDescriptor::Ring::Field: ring = "field"; break;
    case BlockDescriptor::Ring::Laurent: ring = "laurent"; break;
    case BlockDescriptor::Ring::Leavitt: ring = "leavitt"; break;
  }
  json j = {{"ring", ring}, {"size", integer_json(b.size)}, {"shift_counts", integers_json(b.shifts.counts())},
            {"text", b.to_string()}};
  if (b.ring != BlockDescriptor::Ring::Field) j["parameter"] = b.parameter;
  return j;
}

Outcome do_decompose(const Graph& g) {
  const auto c = classify(g);
  if (const auto* why = std::get_if<NotPolycephaly>(&c)) return rejected(*why);
  const auto& d = std::get<PolycephalyDecomposition>(c);
  const auto blocks = decomposition_report(d);
  Outcome o;
  o.text = format_report(blocks);
  json arr = json::array();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    json b = block_json(blocks[i]);
    b["component"] = d.heads[i].component;
    arr.push_back(b);
  }
  o.result = {{"blocks", arr}, {"formula", o.text}};
  return o;
}

Outcome do_k0(const Graph& g) {
  const FinAbGroup grp = k0_nongraded(g);
  return {0, grp.to_string(), group_json(grp)};
}

json component_json(const ComponentValue& c) {
  json j = {{"text", describe_component(c)}};
  if (const auto* p = std::get_if<LaurentPoly>(&c)) {
    json terms = json::array();
    for (const auto& [e, coef] : p->terms()) terms.push_back({e, integer_json(coef)});
    j["type"] = "laurent";
    j["unit"] = terms;
  } else if (const auto* r = std::get_if<ResidueVector>(&c)) {
    j["type"] = "comet";
    j["l"] = r->modulus();
    j["unit"] = integers_json(r->counts);
  } else {
    const auto& f = std::get<NAdicFraction>(c);
    j["type"] = "rose";
    j["n"] = f.base();
    j["unit"] = f.value().get_str();
  }
  return j;
}

std::string bratteli_text(const Graph& g, const std::vector<BratteliLevel>& levels) {
  std::string out;
  for (const auto& level : levels) {
    if (!out.empty()) out += '\n';
    out += "depth " + std::to_string(level.depth) + ": (";
    for (std::size_t v = 0; v < level.sizes.size(); ++v) out += (v ? "," : "") + level.sizes[v].get_str();
    out += ")";
    if (!level.frozen.empty()) {
      out += " frozen";
      for (const auto& f : level.frozen)
        out += " " + g.vertex_name(f.sink) + "@" + std::to_string(f.depth) + ":" + f.size.get_str();
    }
  }
  return out;
}

json bratteli_json(const Graph& g, const std::vector<BratteliLevel>& levels) {
  json arr = json::array();
  for (const auto& level : levels) {
    json frozen = json::array();
    for (const auto& f : level.frozen)
      frozen.push_back({{"sink", g.vertex_name(f.sink)}, {"depth", f.depth}, {"size", integer_json(f.size)}});
    arr.push_back({{"depth", level.depth}, {"sizes", integers_json(level.sizes)}, {"frozen", frozen}});
  }
  return arr;
}

json presentation_json(const ColimitPresentation& p) {
  return {{"label", p.label},
          {"determinant", integer_json(p.determinant)},
          {"stage_vector_only", p.stage_vector_only()},
          {"stable_index", p.stable_index},
          {"stable_kernel_rank", p.stable_kernel_rank},
          {"eventual_rank", p.eventual_rank},
          {"restricted_determinant", integer_json(p.restricted_determinant)},
          {"fills_localization", p.fills_localization},
          {"order_unit", json::array({json(std::vector<int>(p.dimension, 1)), 0})}};
}

Outcome do_k0gr(const Graph& g, bool colimit, std::size_t depth) {
  Outcome o;
  const auto c = classify(g);
  const bool poly = std::holds_alternative<PolycephalyDecomposition>(c);
  if (poly) {
    const auto module = k0_graded_polycephaly(std::get<PolycephalyDecomposition>(c));
    o.text = module.to_string();
    json comps = json::array();
    for (const auto& u : module.unit) comps.push_back(component_json(u));
    o.result["components"] = comps;
  } else if (!colimit) {
    if (!is_strongly_graded(g)) {
      Outcome r = rejected(std::get<NotPolycephaly>(c));
      r.text += "; the graph has sinks, so no colimit description either";
      return r;
    }
    colimit = true;
    o.text = "not polycephaly (" + to_string(std::get<NotPolycephaly>(c).reason) + "); colimit description:";
  }
  if (colimit) {
    if (!is_strongly_graded(g)) throw GraphError("--colimit needs a sink-free graph");
    const auto p = colimit_presentation(g);
    const auto levels = bratteli(g, depth);
    if (!o.text.empty()) o.text += "\n";
    o.text += p.to_string() + "\norder unit: (" ;
    for (std::size_t i = 0; i < p.dimension; ++i) o.text += i ? ",1" : "1";
    o.text += ")@0\n" + bratteli_text(g, levels);
    o.result["colimit"] = presentation_json(p);
    o.result["bratteli"] = bratteli_json(g, levels);
  }
  o.result["polycephaly"] = poly;
  return o;
}

Outcome do_bratteli(const Graph& g, std::size_t depth) {
  const auto levels = bratteli(g, depth);
  return {0, bratteli_text(g, levels), {{"levels", bratteli_json(g, levels)}}};
}

Outcome do_hsets(const Graph& g, std::size_t cap) {
  const auto sets = hereditary_saturated_sets(g, cap);
  Outcome o;
  json arr = json::array();
  for (const auto& s : sets) {
    if (!o.text.empty()) o.text += '\n';
    o.text += format_vertex_set(g, s);
    arr.push_back(vertex_set_json(g, s));
  }
  o.result = {{"sets", arr}, {"count", sets.size()}};
  return o;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Iso: return 0;
    case Verdict::NotIso: return 1;
    case Verdict::Unknown: return 2;
  }
  return kExitInternal;
}

Outcome do_iso(const Graph& a, const Graph& b, bool certificate) {
  const auto ca = classify(a);
  const auto cb = classify(b);
  for (const auto* c : {&ca, &cb})
    if (const auto* why = std::get_if<NotPolycephaly>(c)) {
      Outcome r = rejected(*why);
      r.text = (c == &ca ? "first graph " : "second graph ") + r.text;
      r.result["which"] = c == &ca ? 0 : 1;
      return r;
    }
  const auto ma = k0_graded_polycephaly(std::get<PolycephalyDecomposition>(ca));
  const auto mb = k0_graded_polycephaly(std::get<PolycephalyDecomposition>(cb));
  const IsoVerdict v = decide_graded_iso(ma, mb);
  Outcome o;
  o.code = verdict_code(v.verdict);
  o.text = to_string(v.verdict);
  if (!v.reason.empty()) o.text += ": " + v.reason;
  json matching = json::array();
  for (const auto& m : v.matching) {
    matching.push_back({{"kind", to_string(m.kind)}, {"parameter", m.parameter}, {"left", m.left},
                        {"right", m.right}, {"shift", m.shift}});
    if (certificate)
      o.text += "\n  head " + std::to_string(m.left) + " -> head " + std::to_string(m.right) + " (" +
                to_string(m.kind) + (m.parameter ? " " + std::to_string(m.parameter) : "") +
                "), unit_right = x^" + std::to_string(m.shift) + " unit_left";
  }
  o.result = {{"verdict", to_string(v.verdict)}, {"reason", v.reason}, {"matching", matching}};
  return o;
}

Outcome shift_verdict(const IsoVerdict& v) {
  Outcome o;
  o.code = verdict_code(v.verdict);
  o.text = to_string(v.verdict);
  if (v.power_witness) o.text += " (j=" + std::to_string(*v.power_witness) + ")";
  if (!v.reason.empty()) o.text += ": " + v.reason;
  o.result = {{"verdict", to_string(v.verdict)}, {"reason", v.reason}};
  if (v.power_witness) o.result["j"] = *v.power_witness;
  return o;
}

Outcome do_monoid_eq(const Graph& g, const std::string& a, const std::string& b, std::size_t budget) {
  const auto ma = parse_monoid_element(g, a);
  const auto mb = parse_monoid_element(g, b);
  const MonoidSearch s = monoid_equal(g, ma, mb, budget);
  Outcome o;
  o.code = s.outcome == MonoidOutcome::Equal ? 0 : s.outcome == MonoidOutcome::NotEqualWithinBudget ? 1 : 2;
  o.text = to_string(s.outcome) + " (explored " + std::to_string(s.explored) + " states, budget " +
           std::to_string(budget) + ")";
  o.result = {{"outcome", to_string(s.outcome)},
              {"explored", s.explored},
              {"budget", budget},
              {"a", format_monoid_element(g, ma)},
              {"b", format_monoid_element(g, mb)}};
  return o;
}

// ---------------------------------------------------------------------------

int exit_code_for(const std::exception_ptr& ep, std::string& message) {
  try {
    std::rethrow_exception(ep);
  } catch (const NoInputError& e) {
    message = e.what();
    return kExitNoInput;
  } catch (const ParseError& e) {
    message = std::string("parse error: ") + e.what();
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    message = e.what();
    return kExitUsage;
  } catch (const std::exception& e) {
    message = e.what();
    return kExitInternal;
  }
}

struct Emitter {
  bool as_json = false;
  bool timing = false;
  std::string command;
  std::ostream& out;
  std::ostream& err;

  json report(const std::vector<Input>& inputs, const Outcome& o, double ms) const {
    json in = json::array();
    for (const auto& i : inputs) in.push_back({{"path", i.path}, {"sha256", i.sha256}});
    json r = {{"schema", kSchemaVersion}, {"command", command}, {"inputs", in}, {"result", o.result},
              {"exit_code", o.code}};
    if (timing) r["timing_ms"] = ms;
    return r;
  }
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct FileResult {
  std::vector<Input> inputs;
  Outcome outcome;
  double ms = 0;
  std::string error;
};

FileResult run_on_file(const std::string& path, const std::function<Outcome(const Graph&)>& fn) {
  FileResult r;
  const auto start = Clock::now();
  try {
    r.inputs.push_back(load_input(path));
    r.outcome = fn(r.inputs.back().graph);
  } catch (...) {
    r.outcome.code = exit_code_for(std::current_exception(), r.error);
    r.outcome.result = {{"error", r.error}};
  }
  r.ms = elapsed_ms(start);
  return r;
}

std::vector<std::string> batch_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw NoInputError("batch directory '" + dir + "' not found");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".graph" || ext == ".json") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grothendieck groups and graded isomorphism for Leavitt path algebras of finite graphs",
               "lpa-grkit"};
  app.require_subcommand(1);
  bool as_json = false, timing = false;
  std::string batch_dir;
  app.add_flag("--json", as_json, "Emit a JSON report");
  app.add_flag("--timing", timing, "Report elapsed time");
  app.add_option("--batch", batch_dir, "Run a single-file subcommand on every .graph/.json file in a directory");

  std::string file, file_b, multiset_a, multiset_b, shifts_a, shifts_b;
  std::size_t depth = 6, cap = kDefaultSubsetCap, base = 2;
  std::optional<std::size_t> budget;
  bool certificate = false, colimit = false;

  auto* classify_cmd = app.add_subcommand("classify", "Recognize polycephaly graphs and list their heads");
  classify_cmd->add_option("file", file, "Graph file");
  auto* decompose_cmd = app.add_subcommand("decompose", "Print the graded matrix decomposition");
  decompose_cmd->add_option("file", file, "Graph file");
  auto* k0_cmd = app.add_subcommand("k0", "Grothendieck group coker(N^t - I)");
  k0_cmd->add_option("file", file, "Graph file");
  auto* k0gr_cmd = app.add_subcommand("k0gr", "Graded Grothendieck group with order unit");
  k0gr_cmd->add_option("file", file, "Graph file");
  k0gr_cmd->add_flag("--colimit", colimit, "Also print the colimit presentation and Bratteli table");
  k0gr_cmd->add_option("--depth", depth, "Bratteli depth")->capture_default_str();
  auto* iso_cmd = app.add_subcommand("iso", "Decide graded isomorphism of two polycephaly graphs");
  iso_cmd->add_option("file_a", file, "First graph")->required();
  iso_cmd->add_option("file_b", file_b, "Second graph")->required();
  iso_cmd->add_flag("--certificate", certificate, "Print the head matching and shift witnesses");
  auto* matrix_cmd = app.add_subcommand("matrix-iso", "Compare M_k(L(1,n))(shifts) algebras");
  matrix_cmd->add_option("n", base, "Leavitt base n >= 2")->required();
  matrix_cmd->add_option("shifts_a", shifts_a, "Comma separated shifts")->required();
  matrix_cmd->add_option("shifts_b", shifts_b, "Comma separated shifts")->required();
  auto* free_cmd = app.add_subcommand("free-iso", "Compare graded free modules over L(1,n)");
  free_cmd->add_option("n", base, "Leavitt base n >= 2")->required();
  free_cmd->add_option("shifts_a", shifts_a, "Comma separated shifts")->required();
  free_cmd->add_option("shifts_b", shifts_b, "Comma separated shifts")->required();
  auto* bratteli_cmd = app.add_subcommand("bratteli", "Path counts k_m = (N^t)^m (1,...,1)");
  bratteli_cmd->add_option("file", file, "Graph file");
  bratteli_cmd->add_option("--depth", depth, "Number of levels after level 0")->capture_default_str();
  auto* hsets_cmd = app.add_subcommand("hsets", "Hereditary saturated vertex sets");
  hsets_cmd->add_option("file", file, "Graph file");
  hsets_cmd->add_option("--cap", cap, "Largest vertex count for the subset search")->capture_default_str();
  auto* monoid_cmd = app.add_subcommand("monoid-eq", "Bounded equality test in the graph monoid");
  monoid_cmd->add_option("file", file, "Graph file")->required();
  monoid_cmd->add_option("a", multiset_a, "Multiset such as u+v+v")->required();
  monoid_cmd->add_option("b", multiset_b, "Multiset such as u+v+v")->required();
  monoid_cmd->add_option("--budget", budget, "Maximum explored states");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  Emitter emit{as_json, timing, sub->get_name(), out, err};

  std::function<Outcome(const Graph&)> per_file;
  if (sub == classify_cmd) per_file = do_classify;
  if (sub == decompose_cmd) per_file = do_decompose;
  if (sub == k0_cmd) per_file = do_k0;
  if (sub == k0gr_cmd) per_file = [&](const Graph& g) { return do_k0gr(g, colimit, depth); };
  if (sub == bratteli_cmd) per_file = [&](const Graph& g) { return do_bratteli(g, depth); };
  if (sub == hsets_cmd) per_file = [&](const Graph& g) { return do_hsets(g, cap); };

  auto print = [&](const FileResult& r) {
    if (as_json) {
      out << emit.report(r.inputs, r.outcome, r.ms).dump(2) << "\n";
      return;
    }
    if (!r.error.empty()) {
      err << r.error << "\n";
    } else {
      out << r.outcome.text << "\n";
    }
    if (timing) out << "elapsed: " << r.ms << " ms\n";
  };

  if (!batch_dir.empty()) {
    if (!per_file) {
      err << "--batch applies to classify, decompose, k0, k0gr, bratteli and hsets\n";
      return kExitUsage;
    }
    std::vector<std::string> files;
    try {
      files = batch_files(batch_dir);
    } catch (const NoInputError& e) {
      err << e.what() << "\n";
      return kExitNoInput;
    }
    std::vector<std::future<FileResult>> jobs;
    for (const auto& f : files) jobs.push_back(std::async(std::launch::async, run_on_file, f, per_file));
    int worst = 0;
    json reports = json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const FileResult r = jobs[i].get();
      worst = std::max(worst, r.outcome.code);
      if (as_json) {
        reports.push_back(emit.report(r.inputs, r.outcome, r.ms));
      } else {
        out << "== " << fs::path(files[i]).filename().string() << " ==\n";
        print(r);
      }
    }
    if (as_json) out << json{{"schema", kSchemaVersion}, {"command", sub->get_name()}, {"batch", reports}}.dump(2)
                     << "\n";
    return worst;
  }

  if (per_file) {
    if (file.empty()) {
      err << sub->get_name() << ": a graph file is required (or --batch DIR)\n";
      return kExitUsage;
    }
    const FileResult r = run_on_file(file, per_file);
    print(r);
    return r.outcome.code;
  }

  FileResult r;
  const auto start = Clock::now();
  try {
    if (sub == iso_cmd) {
      r.inputs.push_back(load_input(file));
      r.inputs.push_back(load_input(file_b));
      r.outcome = do_iso(r.inputs[0].graph, r.inputs[1].graph, certificate);
    } else if (sub == monoid_cmd) {
      r.inputs.push_back(load_input(file));
      r.outcome = do_monoid_eq(r.inputs[0].graph, multiset_a, multiset_b,
                               budget ? *budget : budget_from_env(kDefaultMonoidBudget));
    } else if (sub == matrix_cmd || sub == free_cmd) {
      const ShiftVector a{base, parse_shift_list(shifts_a)};
      const ShiftVector b{base, parse_shift_list(shifts_b)};
      r.outcome = shift_verdict(sub == matrix_cmd ? decide_matrix_leavitt_iso(a, b) : decide_free_module_iso(a, b));
      r.outcome.result["base"] = base;
    }
  } catch (...) {
    r.outcome.code = exit_code_for(std::current_exception(), r.error);
    r.outcome.result = {{"error", r.error}};
  }
  r.ms = elapsed_ms(start);
  print(r);
  return r.outcome.code;
}

}  // namespace grkit::cli
