// kmlab command-line front end. Exit status: 0 success, 1 a checked property
// failed (the report carries the certificate), 2 usage or configuration error.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kmlab/chars.hpp"
#include "kmlab/frobenius.hpp"
#include "kmlab/modules.hpp"
#include "kmlab/ring.hpp"

using json = nlohmann::ordered_json;
using namespace kmlab;

namespace {

struct RunConfig {
  std::string command;
  std::string source;
  int depth = -1;
  int degree = -1;
  int prime = 0;
  std::string lambda_text;
  std::vector<std::string> words;
  std::string format = "tsv";
  std::string output = "-";
  bool timestamp = true;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  json body = json::object();
  std::optional<Table> table;
  int status = 0;
};

json vec(const std::vector<int>& v) { return json(v); }

std::string rat(const Rational& q) { return q.get_str(); }

std::vector<std::string> depth_columns(const Gcm& g) {
  std::vector<std::string> c;
  for (int i = 0; i < g.rank(); ++i) c.push_back("m_" + g.label(i));
  return c;
}

std::vector<std::string> depth_cells(const DepthVec& m) {
  std::vector<std::string> c;
  for (int x : m) c.push_back(std::to_string(x));
  return c;
}

std::string iso_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json config_json(const RunConfig& c, const std::optional<Gcm>& g) {
  json j;
  j["command"] = c.command;
  j["gcm"] = {{"source", c.source}};
  if (g) {
    j["gcm"]["labels"] = g->labels();
    j["gcm"]["matrix"] = g->matrix();
  }
  j["depth"] = c.depth >= 0 ? json(c.depth) : json(nullptr);
  j["degree"] = c.degree >= 0 ? json(c.degree) : json(nullptr);
  j["prime"] = c.prime > 0 ? json(c.prime) : json(nullptr);
  j["lambda"] = c.lambda_text.empty() ? json(nullptr) : json(parse_int_list(c.lambda_text));
  j["words"] = c.words;
  j["format"] = c.format;
  j["output"] = c.output;
  if (c.timestamp) j["timestamp"] = iso_now();
  return j;
}

void flatten(const json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_structured())) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], path + "[" + std::to_string(k) + "]", out);
  } else {
    out << path << '\t' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

std::string render(const RunConfig& c, const std::optional<Gcm>& g, const Report& r) {
  json cfg = config_json(c, g);
  std::ostringstream out;
  if (c.format == "json") {
    json j;
    j["config"] = cfg;
    j["status"] = r.status == 0 ? "pass" : "fail";
    j["result"] = r.body;
    out << j.dump(2) << '\n';
    return out.str();
  }
  std::ostringstream head;
  flatten(cfg, "", head);
  std::istringstream lines(head.str());
  for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
  out << "# status\t" << (r.status == 0 ? "pass" : "fail") << '\n';
  if (r.table) {
    for (std::size_t k = 0; k < r.table->columns.size(); ++k) out << (k ? "\t" : "") << r.table->columns[k];
    out << '\n';
    for (const auto& row : r.table->rows) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "\t" : "") << row[k];
      out << '\n';
    }
  } else {
    flatten(r.body, "", out);
  }
  return out.str();
}

Anchor lambda_of(const Gcm& g, const RunConfig& c) {
  if (c.lambda_text.empty()) throw UsageError("--lambda is required");
  Anchor l = parse_int_list(c.lambda_text);
  if (static_cast<int>(l.size()) != g.rank())
    throw UsageError("--lambda needs " + std::to_string(g.rank()) + " entries");
  require_dominant(l);
  return l;
}

void require_depth(const RunConfig& c) {
  if (c.depth < 0) throw UsageError("--depth is required and must be >= 0");
}

json character_json(const CharacterPoly& ch) {
  json t = json::array();
  for (const auto& [m, k] : ch.coeffs()) t.push_back({{"m", vec(m)}, {"coeff", k}});
  return t;
}

Table character_table(const Gcm& g, const CharacterPoly& ch) {
  Table t{depth_columns(g), {}};
  t.columns.push_back("coeff");
  std::vector<DepthVec> ms;
  for (const auto& [m, k] : ch.coeffs()) ms.push_back(m);
  std::sort(ms.begin(), ms.end(), depth_order);
  for (const auto& m : ms) {
    auto row = depth_cells(m);
    row.push_back(std::to_string(ch.coefficient(m)));
    t.rows.push_back(row);
  }
  return t;
}

// ---- subcommands

Report cmd_gcm_check(const Gcm& g) {
  Report r;
  r.body["rank"] = g.rank();
  r.body["labels"] = g.labels();
  r.body["matrix"] = g.matrix();
  if (g.symmetrizer()) {
    r.body["symmetrizer"] = *g.symmetrizer();
    r.body["finite_type"] = is_finite_type(g);
  } else {
    r.body["symmetrizer"] = "NotSymmetrizable";
  }
  return r;
}

Report cmd_roots(const Gcm& g, const RunConfig& c, bool mults) {
  require_depth(c);
  RootTable t = mults ? peterson_mults(g, c.depth) : real_roots(g, c.depth);
  Report r;
  Table tab{depth_columns(g), {}};
  tab.columns.push_back("mult");
  tab.columns.push_back("real");
  std::vector<DepthVec> ms;
  for (const auto& [m, e] : t.entries) ms.push_back(m);
  std::sort(ms.begin(), ms.end(), depth_order);
  json rows = json::array();
  for (const auto& m : ms) {
    const auto& e = t.entries.at(m);
    auto row = depth_cells(m);
    row.push_back(std::to_string(e.multiplicity));
    row.push_back(e.is_real ? "1" : "0");
    tab.rows.push_back(row);
    rows.push_back({{"m", vec(m)}, {"mult", e.multiplicity}, {"real", e.is_real}});
  }
  r.body["multiplicities"] = mults;
  r.body["roots"] = rows;
  r.table = tab;
  return r;
}

Report cmd_char(const Gcm& g, const RunConfig& c, const std::string& kind, const std::string& wtext) {
  require_depth(c);
  Anchor l = lambda_of(g, c);
  Report r;
  CharacterPoly ch(l, c.depth);
  r.body["anchor"] = vec(l);
  r.body["depth_bound"] = c.depth;
  if (kind == "L") {
    ch = char_L(g, l, c.depth);
  } else {
    if (wtext.empty()) throw UsageError("char demazure needs --w");
    WeylElement w = canonicalize(g, parse_word(g, wtext));
    r.body["w"] = format_element(g, w);
    ch = char_demazure(g, l, w, c.depth);
  }
  r.body["kind"] = kind;
  r.body["table"] = character_json(ch);
  r.table = character_table(g, ch);
  return r;
}

Report cmd_dims(const Gcm& g, const RunConfig& c) {
  require_depth(c);
  Anchor l = lambda_of(g, c);
  HighestWeightModule L(g, l, c.depth);
  CharacterPoly ch = char_L(g, l, c.depth);
  Report r;
  Table tab{depth_columns(g), {}};
  tab.columns.push_back("dim");
  tab.columns.push_back("char");
  json rows = json::array();
  std::vector<DepthVec> mismatches;
  for (const auto& m : depth_window(g.rank(), c.depth)) {
    std::size_t dm = L.has_layer(m) ? L.dim(m) : 0;
    auto k = ch.coefficient(m);
    if (dm == 0 && k == 0) continue;
    if (static_cast<std::int64_t>(dm) != k) mismatches.push_back(m);
    auto row = depth_cells(m);
    row.push_back(std::to_string(dm));
    row.push_back(std::to_string(k));
    tab.rows.push_back(row);
    rows.push_back({{"m", vec(m)}, {"dim", dm}, {"char", k}});
  }
  r.body["anchor"] = vec(l);
  r.body["table"] = rows;
  json mm = json::array();
  for (const auto& m : mismatches) mm.push_back(vec(m));
  r.body["mismatches"] = mm;
  r.status = mismatches.empty() ? 0 : 1;
  r.table = tab;
  return r;
}

json element_list(const Gcm& g, const std::vector<WeylElement>& ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back(format_element(g, w));
  return a;
}

Report cmd_lattice_check(const Gcm& g, const RunConfig& c, const std::string& S_text, int search_len) {
  require_depth(c);
  Anchor l = lambda_of(g, c);
  if (S_text.empty()) throw UsageError("lattice-check needs -S");
  auto S = parse_element_list(g, S_text);
  auto rep = verify_distributive(g, l, S, c.depth, search_len);
  Report r;
  r.body["lambda"] = vec(l);
  r.body["S"] = element_list(g, rep.S);
  r.body["search_len"] = search_len;
  r.body["success"] = rep.success;
  r.body["S_prime"] = element_list(g, rep.S_prime);
  r.body["candidate_worked"] = rep.candidate_worked;
  r.body["subsets_searched"] = rep.subsets_searched;
  json dims = json::array();
  for (const auto& [m, k] : rep.intersection_dims) dims.push_back({{"m", vec(m)}, {"dim", k}});
  r.body["intersection_dims"] = dims;
  if (rep.mismatch_depth)
    r.body["certificate"] = {{"depth", vec(*rep.mismatch_depth)},
                             {"expected_dim", rep.expected_dim},
                             {"found_dim", rep.found_dim}};
  r.status = rep.success ? 0 : 1;
  return r;
}

Report cmd_order_check(const Gcm& g, const RunConfig& c, int max_len) {
  require_depth(c);
  Anchor l = lambda_of(g, c);
  auto rep = verify_containment_order(g, l, max_len, c.depth);
  Report r;
  Table tab{{"v", "w", "bruhat", "contained", "window_consistent", "witness"}, {}};
  json rows = json::array();
  for (const auto& p : rep.verdicts) {
    std::string wit = p.witness ? format_vector(*p.witness) : "-";
    tab.rows.push_back({format_element(g, p.v), format_element(g, p.w), p.bruhat ? "1" : "0",
                        p.contained ? "1" : "0", p.window_consistent ? "1" : "0", wit});
    json row = {{"v", format_element(g, p.v)},
                {"w", format_element(g, p.w)},
                {"bruhat", p.bruhat},
                {"contained", p.contained},
                {"window_consistent", p.window_consistent}};
    if (p.witness) row["witness"] = vec(*p.witness);
    rows.push_back(row);
  }
  r.body["lambda"] = vec(l);
  r.body["max_len"] = max_len;
  r.body["strict"] = rep.strict_precondition;
  r.body["pairs"] = rep.pairs;
  r.body["counterexamples"] = rep.counterexamples.size();
  r.body["verdicts"] = rows;
  r.status = rep.pass() ? 0 : 1;
  r.table = tab;
  return r;
}

Report cmd_pluecker(const Gcm& g, const RunConfig& c, bool present, int max_len) {
  require_depth(c);
  Report r;
  if (present) {
    const int D = c.degree >= 0 ? c.degree : 3;
    auto rep = verify_degree2_presentation(g, c.depth, D);
    r.body["degree"] = rep.degree;
    r.body["complete_windows"] = rep.complete_windows;
    r.body["quadrics"] = rep.quadrics;
    json cells = json::array();
    for (const auto& cell : rep.cells)
      cells.push_back({{"lambda", vec(cell.lambda)},
                       {"m", vec(cell.m)},
                       {"relations", cell.relations},
                       {"generated", cell.generated}});
    r.body["cells"] = cells;
    json bad = json::array();
    for (const auto& cell : rep.mismatches)
      bad.push_back({{"lambda", vec(cell.lambda)}, {"m", vec(cell.m)}, {"relations", cell.relations},
                     {"generated", cell.generated}});
    r.body["mismatches"] = bad;
    r.body["pass"] = rep.pass();
    r.status = rep.pass() ? 0 : 1;
    return r;
  }
  SectionRing R(g, 2, c.depth);
  auto qs = pluecker_quadrics(R);
  auto elems = enumerate(g, max_len);
  json out = json::array();
  std::size_t failures = 0;
  for (const auto& q : qs) {
    json terms = json::array();
    for (const auto& t : q.terms)
      terms.push_back({{"a", vec(t.a)}, {"k", t.k}, {"b", vec(t.b)}, {"l", t.l}, {"c", rat(t.c)}});
    json nonvanishing = json::array();
    for (const auto& w : elems)
      if (evaluate_at_extremal(R, q, w) != 0) nonvanishing.push_back(format_element(g, w));
    failures += nonvanishing.size();
    out.push_back({{"i", g.label(q.i)},
                   {"j", g.label(q.j)},
                   {"weight", vec(q.m)},
                   {"terms", terms},
                   {"nonvanishing_at", nonvanishing}});
  }
  r.body["max_len"] = max_len;
  r.body["extremal_points"] = elems.size();
  r.body["quadrics"] = out;
  r.status = failures == 0 ? 0 : 1;
  return r;
}

Report cmd_frobenius(const Gcm& g, const RunConfig& c, const std::string& compat_text, bool canonical) {
  require_depth(c);
  if (c.prime <= 0) throw UsageError("frobenius needs --prime");
  if (c.degree < 0) throw UsageError("frobenius needs --deg");
  FrobeniusWindow W(g, static_cast<unsigned>(c.prime), c.degree, c.depth);
  SplittingOptions opt;
  opt.canonical = canonical;
  if (!compat_text.empty()) opt.compatible = parse_element_list(g, compat_text);
  auto res = find_splitting(W, opt);
  Report r;
  r.body["p"] = c.prime;
  r.body["window"] = {{"D", c.degree}, {"d", c.depth}};
  r.body["compatible"] = element_list(g, opt.compatible);
  r.body["canonical_imposed"] = canonical;
  r.body["variables"] = res.variables;
  r.body["equations"] = {{"total", res.equations},
                         {"linearity", res.linearity_equations},
                         {"compatibility", res.compatibility_equations},
                         {"canonical", res.canonical_equations}};
  if (!res.phi) {
    r.body["splitting"] = "none on window";
    r.status = 1;
    return r;
  }
  const auto& phi = *res.phi;
  r.body["solution_dim"] = res.solution_dim;
  json pieces = json::array();
  for (const auto& [key, piece] : phi.pieces) {
    json m = json::array();
    for (std::size_t i = 0; i < piece.map.rows(); ++i) m.push_back(piece.map.row(i));
    pieces.push_back({{"lambda", vec(piece.lambda)},
                      {"source", vec(piece.source)},
                      {"target", vec(piece.target)},
                      {"matrix", m}});
  }
  r.body["pieces"] = pieces;
  bool ok = true;
  auto lin = check_splitting(W, phi);
  ok = ok && lin.pass;
  r.body["checks"]["linearity"] = {{"pass", lin.pass}, {"checked", lin.checked}, {"failure", lin.failure}};
  json comp = json::array();
  for (const auto& w : opt.compatible) {
    bool a = check_compatibility(W, phi, w);
    bool b = check_quotient_splitting(W, phi, w);
    ok = ok && a && b;
    comp.push_back({{"w", format_element(g, w)}, {"compatible", a}, {"quotient_splitting", b}});
  }
  r.body["checks"]["compatibility"] = comp;
  json can = json::array();
  for (int i = 0; i < g.rank(); ++i) {
    try {
      auto rep = check_canonical_degree(W, phi, i);
      if (canonical) ok = ok && rep.pass;
      can.push_back({{"i", g.label(i)},
                     {"pass", rep.pass},
                     {"coefficients_checked", rep.coefficients_checked},
                     {"failure", rep.failure}});
    } catch (const WindowTooSmall& e) {
      if (canonical) throw;
      can.push_back({{"i", g.label(i)}, {"pass", nullptr}, {"failure", e.what()}});
    }
  }
  r.body["checks"]["canonical"] = can;
  r.status = ok ? 0 : 1;
  return r;
}

Report cmd_weylkac(const Gcm& g, const RunConfig& c) {
  require_depth(c);
  Anchor l = lambda_of(g, c);
  auto rep = check_weyl_kac(g, l, c.depth);
  Report r;
  r.body["lambda"] = vec(l);
  r.body["equal"] = rep.equal;
  r.body["numerator_terms"] = rep.numerator_terms;
  r.body["roots_used"] = rep.roots_used;
  if (rep.first_mismatch)
    r.body["certificate"] = {
        {"m", vec(*rep.first_mismatch)}, {"lhs", rep.lhs_coeff}, {"rhs", rep.rhs_coeff}};
  r.status = rep.equal ? 0 : 1;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kmlab: truncated Kac-Moody flag manifold computations"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string gcm_path;
  bool no_timestamp = false;
  app.add_option("--preset", cfg.source, "preset name");
  app.add_option("--gcm", gcm_path, "GCM JSON file");
  app.add_option("--depth", cfg.depth, "root depth bound d");
  app.add_option("--format", cfg.format)->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--output,-o", cfg.output, "report path, - for stdout");
  app.add_flag("--no-timestamp", no_timestamp);

  std::string gcm_action, gcm_src;
  auto* gcm_cmd = app.add_subcommand("gcm", "validate a GCM");
  gcm_cmd->add_option("action", gcm_action)->required()->check(CLI::IsMember({"check"}));
  gcm_cmd->add_option("src", gcm_src, "preset name or JSON path")->required();

  bool mults = false;
  auto* roots = app.add_subcommand("roots", "root table");
  roots->add_flag("--mults", mults, "Peterson multiplicities including imaginary roots");

  std::string kind, wtext;
  auto* chr = app.add_subcommand("char", "truncated characters");
  chr->add_option("kind", kind)->required()->check(CLI::IsMember({"L", "demazure"}));
  chr->add_option("--w", wtext, "Weyl element as a reduced word");

  auto* dims = app.add_subcommand("dims", "Gram-rank dims against the character");

  std::string S_text;
  int search_len = 4;
  auto* lattice = app.add_subcommand("lattice-check", "intersection of thick Demazure modules as a sum");
  lattice->add_option("-S", S_text, "elements, e.g. 1,2 or 1.2,2.1");
  lattice->add_option("--search-len", search_len);

  int max_len = 4;
  auto* order = app.add_subcommand("order-check", "containment of thick Demazure modules vs Bruhat");
  order->add_option("--max-len", max_len);

  bool present = false;
  int pl_len = 4;
  auto* pl = app.add_subcommand("pluecker", "Pluecker quadrics");
  pl->add_flag("--present", present, "verify the degree-2 presentation");
  pl->add_option("--max-len", pl_len, "extremal points w with l(w) <= this");

  std::string compat;
  bool canonical = false;
  auto* fr = app.add_subcommand("frobenius", "Frobenius splitting on a window");
  fr->add_option("--compat", compat, "compatible Demazure ideals");
  fr->add_flag("--canonical", canonical);

  auto* wk = app.add_subcommand("weylkac", "truncated Weyl-Kac identity");

  for (auto* s : {roots, chr, dims, lattice, order, pl, fr, wk}) {
    s->add_option("--lambda", cfg.lambda_text, "weight in fundamental coordinates");
    s->fallthrough();
  }
  for (auto* s : {pl, fr}) s->add_option("--deg", cfg.degree, "degree bound D");
  fr->add_option("--prime", cfg.prime);
  gcm_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.timestamp = !no_timestamp;
  auto* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (sub == chr) cfg.command += " " + kind;
  if (sub == gcm_cmd) cfg.command += " " + gcm_action;
  if (!wtext.empty()) cfg.words.push_back(wtext);
  if (!S_text.empty()) cfg.words.push_back(S_text);
  if (!compat.empty()) cfg.words.push_back(compat);

  std::optional<Gcm> g;
  try {
    if (sub == gcm_cmd) {
      cfg.source = gcm_src;
    } else if (!gcm_path.empty()) {
      cfg.source = gcm_path;
    }
    if (cfg.depth < -1) throw UsageError("--depth must be >= 0");
    if (cfg.degree < -1) throw UsageError("--deg must be >= 0");
    if (cfg.source.empty()) throw UsageError("one of --preset or --gcm is required");
    g = load_gcm(cfg.source);
    Report r;
    if (sub == gcm_cmd) r = cmd_gcm_check(*g);
    else if (sub == roots) r = cmd_roots(*g, cfg, mults);
    else if (sub == chr) r = cmd_char(*g, cfg, kind, wtext);
    else if (sub == dims) r = cmd_dims(*g, cfg);
    else if (sub == lattice) r = cmd_lattice_check(*g, cfg, S_text, search_len);
    else if (sub == order) r = cmd_order_check(*g, cfg, max_len);
    else if (sub == pl) r = cmd_pluecker(*g, cfg, present, pl_len);
    else if (sub == fr) r = cmd_frobenius(*g, cfg, compat, canonical);
    else r = cmd_weylkac(*g, cfg);
    std::string text = render(cfg, g, r);
    if (cfg.output == "-") {
      std::cout << text;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw UsageError("cannot write " + cfg.output);
      f << text;
    }
    return r.status;
  } catch (const Error& e) {
    std::cerr << e.kind() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
