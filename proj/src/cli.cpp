#include "netequil/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "netequil/demos.hpp"
#include "netequil/document.hpp"
#include "netequil/keyplayer.hpp"
#include "netequil/oracle.hpp"
#include "netequil/solver.hpp"

namespace netequil::cli {
namespace {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// diagnostics

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

class Log {
 public:
  explicit Log(std::ostream& err) : err_(err) {
    if (const char* env = std::getenv("NETEQUIL_LOG")) {
      const std::string v = env;
      if (v == "error") level_ = Level::Error;
      else if (v == "warn") level_ = Level::Warn;
      else if (v == "info") level_ = Level::Info;
      else if (v == "debug") level_ = Level::Debug;
    }
  }
  void operator()(Level l, const std::string& msg) const {
    static const char* tags[] = {"error", "warn", "info", "debug"};
    if (l <= level_) err_ << tags[static_cast<int>(l)] << ": " << msg << '\n';
  }

 private:
  std::ostream& err_;
  Level level_ = Level::Warn;
};

// ---------------------------------------------------------------------------
// output

struct Output {
  ojson report;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream ss;
  ss << std::setprecision(12) << v;
  return ss.str();
}

ojson one_based(const VertexSet& s) {
  ojson a = ojson::array();
  for (std::size_t v : s) a.push_back(v + 1);
  return a;
}

ojson finite_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

std::string scalar_text(const ojson& j) {
  if (j.is_number_float()) return fmt(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool flat_array(const ojson& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

void render_text(const ojson& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, val] : j.items()) {
    if (flat_array(val)) {
      out << pad << key << ":";
      for (const auto& e : val) out << ' ' << scalar_text(e);
      out << '\n';
    } else if (val.is_object()) {
      out << pad << key << ":\n";
      render_text(val, out, indent + 2);
    } else if (val.is_array()) {
      out << pad << key << ":\n";
      std::size_t k = 0;
      for (const auto& e : val) {
        out << pad << "  [" << ++k << "]";
        if (e.is_object()) {
          out << '\n';
          render_text(e, out, indent + 4);
        } else {
          for (const auto& s : e) out << ' ' << scalar_text(s);
          out << '\n';
        }
      }
    } else {
      out << pad << key << ": " << scalar_text(val) << '\n';
    }
  }
}

void emit(const Output& o, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << o.report.dump(2) << '\n';
  } else if (format == "csv") {
    for (std::size_t i = 0; i < o.header.size(); ++i) out << (i ? "," : "") << o.header[i];
    out << '\n';
    for (const auto& row : o.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
      out << '\n';
    }
  } else {
    render_text(o.report, out, 0);
  }
}

void vector_rows(Output& o, const std::vector<const Vector*>& cols) {
  const std::size_t n = cols.front()->size();
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::string> row{std::to_string(j + 1)};
    for (const Vector* c : cols) row.push_back(c ? fmt((*c)[j]) : "");
    o.rows.push_back(std::move(row));
  }
}

// ---------------------------------------------------------------------------
// report pieces

ojson certificate_json(const Certificate& c) {
  ojson j;
  j["kind"] = certificate_name(c);
  if (const auto* k = std::get_if<ContractionCert>(&c)) j["modulus"] = k->modulus;
  if (const auto* k = std::get_if<WeaklyChainedCert>(&c)) {
    j["orientation"] = k->witness.orientation == Orientation::Row ? "row" : "column";
    j["deficient"] = one_based(k->witness.deficient);
  }
  return j;
}

ojson solve_json(const SolveReport& r) {
  ojson j;
  j["method"] = method_name(r.method);
  j["x"] = r.x;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  if (r.method == Method::Algorithm1) j["outer_guesses"] = r.outer_guesses;
  j["error_bound"] = r.error_bound ? ojson(*r.error_bound) : ojson(nullptr);
  j["certificate"] = certificate_json(r.certificate);
  j["notes"] = r.notes;
  return j;
}

ojson probe_json(const ProbeResult& p) {
  ojson j;
  if (std::holds_alternative<Unique>(p)) {
    j["result"] = "unique";
    return j;
  }
  const auto& c = std::get<MultiplicityCertificate>(p);
  j["result"] = "multiple";
  j["scc"] = one_based(c.scc);
  j["direction"] = c.direction;
  j["t_range"] = {finite_or_null(c.t_lo), finite_or_null(c.t_hi)};
  j["witness_t"] = c.witness_t;
  j["witness"] = c.witness;
  j["witness_residual"] = c.witness_residual;
  j["affected"] = one_based(c.affected);
  return j;
}

ojson enumeration_json(const EquilibriumSet& s) {
  ojson j;
  j["points"] = s.points;
  auto fams = ojson::array();
  for (const auto& f : s.families) {
    ojson fj;
    std::string pat;
    for (Tag t : f.pattern) pat += t == Tag::Upper ? 'U' : t == Tag::Lower ? 'L' : 'I';
    fj["pattern"] = pat;
    fj["base"] = f.base;
    fj["directions"] = f.directions;
    fj["t_range"] = f.t_hi ? ojson{*f.t_lo, *f.t_hi} : ojson(nullptr);
    fams.push_back(fj);
  }
  j["families"] = fams;
  j["multiple"] = s.multiple();
  return j;
}

Vector parse_csv(const std::string& text, const std::string& what) {
  Vector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Usage, what + ": cannot read '" + item + "' as a number");
    }
    if (!std::isfinite(v.back())) throw Error(ErrorCode::Usage, what + ": values must be finite");
  }
  return v;
}

double max_dev(const Vector& a, const Vector& b) { return max_abs_diff(a, b); }

// ---------------------------------------------------------------------------
// commands

struct SolveArgs {
  std::string method = "auto";
  double tol = 1e-10;
  std::size_t max_iter = 1'000'000;
  std::string x0;
};

SolveReport solve_with(const Document& doc, const SolveArgs& a, const Log& log) {
  const Network& net = doc.network;
  SolveOptions opt{a.tol, a.max_iter};
  std::string method = a.method;
  if (method == "auto") {
    if (classify(net).contracting) method = "banach";
    else if (algorithm1_eligible(net)) method = "algorithm1";
    else method = "tarski-above";
    log(Level::Info, "method auto chose " + method);
  }
  if (method == "banach") {
    Vector x0 = a.x0.empty() ? Vector(net.size(), 0.0) : parse_csv(a.x0, "--x0");
    return solve_banach(net, x0, opt);
  }
  if (method == "tarski-above") return solve_tarski(net, Direction::Above, opt, doc.lattice);
  if (method == "tarski-below") return solve_tarski(net, Direction::Below, opt, doc.lattice);
  if (method == "algorithm1") return solve_algorithm1(net, a.tol);
  throw Error(ErrorCode::Usage, "unknown method '" + method + "'");
}

Output cmd_classify(const Document& doc) {
  const Network& net = doc.network;
  const auto cls = classify(net);
  const auto meta = network_metadata(net);
  const auto cert = uniqueness_certificate(net);
  Output o;
  o.report["command"] = "classify";
  o.report["n"] = net.size();
  o.report["contracting"] = cls.contracting;
  o.report["modulus"] = cls.modulus ? ojson(*cls.modulus) : ojson(nullptr);
  o.report["noncontracting"] = cls.noncontracting;
  o.report["neither"] = cls.neither;
  o.report["monotone"] = meta.monotone;
  o.report["bounded"] = meta.bounded;
  o.report["beta"] = meta.beta ? ojson(*meta.beta) : ojson(nullptr);
  o.report["certificate"] = certificate_json(cert);
  o.header = {"field", "value"};
  o.rows = {{"contracting", cls.contracting ? "true" : "false"},
            {"modulus", cls.modulus ? fmt(*cls.modulus) : ""},
            {"noncontracting", cls.noncontracting ? "true" : "false"},
            {"neither", cls.neither ? "true" : "false"},
            {"certificate", certificate_name(cert)}};
  return o;
}

Output cmd_solve(const Document& doc, const SolveArgs& a, const Log& log) {
  const auto rep = solve_with(doc, a, log);
  Output o;
  o.report["command"] = "solve";
  o.report.update(solve_json(rep));
  o.header = {"agent", "x"};
  vector_rows(o, {&rep.x});
  return o;
}

Output cmd_probe(const Document& doc, double tol, const Log& log) {
  SolveArgs a;
  a.tol = std::min(1e-10, tol / 10.0);
  const auto rep = solve_with(doc, a, log);
  const auto probe = multiplicity_probe(doc.network, rep.x, tol);
  Output o;
  o.report["command"] = "probe";
  o.report["x"] = rep.x;
  o.report["method"] = method_name(rep.method);
  o.report.update(probe_json(probe));
  o.header = {"agent", "x", "direction", "witness"};
  if (const auto* c = std::get_if<MultiplicityCertificate>(&probe))
    vector_rows(o, {&rep.x, &c->direction, &c->witness});
  else
    vector_rows(o, {&rep.x, nullptr, nullptr});
  return o;
}

Output cmd_enumerate(const Document& doc, double tol) {
  const auto set = enumerate_equilibria(doc.network, tol);
  Output o;
  o.report["command"] = "enumerate";
  o.report.update(enumeration_json(set));
  o.header = {"kind", "id", "agent", "value"};
  for (std::size_t k = 0; k < set.points.size(); ++k)
    for (std::size_t j = 0; j < set.points[k].size(); ++j)
      o.rows.push_back({"point", std::to_string(k + 1), std::to_string(j + 1), fmt(set.points[k][j])});
  for (std::size_t k = 0; k < set.families.size(); ++k) {
    const auto& f = set.families[k];
    for (std::size_t j = 0; j < f.base.size(); ++j)
      o.rows.push_back({"family_base", std::to_string(k + 1), std::to_string(j + 1), fmt(f.base[j])});
    for (const auto& d : f.directions)
      for (std::size_t j = 0; j < d.size(); ++j)
        o.rows.push_back({"family_direction", std::to_string(k + 1), std::to_string(j + 1), fmt(d[j])});
  }
  return o;
}

Output cmd_keyplayer(const Document& doc, std::optional<double> alpha, const Log& log) {
  const auto rep = solve_with(doc, SolveArgs{}, log);
  const auto imp = impact_measure(doc.network, rep.x);
  Output o;
  o.report["command"] = "keyplayer";
  o.report["x"] = rep.x;
  o.report["sigma"] = imp.sigma;
  o.report["key_player"] = imp.key_player + 1;
  o.report["stability_certified"] = imp.stability_certified;
  o.report["kinks"] = one_based(imp.kinks);
  o.report["notes"] = imp.notes;
  std::optional<Vector> hub, auth;
  if (alpha) {
    hub = katz_centrality(doc.network.w(), *alpha, KatzSide::Hub);
    auth = katz_centrality(doc.network.w(), *alpha, KatzSide::Authority);
    o.report["katz_alpha"] = *alpha;
    o.report["katz_hub"] = *hub;
    o.report["katz_authority"] = *auth;
  }
  o.header = {"agent", "x", "sigma", "katz_hub", "katz_authority"};
  vector_rows(o, {&rep.x, &imp.sigma, hub ? &*hub : nullptr, auth ? &*auth : nullptr});
  return o;
}

struct RateArgs {
  std::string sampler;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> support;
  std::string lower, upper;
  double tol = 1e-9;
};

Output cmd_rate(const Document& doc, const RateArgs& a) {
  const std::size_t n = doc.network.size();
  ShockSampler sampler;
  if (a.sampler == "continuous") {
    ContinuousUniform c{a.lower.empty() ? Vector(n, -1.0) : parse_csv(a.lower, "--lower"),
                        a.upper.empty() ? Vector(n, 1.0) : parse_csv(a.upper, "--upper")};
    sampler = c;
  } else {
    DiscreteUniform d;
    for (const auto& s : a.support) d.support.push_back(parse_csv(s, "--support"));
    if (d.support.empty()) throw Error(ErrorCode::Usage, "--sampler discrete needs --support points");
    sampler = d;
  }
  const auto r = multiplicity_rate(doc.network, sampler, a.trials, a.seed, a.tol);
  Output o;
  o.report["command"] = "rate";
  o.report["sampler"] = a.sampler;
  o.report["trials"] = r.trials;
  o.report["multiple"] = r.multiple;
  o.report["fraction"] = r.fraction;
  o.report["seed"] = r.seed;
  o.header = {"trials", "multiple", "fraction", "seed"};
  o.rows = {{std::to_string(r.trials), std::to_string(r.multiple), fmt(r.fraction), std::to_string(r.seed)}};
  return o;
}

// ---------------------------------------------------------------------------
// demos

Output demo_comparative(char v) {
  const Network net = demos::comparative(v);
  const Vector expected = demos::comparative_expected(v);
  const auto rep = solve_tarski(net, Direction::Above, SolveOptions{1e-12, 1'000'000});
  Output o;
  o.report["demo"] = std::string("comparative-") + v;
  o.report.update(solve_json(rep));
  o.report["expected"] = expected;
  o.report["max_deviation"] = max_dev(rep.x, expected);
  o.header = {"agent", "x", "expected"};
  vector_rows(o, {&rep.x, &expected});
  return o;
}

Output demo_seven_node() {
  const Network net = demos::seven_node();
  const std::size_t n = net.size();
  const Vector expected = demos::seven_node_expected();
  const auto rep = solve_algorithm1(net, 1e-12);
  Vector l(n), u(n);
  for (std::size_t j = 0; j < n; ++j) {
    l[j] = net.function(j).clamped()->lower;
    u[j] = net.function(j).clamped()->upper;
  }
  VertexSet b_low, a_up;
  const Vector in_l = net.inputs(l), in_u = net.inputs(u);
  for (std::size_t j = 0; j < n; ++j) {
    if (in_l[j] <= l[j]) b_low.push_back(j);
    if (in_u[j] >= u[j]) a_up.push_back(j);
  }
  const auto oracle = enumerate_equilibria(net, 1e-12);
  Output o;
  o.report["demo"] = "seven-node";
  o.report.update(solve_json(rep));
  o.report["inner_iteration_bound"] = n << (n - 1);
  o.report["B_lower"] = one_based(b_low);
  o.report["A_upper"] = one_based(a_up);
  o.report["expected"] = expected;
  o.report["max_deviation"] = max_dev(rep.x, expected);
  o.report["oracle_points"] = oracle.points.size();
  o.report["oracle_families"] = oracle.families.size();
  if (oracle.points.size() == 1) o.report["oracle_deviation"] = max_dev(rep.x, oracle.points.front());
  o.report["lp_verified"] = lp_verify(net, rep.x, 1e-9);
  o.header = {"agent", "x", "expected"};
  vector_rows(o, {&rep.x, &expected});
  return o;
}

Output demo_example_3_1() {
  const Network net = demos::example_3_1();
  const SolveOptions opt{1e-12, 1'000'000};
  const auto above = solve_tarski(net, Direction::Above, opt);
  const auto below = solve_tarski(net, Direction::Below, opt);
  const auto probe = multiplicity_probe(net, above.x, 1e-9);
  const auto set = enumerate_equilibria(net, 1e-9);
  const auto lin = linear_system_solvability(net.w(), net.shock());
  Output o;
  o.report["demo"] = "example-3-1";
  o.report["greatest"] = above.x;
  o.report["least"] = below.x;
  o.report["certificate"] = certificate_json(uniqueness_certificate(net));
  o.report["probe"] = probe_json(probe);
  o.report["enumeration"] = enumeration_json(set);
  o.report["linear_system"] = std::holds_alternative<Solvable>(lin)     ? "solvable"
                              : std::holds_alternative<Unsolvable>(lin) ? "unsolvable"
                                                                         : "underdetermined";
  o.header = {"agent", "greatest", "least"};
  vector_rows(o, {&above.x, &below.x});
  return o;
}

Output demo_spectral_tightness() {
  const Network net = demos::spectral_tightness();
  const auto cls = classify(net);
  const auto set = enumerate_equilibria(net, 1e-9);
  ojson orbit = ojson::array();
  Vector x{0.0, 5.0};
  for (int k = 0; k < 5; ++k) {
    orbit.push_back(x);
    x = net.apply(x);
  }
  Output o;
  o.report["demo"] = "spectral-tightness";
  o.report["modulus"] = cls.modulus ? ojson(*cls.modulus) : ojson(nullptr);
  o.report["contracting"] = cls.contracting;
  o.report["equilibria"] = set.points;
  o.report["orbit_from_0_5"] = orbit;
  o.header = {"point", "agent", "x"};
  for (std::size_t k = 0; k < set.points.size(); ++k)
    for (std::size_t j = 0; j < set.points[k].size(); ++j)
      o.rows.push_back({std::to_string(k + 1), std::to_string(j + 1), fmt(set.points[k][j])});
  return o;
}

Output cmd_demo(const std::string& name, bool document) {
  const auto net = demos::by_name(name);
  if (!net) throw Error(ErrorCode::Usage, "unknown demo '" + name + "'");
  if (document) {
    Output o;
    o.report = network_document(*net);
    return o;
  }
  if (name == "example-3-1") return demo_example_3_1();
  if (name == "seven-node") return demo_seven_node();
  if (name == "spectral-tightness") return demo_spectral_tightness();
  return demo_comparative(name.back());
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::Usage:
    case ErrorCode::InvalidParameter:
    case ErrorCode::DimensionMismatch:
      return 1;
    case ErrorCode::NotContracting:
    case ErrorCode::MaxIterations:
    case ErrorCode::NoEquilibriumFound:
    case ErrorCode::NoConvergence:
      return 2;
    default:
      return 3;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Log log(err);
  CLI::App app{"Equilibria of networked interaction systems x = f(xW + e)", "netequil"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));

  std::string file;
  SolveArgs solve_args;
  double tol = 1e-9;
  std::optional<double> alpha;
  RateArgs rate_args;
  std::string demo_name;
  bool demo_document = false;

  auto* classify_cmd = app.add_subcommand("classify", "Classify the network and look for a uniqueness certificate");
  classify_cmd->add_option("file", file, "NetworkDocument JSON")->required();

  auto* solve_cmd = app.add_subcommand("solve", "Compute an equilibrium");
  solve_cmd->add_option("file", file, "NetworkDocument JSON")->required();
  solve_cmd->add_option("--method", solve_args.method, "auto|banach|tarski-above|tarski-below|algorithm1")
      ->check(CLI::IsMember({"auto", "banach", "tarski-above", "tarski-below", "algorithm1"}));
  solve_cmd->add_option("--tol", solve_args.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-iter", solve_args.max_iter, "Iteration cap");
  solve_cmd->add_option("--x0", solve_args.x0, "Banach starting point, comma separated");

  auto* probe_cmd = app.add_subcommand("probe", "Solve, then look for a second equilibrium");
  probe_cmd->add_option("file", file, "NetworkDocument JSON")->required();
  probe_cmd->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);

  auto* enum_cmd = app.add_subcommand("enumerate", "List every equilibrium of a clamp network (n <= 12)");
  enum_cmd->add_option("file", file, "NetworkDocument JSON")->required();
  enum_cmd->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);

  auto* key_cmd = app.add_subcommand("keyplayer", "Total impact measure and key player");
  key_cmd->add_option("file", file, "NetworkDocument JSON")->required();
  key_cmd->add_option("--alpha", alpha, "Also report Katz centralities with this alpha");

  auto* rate_cmd = app.add_subcommand("rate", "Empirical multiplicity rate under random shocks");
  rate_cmd->add_option("file", file, "NetworkDocument JSON")->required();
  rate_cmd->add_option("--sampler", rate_args.sampler, "continuous|discrete")
      ->required()
      ->check(CLI::IsMember({"continuous", "discrete"}));
  rate_cmd->add_option("--trials", rate_args.trials, "Number of draws")->required()->check(CLI::PositiveNumber);
  rate_cmd->add_option("--seed", rate_args.seed, "Generator seed")->required();
  rate_cmd->add_option("--support", rate_args.support, "Discrete support points, each comma separated");
  rate_cmd->add_option("--lower", rate_args.lower, "Continuous box lower corner (default -1)");
  rate_cmd->add_option("--upper", rate_args.upper, "Continuous box upper corner (default 1)");
  rate_cmd->add_option("--tol", rate_args.tol, "Tolerance")->check(CLI::PositiveNumber);

  auto* demo_cmd = app.add_subcommand("demo", "Run a built-in worked example");
  demo_cmd->add_option("name", demo_name, "Demo name")->required()->check(CLI::IsMember(demos::names()));
  demo_cmd->add_flag("--document", demo_document, "Print the demo network as a NetworkDocument");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    Output o;
    if (*demo_cmd) {
      o = cmd_demo(demo_name, demo_document);
    } else {
      const Document doc = load_document(file);
      log(Level::Debug, "loaded " + file + " with n = " + std::to_string(doc.network.size()));
      if (*classify_cmd) o = cmd_classify(doc);
      else if (*solve_cmd) o = cmd_solve(doc, solve_args, log);
      else if (*probe_cmd) o = cmd_probe(doc, tol, log);
      else if (*enum_cmd) o = cmd_enumerate(doc, tol);
      else if (*key_cmd) o = cmd_keyplayer(doc, alpha, log);
      else o = cmd_rate(doc, rate_args);
    }
    emit(o, format, out);
    return 0;
  } catch (const Error& e) {
    log(Level::Error, e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    log(Level::Error, e.what());
    return 1;
  }
}

}  // namespace netequil::cli
