#include <cmath>
#include <fstream>
#include <sstream>

#include "netequil/document.hpp"
#include "netequil/error.hpp"

namespace netequil {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& why) {
  throw Error(ErrorCode::Parse, where + ": " + why);
}

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing field '" + key + "'");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "number is not finite");
  return v;
}

// null means an infinite clamp
double bound(const json& j, double if_null, const std::string& where) {
  if (j.is_null()) return if_null;
  return number(j, where);
}

Vector vec(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

Matrix mat(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of rows");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vec(j[i], where + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != j.size()) fail(where, "matrix must be square");
  }
  return Matrix::from_rows(rows);
}

double num_field(const json& j, const std::string& key, const std::string& where) {
  return number(field(j, key, where), where + "." + key);
}
Vector vec_field(const json& j, const std::string& key, const std::string& where) {
  return vec(field(j, key, where), where + "." + key);
}
Matrix mat_field(const json& j, const std::string& key, const std::string& where) {
  return mat(field(j, key, where), where + "." + key);
}

InteractionFunction parse_function(const json& j, const std::string& where) {
  const json& kind = field(j, "kind", where);
  if (!kind.is_string()) fail(where + ".kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "clamped_affine") {
    ClampedAffine f;
    if (j.contains("offset")) f.offset = number(j["offset"], where + ".offset");
    if (j.contains("gain")) f.gain = number(j["gain"], where + ".gain");
    if (j.contains("lower")) f.lower = bound(j["lower"], -kInf, where + ".lower");
    if (j.contains("upper")) f.upper = bound(j["upper"], kInf, where + ".upper");
    return f;
  }
  if (k == "rogers_veraart") {
    return RogersVeraart{num_field(j, "beta", where), num_field(j, "threshold", where), num_field(j, "cap", where)};
  }
  fail(where + ".kind", "unknown function kind '" + k + "'");
}

ModelSpec parse_model(const json& j) {
  const std::string where = "model";
  const json& fam = field(j, "family", where);
  if (!fam.is_string()) fail("model.family", "expected a string");
  const std::string f = fam.get<std::string>();
  if (f == "input_output") return InputOutput{mat_field(j, "W", where), vec_field(j, "final_demand", where)};
  if (f == "production") {
    Production p;
    p.alpha = num_field(j, "alpha", where);
    p.shares = mat_field(j, "shares", where);
    if (j.contains("log_productivity")) p.log_productivity = vec_field(j, "log_productivity", where);
    if (j.contains("epsilon")) p.epsilon = vec_field(j, "epsilon", where);
    if (!j.contains("log_productivity") && !p.epsilon) fail(where, "production needs log_productivity or epsilon");
    return p;
  }
  if (f == "simple_game")
    return SimpleGame{num_field(j, "phi", where), mat_field(j, "G", where), vec_field(j, "alpha", where)};
  if (f == "global_local_game")
    return GlobalLocalGame{num_field(j, "eta", where), num_field(j, "gamma", where), num_field(j, "phi", where),
                           mat_field(j, "G", where), vec_field(j, "alpha", where)};
  if (f == "interbank_game")
    return InterbankGame{num_field(j, "theta", where), vec_field(j, "c0", where), vec_field(j, "phi", where),
                         mat_field(j, "G", where)};
  if (f == "cross_holdings") {
    CrossHoldings c{mat_field(j, "W", where), vec_field(j, "prices", where), {}};
    const json& h = field(j, "holdings", where);
    if (!h.is_array()) fail("model.holdings", "expected an array of rows");
    for (std::size_t i = 0; i < h.size(); ++i) c.holdings.push_back(vec(h[i], "model.holdings[" + std::to_string(i) + "]"));
    return c;
  }
  if (f == "eisenberg_noe") return EisenbergNoe{mat_field(j, "liabilities", where), vec_field(j, "cash", where)};
  if (f == "generalized_en")
    return GeneralizedEN{mat_field(j, "W", where), vec_field(j, "pbar", where), vec_field(j, "epsilon", where)};
  if (f == "bankruptcy_cost")
    return BankruptcyCost{mat_field(j, "W", where), vec_field(j, "alpha", where), vec_field(j, "pbar", where),
                          vec_field(j, "epsilon", where)};
  if (f == "rogers_veraart")
    return RogersVeraartNet{mat_field(j, "W", where), num_field(j, "alpha", where), num_field(j, "beta", where),
                            vec_field(j, "pbar", where), vec_field(j, "epsilon", where)};
  if (f == "maturity_en")
    return MaturityEN{mat_field(j, "W", where), vec_field(j, "pbar", where), vec_field(j, "net_remainder", where),
                      vec_field(j, "epsilon", where)};
  fail("model.family", "unknown family '" + f + "'");
}

}  // namespace

Document parse_document(const json& j) {
  if (!j.is_object()) fail("document", "expected a JSON object");
  const json& ver = field(j, "schema_version", "document");
  if (!ver.is_string() || ver.get<std::string>() != "1") fail("schema_version", "only version \"1\" is supported");

  const bool raw = j.contains("W") || j.contains("shock") || j.contains("functions");
  const bool model = j.contains("model");
  if (raw == model) fail("document", "give either W, shock and functions, or a model block");

  std::optional<Lattice> lattice;
  if (j.contains("lattice")) {
    const json& l = j["lattice"];
    lattice = Lattice{vec_field(l, "lower", "lattice"), vec_field(l, "upper", "lattice")};
  }

  if (model) {
    ModelSpec spec = parse_model(j["model"]);
    return Document{build_network(spec), lattice, std::move(spec)};
  }

  Matrix w = mat_field(j, "W", "document");
  Vector shock = vec_field(j, "shock", "document");
  const json& fs = field(j, "functions", "document");
  if (!fs.is_array()) fail("functions", "expected an array");
  std::vector<InteractionFunction> functions;
  for (std::size_t i = 0; i < fs.size(); ++i) functions.push_back(parse_function(fs[i], "functions[" + std::to_string(i) + "]"));
  if (j.contains("n")) {
    const json& n = j["n"];
    if (!n.is_number_integer() || n.get<long long>() != static_cast<long long>(w.size()))
      fail("n", "does not match the size of W");
  }
  if (shock.size() != w.size()) fail("shock", "length differs from W");
  if (functions.size() != w.size()) fail("functions", "count differs from W");
  if (lattice && (lattice->lower.size() != w.size() || lattice->upper.size() != w.size()))
    fail("lattice", "bounds have the wrong length");
  return Document{Network(std::move(w), std::move(functions), std::move(shock)), lattice, std::nullopt};
}

Document parse_document_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
  return parse_document(j);
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document_text(ss.str());
}

nlohmann::ordered_json to_json(const InteractionFunction& f) {
  nlohmann::ordered_json j;
  if (const auto* c = f.clamped()) {
    j["kind"] = "clamped_affine";
    j["offset"] = c->offset;
    j["gain"] = c->gain;
    j["lower"] = std::isfinite(c->lower) ? nlohmann::ordered_json(c->lower) : nlohmann::ordered_json(nullptr);
    j["upper"] = std::isfinite(c->upper) ? nlohmann::ordered_json(c->upper) : nlohmann::ordered_json(nullptr);
  } else {
    const auto* r = f.rogers_veraart();
    j["kind"] = "rogers_veraart";
    j["beta"] = r->beta;
    j["threshold"] = r->threshold;
    j["cap"] = r->cap;
  }
  return j;
}

nlohmann::ordered_json network_document(const Network& net, const std::optional<Lattice>& lattice) {
  nlohmann::ordered_json j;
  j["schema_version"] = "1";
  j["n"] = net.size();
  j["W"] = net.w().to_rows();
  j["shock"] = net.shock();
  auto fs = nlohmann::ordered_json::array();
  for (const auto& f : net.functions()) fs.push_back(to_json(f));
  j["functions"] = fs;
  if (lattice) j["lattice"] = {{"lower", lattice->lower}, {"upper", lattice->upper}};
  return j;
}

}  // namespace netequil
