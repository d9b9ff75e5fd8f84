#include "netequil/demos.hpp"

#include "netequil/error.hpp"

namespace netequil::demos {
namespace {

std::vector<InteractionFunction> clamps(std::size_t n, double lo, double hi) {
  return std::vector<InteractionFunction>(n, InteractionFunction::bounded_identity(lo, hi));
}

}  // namespace

Network example_3_1(Vector shock) {
  return Network(Matrix{{0, 1}, {1, 0}}, clamps(2, -2.0, 2.0), std::move(shock));
}

Matrix w_a() { return Matrix{{0, 2, 0, 0}, {0.5, 0, 0.5, 0}, {0, 0, 0, 0.8}, {0, 0, 0.8, 0}}; }
Matrix w_b() { return Matrix{{0, 2, 0.1, 0.8}, {0.5, 0, 0.8, 0.1}, {0, 0, 0, 0.9}, {0, 0, 0.9, 0}}; }
Vector shock_a() { return {0.2, -0.6, -0.2, 0.2}; }
Vector shock_b() { return {0.2, 0.0, -0.2, 0.2}; }
std::vector<InteractionFunction> f_a() { return clamps(4, 0.0, 2.0); }
std::vector<InteractionFunction> f_b() { return clamps(4, 0.1, 2.0); }

Network comparative(char variant) {
  switch (variant) {
    case 'a': return Network(w_a(), f_a(), shock_a());
    case 'b': return Network(w_a(), f_b(), shock_a());
    case 'c': return Network(w_b(), f_a(), shock_a());
    case 'd': return Network(w_a(), f_a(), shock_b());
    case 'e': return Network(w_b(), f_b(), shock_b());
  }
  throw Error(ErrorCode::InvalidParameter, std::string("unknown comparative variant '") + variant + "'");
}

Vector comparative_expected(char variant) {
  switch (variant) {
    case 'a': return {0.2, 0, 0, 0.2};
    case 'b': return {0.25, 0.1, 0.1, 0.28};
    case 'c': return {0.2, 0, 0.7579, 1.0421};
    case 'd': return {1.2, 2, 2, 1.8};
    case 'e': return {1.2, 2, 2, 2};
  }
  throw Error(ErrorCode::InvalidParameter, std::string("unknown comparative variant '") + variant + "'");
}

Network seven_node() {
  const Matrix w{{0, 0.4, 0.15, 0, 0.4, 0.05, 0},  {0.4, 0, 0.15, 0.25, 0, 0.2, 0},
                 {0.3, 0.1, 0, 0.25, 0.15, 0.2, 0}, {0, 0, 0, 0, 1, 0, 0},
                 {0, 0, 0, 1, 0, 0, 0},             {0, 0, 0, 0, 0, 0, 1},
                 {0, 0, 0, 0, 0, 1, 0}};
  const Vector u{5, 10, 10, 8, 10, 10, 6};
  std::vector<InteractionFunction> f;
  for (double ui : u) f.push_back(InteractionFunction::bounded_identity(0.0, ui));
  Vector eps{2, 1, -1, 3, 2, -1, -2};
  for (double& e : eps) e *= 1e-5;
  return Network(w, std::move(f), std::move(eps));
}

Vector seven_node_expected() { return {2.857e-5, 2.143e-5, 0, 8, 8.00003, 0, 0}; }

Network spectral_tightness() { return Network(Matrix{{0, 2}, {3, 0}}, clamps(2, 0.0, 5.0), {-6.0, 2.0}); }

std::vector<std::string> names() {
  return {"example-3-1",   "comparative-a", "comparative-b", "comparative-c",
          "comparative-d", "comparative-e", "seven-node",    "spectral-tightness"};
}

std::optional<Network> by_name(const std::string& name) {
  if (name == "example-3-1") return example_3_1();
  if (name.size() == 13 && name.rfind("comparative-", 0) == 0 && name[12] >= 'a' && name[12] <= 'e')
    return comparative(name[12]);
  if (name == "seven-node") return seven_node();
  if (name == "spectral-tightness") return spectral_tightness();
  return std::nullopt;
}

}  // namespace netequil::demos
