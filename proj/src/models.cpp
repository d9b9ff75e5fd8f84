#include <cmath>
#include <string>

#include "netequil/error.hpp"
#include "netequil/matgraph.hpp"
#include "netequil/netmodel.hpp"

namespace netequil {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, field + ": " + why);
}

void require_length(const Vector& v, std::size_t n, const std::string& field) {
  require(v.size() == n, field, "expected length " + std::to_string(n) + ", got " + std::to_string(v.size()));
  for (double x : v) require(std::isfinite(x), field, "entries must be finite");
}

void require_square(const Matrix& m, const std::string& field) {
  require(!m.empty(), field, "matrix is empty");
  require(m.all_finite(), field, "entries must be finite");
}

void require_no_self_loops(const Matrix& m, const std::string& field) {
  for (std::size_t i = 0; i < m.size(); ++i) require(m(i, i) == 0.0, field, "diagonal must be zero");
}

Vector solve_or_not_invertible(const Matrix& a, const Vector& b, const std::string& what) {
  try {
    return linear_solve(a, b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Singular) throw Error(ErrorCode::NotInvertible, what + " is singular");
    throw;
  }
}

std::vector<InteractionFunction> uniform(std::size_t n, const InteractionFunction& f) {
  return std::vector<InteractionFunction>(n, f);
}

std::vector<InteractionFunction> payment_clamps(const Vector& pbar) {
  std::vector<InteractionFunction> f;
  for (double p : pbar) f.push_back(ClampedAffine{0.0, 1.0, 0.0, p});
  return f;
}

Matrix column_shares_checked(const Production& s) {
  require_square(s.shares, "shares");
  require(s.shares.is_nonnegative(), "shares", "entries must be nonnegative");
  const Vector cs = s.shares.column_sums();
  for (std::size_t j = 0; j < cs.size(); ++j)
    require(std::fabs(cs[j] - 1.0) <= 1e-9, "shares", "column " + std::to_string(j + 1) + " must sum to one");
  return s.shares;
}

// --- builders --------------------------------------------------------------

Network build(const InputOutput& s) {
  require_square(s.w, "W");
  require(s.w.is_nonnegative(), "W", "input coefficients must be nonnegative");
  require_length(s.final_demand, s.w.size(), "final_demand");
  return Network(s.w, uniform(s.w.size(), InteractionFunction::identity()), s.final_demand);
}

Network build(const Production& s) {
  require(s.alpha > 0.0 && s.alpha < 1.0, "alpha", "labor share must lie in (0,1)");
  const Matrix w = column_shares_checked(s);
  const std::size_t n = w.size();
  Vector eps;
  if (s.epsilon) {
    require_length(*s.epsilon, n, "epsilon");
    eps = *s.epsilon;
  } else {
    require_length(s.log_productivity, n, "log_productivity");
    const Vector mu = production_mu(s.alpha, w);
    eps.resize(n);
    for (std::size_t j = 0; j < n; ++j) eps[j] = (mu[j] + s.alpha * s.log_productivity[j]) / (1.0 - s.alpha);
  }
  return Network(w, uniform(n, InteractionFunction::linear(1.0 - s.alpha)), eps);
}

Network build(const SimpleGame& s) {
  require(s.phi > 0.0 && std::isfinite(s.phi), "phi", "must be positive");
  require_square(s.g, "G");
  require(s.g.is_nonnegative(), "G", "adjacency must be nonnegative");
  require_no_self_loops(s.g, "G");
  require_length(s.alpha, s.g.size(), "alpha");
  Vector eps(s.alpha.size());
  for (std::size_t j = 0; j < eps.size(); ++j) {
    require(s.alpha[j] > 0.0, "alpha", "characteristics must be positive");
    eps[j] = s.alpha[j] / s.phi;
  }
  return Network(s.g, uniform(s.g.size(), InteractionFunction::linear(s.phi)), eps);
}

Matrix global_local_w(const GlobalLocalGame& s) {
  const std::size_t n = s.g.size();
  Matrix w = s.g;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) -= s.gamma / s.phi;
  return w;
}

Network build(const GlobalLocalGame& s) {
  require(s.eta > 0.0 && std::isfinite(s.eta), "eta", "must be positive");
  require(s.phi > 0.0 && std::isfinite(s.phi), "phi", "must be positive");
  require(s.gamma >= 0.0 && std::isfinite(s.gamma), "gamma", "must be nonnegative");
  require_square(s.g, "G");
  require(s.g.is_nonnegative(), "G", "adjacency must be nonnegative");
  require_no_self_loops(s.g, "G");
  require_length(s.alpha, s.g.size(), "alpha");
  Vector eps(s.alpha.size());
  for (std::size_t j = 0; j < eps.size(); ++j) {
    require(s.alpha[j] > 0.0, "alpha", "characteristics must be positive");
    eps[j] = s.alpha[j] / s.phi;
  }
  return Network(global_local_w(s), uniform(s.g.size(), InteractionFunction::linear(s.phi / s.eta)), eps);
}

Matrix interbank_w(const InterbankGame& s) {
  Matrix w = s.g;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) w(i, j) -= 1.0;
  return w;
}

Network build(const InterbankGame& s) {
  require(s.theta > 0.0 && std::isfinite(s.theta), "theta", "must be positive");
  require_square(s.g, "G");
  require(s.g.is_nonnegative(), "G", "adjacency must be nonnegative");
  const std::size_t n = s.g.size();
  require_length(s.c0, n, "c0");
  require_length(s.phi, n, "phi");
  std::vector<InteractionFunction> f;
  Vector eps(n);
  for (std::size_t j = 0; j < n; ++j) {
    require(s.c0[j] > 0.0, "c0", "marginal costs must be positive");
    require(s.phi[j] > 0.0, "phi", "cost cuts must be positive");
    eps[j] = (s.theta - s.c0[j]) / s.phi[j];
    f.push_back(InteractionFunction::linear(s.phi[j]));
  }
  return Network(interbank_w(s), std::move(f), eps);
}

Vector cross_holding_shock(const CrossHoldings& s) {
  const std::size_t n = s.w.size();
  require(s.holdings.size() == s.prices.size(), "holdings", "need one row per primitive asset");
  Vector eps(n, 0.0);
  for (std::size_t h = 0; h < s.prices.size(); ++h) {
    require(std::isfinite(s.prices[h]) && s.prices[h] >= 0.0, "prices", "must be finite and nonnegative");
    require_length(s.holdings[h], n, "holdings");
    for (std::size_t j = 0; j < n; ++j) {
      require(s.holdings[h][j] >= 0.0, "holdings", "shares must be nonnegative");
      eps[j] += s.prices[h] * s.holdings[h][j];
    }
  }
  return eps;
}

Network build(const CrossHoldings& s) {
  require_square(s.w, "W");
  require(s.w.is_nonnegative(), "W", "cross-holdings must be nonnegative");
  require_no_self_loops(s.w, "W");
  const Vector rs = s.w.row_sums();
  for (std::size_t i = 0; i < rs.size(); ++i)
    require(rs[i] < 1.0, "W", "outside investors must hold a positive share of organization " + std::to_string(i + 1));
  return Network(s.w, uniform(s.w.size(), InteractionFunction::identity()), cross_holding_shock(s));
}

Network build(const EisenbergNoe& s) {
  require_square(s.liabilities, "liabilities");
  require(s.liabilities.is_nonnegative(), "liabilities", "must be nonnegative");
  const std::size_t n = s.liabilities.size();
  require_length(s.cash, n, "cash");
  for (double c : s.cash) require(c >= 0.0, "cash", "must be nonnegative");
  const Vector pbar = s.liabilities.row_sums();
  Matrix w(n);
  for (std::size_t i = 0; i < n; ++i)
    if (pbar[i] > 0.0)
      for (std::size_t j = 0; j < n; ++j) w(i, j) = s.liabilities(i, j) / pbar[i];
  return Network(w, payment_clamps(pbar), s.cash);
}

void require_payment_vector(const Vector& pbar, std::size_t n) {
  require_length(pbar, n, "pbar");
  for (double p : pbar) require(p >= 0.0, "pbar", "total obligations must be nonnegative");
}

Network build(const GeneralizedEN& s) {
  require_square(s.w, "W");
  require(s.w.is_nonnegative(), "W", "relative liabilities must be nonnegative");
  require_payment_vector(s.pbar, s.w.size());
  require_length(s.epsilon, s.w.size(), "epsilon");
  return Network(s.w, payment_clamps(s.pbar), s.epsilon);
}

Network build(const BankruptcyCost& s) {
  require_square(s.w, "W");
  require(s.w.is_nonnegative(), "W", "relative liabilities must be nonnegative");
  const std::size_t n = s.w.size();
  require_payment_vector(s.pbar, n);
  require_length(s.alpha, n, "alpha");
  require_length(s.epsilon, n, "epsilon");
  std::vector<InteractionFunction> f;
  for (std::size_t j = 0; j < n; ++j) {
    require(s.alpha[j] >= 0.0, "alpha", "bankruptcy cost rates must be nonnegative");
    f.push_back(ClampedAffine{-s.alpha[j] * s.pbar[j], 1.0 + s.alpha[j], 0.0, s.pbar[j]});
  }
  return Network(s.w, std::move(f), s.epsilon);
}

Network build(const RogersVeraartNet& s) {
  require_square(s.w, "W");
  require(s.w.is_nonnegative(), "W", "relative liabilities must be nonnegative");
  require(s.alpha > 0.0 && s.alpha < 1.0, "alpha", "must lie in (0,1)");
  require(s.beta > 0.0 && s.beta < 1.0, "beta", "must lie in (0,1)");
  const std::size_t n = s.w.size();
  require_length(s.pbar, n, "pbar");
  require_length(s.epsilon, n, "epsilon");
  std::vector<InteractionFunction> f;
  Vector e(n);
  for (std::size_t j = 0; j < n; ++j) {
    require(s.pbar[j] > 0.0, "pbar", "must be positive");
    require(s.epsilon[j] >= 0.0, "epsilon", "external assets must be nonnegative");
    const double q = s.pbar[j] + (s.alpha / s.beta - 1.0) * s.epsilon[j];
    e[j] = s.alpha * s.epsilon[j] / s.beta;
    f.push_back(RogersVeraart{s.beta, q, s.pbar[j]});
  }
  return Network(s.w, std::move(f), e);
}

Network build(const MaturityEN& s) {
  require_square(s.w, "W");
  require(s.w.is_nonnegative(), "W", "relative liabilities must be nonnegative");
  const std::size_t n = s.w.size();
  require_payment_vector(s.pbar, n);
  require_length(s.net_remainder, n, "net_remainder");
  require_length(s.epsilon, n, "epsilon");
  std::vector<InteractionFunction> f;
  for (std::size_t j = 0; j < n; ++j) {
    const double shift = s.net_remainder[j] >= 0.0 ? 0.0 : s.net_remainder[j];
    f.push_back(ClampedAffine{shift, 1.0, 0.0, s.pbar[j]});
  }
  return Network(s.w, std::move(f), s.epsilon);
}

// --- closed forms ------------------------------------------------------------

Vector closed(const InputOutput& s) {
  const Network net = build(s);
  if (spectral_radius(s.w) >= 1.0 - kSpectralUnitTol)
    throw Error(ErrorCode::NotInvertible, "Leontief condition r(W) < 1 fails");
  return solve_or_not_invertible(Matrix::identity(s.w.size()) - s.w, s.final_demand, "I - W");
}

Vector closed(const Production& s) {
  const Network net = build(s);
  const double keep = 1.0 - s.alpha;
  Vector rhs = net.shock();
  for (double& v : rhs) v *= keep;
  return solve_or_not_invertible(Matrix::identity(net.size()) - net.w().scaled(keep), rhs, "I - (1-alpha)W");
}

Vector closed(const SimpleGame& s) {
  build(s);
  if (s.phi * spectral_radius(s.g) >= 1.0 - kSpectralUnitTol)
    throw Error(ErrorCode::NotInvertible, "phi r(G) < 1 fails");
  return solve_or_not_invertible(Matrix::identity(s.g.size()) - s.g.scaled(s.phi), s.alpha, "I - phi G");
}

Vector closed(const GlobalLocalGame& s) {
  build(s);
  const std::size_t n = s.g.size();
  Matrix a(n, s.gamma);
  for (std::size_t i = 0; i < n; ++i) a(i, i) += s.eta;
  return solve_or_not_invertible(a - s.g.scaled(s.phi), s.alpha, "eta I + gamma J - phi G");
}

Vector closed(const InterbankGame& s) {
  const Network net = build(s);
  const Vector rhs = hadamard(net.shock(), s.phi);
  return solve_or_not_invertible(Matrix::identity(net.size()) - net.w().scale_columns(s.phi), rhs,
                                 "I - W diag(phi)");
}

Vector closed(const CrossHoldings& s) {
  const Network net = build(s);
  return solve_or_not_invertible(Matrix::identity(net.size()) - s.w, net.shock(), "I - W");
}

}  // namespace

std::string family_name(const ModelSpec& spec) {
  return std::visit(overloaded{
                        [](const InputOutput&) { return std::string("input_output"); },
                        [](const Production&) { return std::string("production"); },
                        [](const SimpleGame&) { return std::string("simple_game"); },
                        [](const GlobalLocalGame&) { return std::string("global_local_game"); },
                        [](const InterbankGame&) { return std::string("interbank_game"); },
                        [](const CrossHoldings&) { return std::string("cross_holdings"); },
                        [](const EisenbergNoe&) { return std::string("eisenberg_noe"); },
                        [](const GeneralizedEN&) { return std::string("generalized_en"); },
                        [](const BankruptcyCost&) { return std::string("bankruptcy_cost"); },
                        [](const RogersVeraartNet&) { return std::string("rogers_veraart"); },
                        [](const MaturityEN&) { return std::string("maturity_en"); },
                    },
                    spec);
}

Network build_network(const ModelSpec& spec) {
  return std::visit([](const auto& s) { return build(s); }, spec);
}

Vector closed_form_equilibrium(const ModelSpec& spec) {
  return std::visit(overloaded{
                        [](const InputOutput& s) { return closed(s); },
                        [](const Production& s) { return closed(s); },
                        [](const SimpleGame& s) { return closed(s); },
                        [](const GlobalLocalGame& s) { return closed(s); },
                        [](const InterbankGame& s) { return closed(s); },
                        [](const CrossHoldings& s) { return closed(s); },
                        [&spec](const auto&) -> Vector {
                          throw Error(ErrorCode::Unsupported,
                                      "no linear closed form for family " + family_name(spec));
                        },
                    },
                    spec);
}

Vector production_mu(double alpha, const Matrix& shares) {
  const std::size_t n = shares.size();
  const double keep = 1.0 - alpha;
  // b = 1 [I − (1−α) W^T]^{-1}
  const Vector b = solve_or_not_invertible(Matrix::identity(n) - shares.transpose().scaled(keep), Vector(n, 1.0),
                                           "I - (1-alpha) W^T");
  const double nn = static_cast<double>(n);
  Vector mu(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = std::log(b[j] * std::pow(alpha / nn, alpha) * std::pow(keep, keep));
    for (std::size_t i = 0; i < n; ++i)
      if (shares(i, j) > 0.0) acc += keep * shares(i, j) * std::log(shares(i, j) / b[i]);
    mu[j] = acc;
  }
  return mu;
}

}  // namespace netequil
