#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "netequil/matgraph.hpp"
#include "netequil/netmodel.hpp"

namespace netequil {

// ---------------------------------------------------------------------------
// Certificates

struct ContractionCert {
  double modulus = 0.0;
};
struct WeaklyChainedCert {
  ChainWitness witness;
};
struct AcyclicCert {};
struct ENPositiveCashCert {};
struct NoCertificate {};

using Certificate = std::variant<ContractionCert, WeaklyChainedCert, AcyclicCert, ENPositiveCashCert, NoCertificate>;

std::string certificate_name(const Certificate& c);

struct Classification {
  bool contracting = false;
  std::optional<double> modulus;  // r(|W| diag β) when every f_i is Lipschitz
  bool noncontracting = false;
  bool neither = false;
};

Classification classify(const Network& net);

/// First applicable of Contraction, WeaklyChained, Acyclic, ENPositiveCash.
Certificate uniqueness_certificate(const Network& net);

// ---------------------------------------------------------------------------
// Solvers

enum class Method { Banach, TarskiAbove, TarskiBelow, Algorithm1 };
enum class Direction { Above, Below };

std::string method_name(Method m);

struct SolveOptions {
  double tol = 1e-10;
  std::size_t max_iter = 1'000'000;
};

struct SolveReport {
  Vector x;
  double residual = 0.0;
  Method method = Method::Banach;
  std::size_t iterations = 0;
  std::size_t outer_guesses = 0;
  std::optional<double> error_bound;
  Certificate certificate = NoCertificate{};
  std::vector<std::string> notes;
  VertexSet guess;                      // Algorithm 1: winning P
  std::vector<VertexSet> active_sets;   // Algorithm 1: A_0, A_1, ... for P
};

/// Called after every Banach step with k, ‖x_{k+1} − x_k‖ and the bound
/// ‖M^k‖·‖x_1 − x_0‖.
using BanachObserver = std::function<void(std::size_t k, double step, double bound)>;

SolveReport solve_banach(const Network& net, const Vector& x0, SolveOptions opt = {},
                         const BanachObserver& observer = {});

/// Called with every Tarski iterate, starting with the lattice corner.
using TarskiObserver = std::function<void(std::size_t k, const Vector& x)>;

SolveReport solve_tarski(const Network& net, Direction direction, SolveOptions opt = {},
                         const std::optional<Lattice>& lattice = std::nullopt,
                         const TarskiObserver& observer = {});

/// Bounded-identity networks: unit-gain clamps with finite bounds and a
/// nonnegative substochastic W.
bool algorithm1_eligible(const Network& net);

SolveReport solve_algorithm1(const Network& net, double tol = 1e-10);

double verify_equilibrium(const Network& net, const Vector& x);

bool lp_verify(const Network& net, const Vector& x, double tol);

// ---------------------------------------------------------------------------
// Multiplicity

struct MultiplicityCertificate {
  VertexSet scc;
  Vector direction;  // unit sum on scc, zero elsewhere
  double t_lo = 0.0;
  double t_hi = 0.0;
  Vector witness;
  double witness_t = 0.0;
  double witness_residual = 0.0;
  VertexSet affected;  // reachable from scc
};

struct Unique {};

using ProbeResult = std::variant<Unique, MultiplicityCertificate>;

ProbeResult multiplicity_probe(const Network& net, const Vector& x_star, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Linear system x = xW + ε

struct Solvable {
  Vector x;
};
struct Unsolvable {
  double orthogonality = 0.0;  // ε·e^T
};
struct Underdetermined {
  Vector particular;
  Vector direction;
};

using LinearSolvability = std::variant<Solvable, Unsolvable, Underdetermined>;

LinearSolvability linear_system_solvability(const Matrix& w, const Vector& eps, double tol = 1e-9);

}  // namespace netequil
