#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <variant>

#include "netequil/demos.hpp"
#include "netequil/error.hpp"
#include "netequil/oracle.hpp"
#include "netequil/solver.hpp"
#include "support.hpp"

using namespace netequil;
using testing::Rng;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Usage;
}

Matrix swap2() { return Matrix{{0, 1}, {1, 0}}; }

Network production_net() { return build_network(Production{0.4, swap2(), {0.1, 0.2}, {}}); }

Network en_net(const Matrix& w, const Vector& pbar, const Vector& eps) {
  return build_network(GeneralizedEN{w, pbar, eps});
}

/// Clamp [ℓ, u] with random W ≥ 0 shaved to be row substochastic.
Network random_substochastic_clamps(std::size_t n, Rng& rng) {
  Matrix w = testing::random_row_stochastic(n, rng, 0.5);
  for (std::size_t i = 0; i < n; ++i)
    if (rng.uniform() < 0.3)
      for (std::size_t j = 0; j < n; ++j) w(i, j) *= rng.uniform(0.3, 1.0);
  std::vector<InteractionFunction> f;
  Vector eps(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = rng.uniform(-1, 0.5);
    f.push_back(InteractionFunction::bounded_identity(lo, lo + rng.uniform(0.2, 2)));
    eps[j] = rng.uniform(-1, 1);
  }
  return Network(w, std::move(f), eps);
}

}  // namespace

TEST_SUITE("classify") {
  TEST_CASE("examples") {
    const auto p = classify(production_net());
    CHECK(p.contracting);
    REQUIRE(p.modulus);
    CHECK(*p.modulus == doctest::Approx(0.6).epsilon(1e-9));
    CHECK_FALSE(p.noncontracting);

    const auto en = classify(en_net(Matrix{{0, 0.5, 0.5}, {1, 0, 0}, {0.5, 0.5, 0}}, {1, 1, 1}, {0.1, 0, 0}));
    CHECK(en.noncontracting);
    CHECK_FALSE(en.contracting);

    const auto rv = classify(build_network(RogersVeraartNet{swap2(), 0.5, 0.5, {1, 1}, {0.1, 0.1}}));
    CHECK_FALSE(rv.contracting);
    CHECK_FALSE(rv.noncontracting);
    CHECK(rv.neither);
    CHECK_FALSE(rv.modulus);
  }

  TEST_CASE("certificates") {
    const Certificate c = uniqueness_certificate(production_net());
    REQUIRE(std::holds_alternative<ContractionCert>(c));
    CHECK(std::get<ContractionCert>(c).modulus == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(certificate_name(c) == "Contraction");

    const Matrix stoch{{0, 0.5, 0.5}, {1, 0, 0}, {0.5, 0.5, 0}};
    CHECK(certificate_name(uniqueness_certificate(en_net(stoch, {1, 1, 1}, {1, 0, 0}))) == "ENPositiveCash");
    CHECK(certificate_name(uniqueness_certificate(en_net(stoch, {1, 1, 1}, {0, 0, 0}))) == "NoneFound");
    CHECK(certificate_name(uniqueness_certificate(demos::example_3_1())) == "NoneFound");
    CHECK(certificate_name(uniqueness_certificate(demos::seven_node())) == "NoneFound");

    // Weakly chained implies r(W) < 1, so the certificate only shows up when
    // the modulus sits inside the 1e-9 band below one.
    const Network chain(Matrix{{0, 1}, {0, 1 - 1e-10}}, {InteractionFunction::bounded_identity(0, 1),
                                                         InteractionFunction::bounded_identity(0, 1)},
                        {0, 0});
    const Certificate wc = uniqueness_certificate(chain);
    REQUIRE(std::holds_alternative<WeaklyChainedCert>(wc));
    CHECK(std::get<WeaklyChainedCert>(wc).witness.deficient == VertexSet{1});

    // An acyclic W has modulus zero, so Contraction comes first.
    const Network dag(Matrix{{0, 3}, {0, 0}}, {InteractionFunction::linear(2), InteractionFunction::linear(2)}, {1, 1});
    const Certificate ac = uniqueness_certificate(dag);
    REQUIRE(std::holds_alternative<ContractionCert>(ac));
    CHECK(std::get<ContractionCert>(ac).modulus == 0);
  }

  TEST_CASE("a closed class without cash is not certified") {
    // {1,2} and {3,4} are closed pairs; only the first holds cash.
    const Matrix w{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    const Network net = en_net(w, {1, 1, 1, 1}, {0.5, 0, 0, 0});
    CHECK(certificate_name(uniqueness_certificate(net)) == "NoneFound");
    const auto set = enumerate_equilibria(net);
    CHECK(set.multiple());
  }

  TEST_CASE("a certificate implies a single equilibrium") {
    Rng rng(31);
    int certified = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + rng.below(6);
      Network net = trial % 2 ? random_substochastic_clamps(n, rng)
                              : en_net(testing::random_row_stochastic(n, rng), Vector(n, 1.0), [&] {
                                  Vector e(n, 0.0);
                                  e[rng.below(n)] = rng.uniform(0.01, 1);
                                  return e;
                                }());
      const Certificate c = uniqueness_certificate(net);
      if (std::holds_alternative<NoCertificate>(c)) continue;
      ++certified;
      const auto set = enumerate_equilibria(net);
      CHECK(set.families.empty());
      CHECK(set.points.size() == 1);
    }
    CHECK(certified > 100);
  }
}

TEST_SUITE("banach") {
  TEST_CASE("examples") {
    const Network io = build_network(InputOutput{Matrix{{0.5}}, {1}});
    for (double tol : {1e-4, 1e-12}) {
      const auto rep = solve_banach(io, {0}, {tol, 100000});
      CHECK(rep.x[0] == doctest::Approx(2).epsilon(tol * 4));
      CHECK(rep.residual <= tol);
      CHECK(rep.method == Method::Banach);
      CHECK(rep.error_bound.has_value());
    }
    const auto game = solve_banach(build_network(SimpleGame{0.5, swap2(), {1, 1}}), {0, 0}, {1e-10, 100000});
    CHECK(testing::max_diff(game.x, {2, 2}) <= 1e-8);

    const Network lin(Matrix{{0, 2}, {4.0 / 7.0, 0}},
                      {InteractionFunction::linear(1.25), InteractionFunction::linear(2.0 / 3.0)}, {0, 0});
    const auto zero = solve_banach(lin, {3, -1});
    CHECK(testing::max_diff(zero.x, {0, 0}) <= 1e-9);
  }

  TEST_CASE("errors") {
    CHECK(code_of([] { solve_banach(demos::example_3_1(), {0, 0}); }) == ErrorCode::NotContracting);
    const Network slow = build_network(InputOutput{Matrix{{0.99}}, {1}});
    CHECK(code_of([&] { solve_banach(slow, {0}, {1e-12, 10}); }) == ErrorCode::MaxIterations);
  }

  TEST_CASE("the step bound holds at every iteration") {
    Rng rng(32);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + rng.below(8);
      const Network net = testing::random_contracting(n, rng);
      Vector x0(n);
      for (double& v : x0) v = rng.uniform(-5, 5);
      std::size_t calls = 0;
      bool ok = true;
      const auto rep = solve_banach(net, x0, {1e-11, 1000000}, [&](std::size_t, double step, double bound) {
        ++calls;
        if (step > bound * (1 + 1e-9) + 1e-14) ok = false;
      });
      CHECK(ok);
      CHECK(calls > 0);
      CHECK(rep.residual <= 1e-11);
    }
  }
}

TEST_SUITE("tarski") {
  TEST_CASE("comparative statics table") {
    for (char v : {'a', 'b', 'c', 'd', 'e'}) {
      INFO(v);
      const auto rep = solve_tarski(demos::comparative(v), Direction::Above);
      CHECK(testing::max_diff(rep.x, demos::comparative_expected(v)) <= 1e-4);
    }
    const Network d = demos::comparative('d');
    const auto hi = solve_tarski(d, Direction::Above), lo = solve_tarski(d, Direction::Below);
    CHECK(testing::max_diff(hi.x, {1.2, 2, 2, 1.8}) <= 1e-8);
    CHECK(testing::max_diff(lo.x, {1.2, 2, 2, 1.8}) <= 1e-8);
  }

  TEST_CASE("two-agent ring greatest and least") {
    const Network net = demos::example_3_1();
    const auto hi = solve_tarski(net, Direction::Above);
    const auto lo = solve_tarski(net, Direction::Below);
    CHECK(testing::max_diff(hi.x, {2, 1}) <= 1e-12);
    CHECK(testing::max_diff(lo.x, {-1, -2}) <= 1e-12);
    // by hand from u = (2, 2): (2, 2) → (2, 1) → (2, 1)
    std::vector<Vector> seen;
    solve_tarski(net, Direction::Above, {}, std::nullopt, [&](std::size_t, const Vector& x) { seen.push_back(x); });
    REQUIRE(seen.size() >= 2);
    CHECK(seen[0] == Vector{2, 2});
    CHECK(seen[1] == Vector{2, 1});
  }

  TEST_CASE("huge shocks saturate in one step") {
    const Network net(Matrix{{0, 0.5}, {0.5, 0}},
                      {InteractionFunction::bounded_identity(0, 1), InteractionFunction::bounded_identity(0, 3)},
                      {100, 100});
    const auto rep = solve_tarski(net, Direction::Below);
    CHECK(rep.x == Vector{1, 3});
    CHECK(rep.iterations <= 2);
  }

  TEST_CASE("iterates are monotone and Above dominates Below") {
    Rng rng(33);
    for (int trial = 0; trial < 100; ++trial) {
      const Network net = testing::random_bounded_identity(1 + rng.below(6), rng);
      Vector prev;
      bool down = true, up = true;
      const auto hi = solve_tarski(net, Direction::Above, {}, std::nullopt, [&](std::size_t, const Vector& x) {
        if (!prev.empty() && !testing::leq(x, prev, 1e-12)) down = false;
        prev = x;
      });
      prev.clear();
      const auto lo = solve_tarski(net, Direction::Below, {}, std::nullopt, [&](std::size_t, const Vector& x) {
        if (!prev.empty() && !testing::leq(prev, x, 1e-12)) up = false;
        prev = x;
      });
      CHECK(down);
      CHECK(up);
      CHECK(testing::leq(lo.x, hi.x, 1e-9));
    }
  }

  TEST_CASE("errors and Rogers-Veraart") {
    const Network signed_net(Matrix{{0, -1}, {1, 0}},
                             {InteractionFunction::bounded_identity(0, 1), InteractionFunction::bounded_identity(0, 1)},
                             {0, 0});
    CHECK(code_of([&] { solve_tarski(signed_net, Direction::Above); }) == ErrorCode::NotMonotone);
    const Network unbounded(swap2(), {InteractionFunction::identity(), InteractionFunction::identity()}, {0, 0});
    CHECK(code_of([&] { solve_tarski(unbounded, Direction::Above); }) == ErrorCode::NoLattice);
    const Network rv = build_network(RogersVeraartNet{swap2(), 0.5, 0.5, {1, 1}, {0.3, 0.1}});
    CHECK(code_of([&] { solve_tarski(rv, Direction::Below); }) == ErrorCode::Unsupported);
    const auto rep = solve_tarski(rv, Direction::Above);
    CHECK(rep.residual <= 1e-10);
    CHECK(std::find(rep.notes.begin(), rep.notes.end(), "greatest fixed point candidate") != rep.notes.end());
    const Network nonmono(swap2(), {RogersVeraart{0.5, 4, 1}, RogersVeraart{0.5, 4, 1}}, {0, 0});
    CHECK(code_of([&] { solve_tarski(nonmono, Direction::Above, {}, Lattice{{0, 0}, {2, 2}}); }) ==
          ErrorCode::NotMonotone);
  }
}

TEST_SUITE("algorithm1") {
  TEST_CASE("seven-node example") {
    const Network net = demos::seven_node();
    const auto rep = solve_algorithm1(net);
    const Vector expected = demos::seven_node_expected();
    CHECK(testing::max_diff(rep.x, expected) <= 1e-4);
    CHECK(rep.residual <= 1e-10);
    CHECK(rep.guess == VertexSet{2, 5, 6});
    CHECK(rep.outer_guesses == 1);
    CHECK(rep.iterations <= 7 * 64);
    CHECK(rep.x[4] == doctest::Approx(0.4 * rep.x[0] + 0.15 * rep.x[2] + rep.x[3] + 2e-5).epsilon(1e-12));
    REQUIRE(rep.active_sets.size() == 3);
    CHECK(rep.active_sets[0] == VertexSet{3, 4});
    CHECK(rep.active_sets[1] == VertexSet{3});
    CHECK(rep.active_sets[2] == VertexSet{3});
    CHECK(lp_verify(net, rep.x, 1e-9));
    Vector lowered = rep.x;
    lowered[3] = 7;
    CHECK_FALSE(lp_verify(net, lowered, 1e-9));
  }

  TEST_CASE("early exits") {
    const Network up(Matrix{{0, 0.5}, {0.5, 0}},
                     {InteractionFunction::bounded_identity(0, 1), InteractionFunction::bounded_identity(0, 1)}, {5, 5});
    const auto a = solve_algorithm1(up);
    CHECK(a.x == Vector{1, 1});
    CHECK(a.iterations == 0);
    CHECK(a.outer_guesses == 0);
    CHECK(lp_verify(up, a.x, 1e-12));
    const Network down = up.with_shock({-5, -5});
    const auto b = solve_algorithm1(down);
    CHECK(b.x == Vector{0, 0});
    CHECK(b.iterations == 0);
  }

  TEST_CASE("preconditions") {
    CHECK(code_of([] { solve_algorithm1(production_net()); }) == ErrorCode::PreconditionViolated);
    const Network over(Matrix{{0, 2}, {2, 0}},
                       {InteractionFunction::bounded_identity(0, 1), InteractionFunction::bounded_identity(0, 1)}, {0, 0});
    CHECK(code_of([&] { solve_algorithm1(over); }) == ErrorCode::PreconditionViolated);
    CHECK_FALSE(algorithm1_eligible(over));
    CHECK(algorithm1_eligible(demos::seven_node()));
  }

  TEST_CASE("agreement with both Tarski directions and the iteration bound") {
    Rng rng(34);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + rng.below(6);
      const Network net = testing::random_bounded_identity(n, rng);
      const auto a1 = solve_algorithm1(net);
      const auto hi = solve_tarski(net, Direction::Above);
      const auto lo = solve_tarski(net, Direction::Below);
      CHECK(a1.residual <= 1e-10);
      CHECK(a1.iterations <= n * (std::size_t{1} << (n - 1)));
      CHECK(testing::max_diff(a1.x, hi.x) <= 1e-9);
      CHECK(testing::max_diff(a1.x, lo.x) <= 1e-9);
      CHECK(lp_verify(net, a1.x, 1e-9));
    }
  }
}

TEST_SUITE("probe") {
  TEST_CASE("two-agent ring") {
    const Network net = demos::example_3_1();
    const auto res = multiplicity_probe(net, {2, 1});
    REQUIRE(std::holds_alternative<MultiplicityCertificate>(res));
    const auto& c = std::get<MultiplicityCertificate>(res);
    CHECK(c.scc == VertexSet{0, 1});
    CHECK(testing::max_diff(c.direction, {0.5, 0.5}) <= 1e-12);
    CHECK(c.witness_residual <= 1e-9);
    CHECK(net.residual(c.witness) <= 1e-9);
    CHECK(testing::max_diff(c.witness, {2, 1}) > 1e-3);
    const Vector lo{2 + c.t_lo * 0.5, 1 + c.t_lo * 0.5}, hi{2 + c.t_hi * 0.5, 1 + c.t_hi * 0.5};
    CHECK(testing::max_diff(lo, {-1, -2}) <= 1e-6);
    CHECK(testing::max_diff(hi, {2, 1}) <= 1e-6);
  }

  TEST_CASE("W^a multiplicity line") {
    Rng rng(35);
    for (int trial = 0; trial < 20; ++trial) {
      const double e1 = rng.uniform(-0.4, 0.4);
      const Vector eps{e1, -2 * e1, rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
      const Network net(demos::w_a(), demos::f_a(), eps);
      const auto x = solve_tarski(net, Direction::Above).x;
      const auto res = multiplicity_probe(net, x);
      REQUIRE(std::holds_alternative<MultiplicityCertificate>(res));
      const auto& c = std::get<MultiplicityCertificate>(res);
      CHECK(c.scc == VertexSet{0, 1});
      CHECK(c.direction[1] / c.direction[0] == doctest::Approx(2.0));
      CHECK(c.direction[2] == 0);
      CHECK(c.direction[3] == 0);
      CHECK(net.residual(c.witness) <= 1e-9);
      CHECK(c.affected == VertexSet{2, 3});
    }
  }

  TEST_CASE("W^a generic shocks are unique") {
    const Network a = demos::comparative('a');
    CHECK(std::holds_alternative<Unique>(multiplicity_probe(a, {0.2, 0, 0, 0.2})));
    Rng rng(36);
    for (int trial = 0; trial < 20; ++trial) {
      Vector eps(4);
      for (double& e : eps) e = rng.uniform(-1, 1);
      const Network net(demos::w_a(), demos::f_a(), eps);
      const auto x = solve_tarski(net, Direction::Above).x;
      CHECK(std::holds_alternative<Unique>(multiplicity_probe(net, x)));
      const auto set = enumerate_equilibria(net);
      CHECK(set.points.size() == 1);
      CHECK(set.families.empty());
    }
  }

  TEST_CASE("errors") {
    CHECK(code_of([] { multiplicity_probe(demos::example_3_1(), {0, 0}); }) == ErrorCode::ResidualTooLarge);
    const Network net = production_net();
    const auto x = solve_banach(net, {0, 0}).x;
    CHECK(code_of([&] { multiplicity_probe(net, x); }) == ErrorCode::PreconditionViolated);
  }

  TEST_CASE("witnesses always verify") {
    Rng rng(37);
    int found = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + rng.below(5);
      const Matrix w = testing::random_irreducible_stochastic(n, rng);
      std::vector<InteractionFunction> f(n, InteractionFunction::bounded_identity(-3, 3));
      // shocks orthogonal to the right Perron vector (all ones)
      Vector eps(n);
      double sum = 0;
      for (std::size_t j = 0; j + 1 < n; ++j) sum += (eps[j] = rng.uniform(-0.5, 0.5));
      eps[n - 1] = -sum;
      const Network net(w, f, eps);
      const auto x = solve_tarski(net, Direction::Above, {1e-12, 1000000}).x;
      const auto res = multiplicity_probe(net, x);
      if (const auto* c = std::get_if<MultiplicityCertificate>(&res)) {
        ++found;
        CHECK(net.residual(c->witness) <= 1e-9);
        for (std::size_t j = 0; j < n; ++j) CHECK(c->direction[j] > 0);
      }
    }
    CHECK(found > 150);
  }
}

TEST_SUITE("verification") {
  TEST_CASE("verify_equilibrium") {
    CHECK(verify_equilibrium(demos::comparative('c'), {0.2, 0, 0.7579, 1.0421}) <= 1e-4);
    CHECK(verify_equilibrium(build_network(InputOutput{Matrix{{0.5}}, {1}}), {0}) == 1.0);
    CHECK(code_of([] { verify_equilibrium(demos::example_3_1(), {0}); }) == ErrorCode::DimensionMismatch);
  }

  TEST_CASE("linear system solvability") {
    const auto one = linear_system_solvability(Matrix{{0.5}}, {1});
    REQUIRE(std::holds_alternative<Solvable>(one));
    CHECK(std::get<Solvable>(one).x[0] == doctest::Approx(2));

    const auto under = linear_system_solvability(swap2(), {1, -1});
    REQUIRE(std::holds_alternative<Underdetermined>(under));
    const auto& u = std::get<Underdetermined>(under);
    CHECK(testing::max_diff(vec_mat(u.particular, swap2()), {u.particular[0] - 1, u.particular[1] + 1}) <= 1e-12);
    CHECK(u.direction[0] == doctest::Approx(u.direction[1]));

    const auto none = linear_system_solvability(swap2(), {1, 1});
    REQUIRE(std::holds_alternative<Unsolvable>(none));
    CHECK(std::get<Unsolvable>(none).orthogonality != 0);

    const Matrix reducible{{1, 0}, {0, 1}};
    CHECK(code_of([&] { linear_system_solvability(reducible, {1, 1}); }) == ErrorCode::UnhandledSingularity);
  }
}

TEST_SUITE("comparative statics") {
  // Monotone T needs W ≥ 0, and xW ≤ xW' needs x ≥ 0, so the pairs use
  // nonnegative weights and clamps with a nonnegative floor.
  TEST_CASE("contracting pairs") {
    Rng rng(38);
    int violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + rng.below(6);
      Matrix w = testing::random_nonnegative(n, rng, 0.6);
      Matrix w2 = w;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (rng.uniform() < 0.5) w2(i, j) += rng.uniform(0, 0.5);
      std::vector<InteractionFunction> f, f2;
      Vector beta(n), eps(n), eps2(n);
      for (std::size_t j = 0; j < n; ++j) {
        const ClampedAffine c{rng.uniform(-1, 1), rng.uniform(0.2, 1.0), rng.uniform(0, 0.5),
                              rng.uniform() < 0.5 ? kInf : rng.uniform(1, 4)};
        ClampedAffine c2 = c;
        c2.offset += rng.uniform(0, 0.5);
        c2.lower += rng.uniform(0, 0.5);
        if (std::isfinite(c2.upper)) c2.upper += rng.uniform(0, 1);
        f.push_back(c);
        f2.push_back(c2);
        beta[j] = c.gain;
        eps[j] = rng.uniform(-1, 1);
        eps2[j] = eps[j] + rng.uniform(0, 0.5);
      }
      const double scale = rng.uniform(0.3, 0.9) / std::max(contraction_modulus(w2, beta), 1e-9);
      if (scale < 1) {
        w = w.scaled(scale);
        w2 = w2.scaled(scale);
      }
      const Network a(w, f, eps), b(w2, f2, eps2);
      REQUIRE(classify(a).contracting);
      REQUIRE(classify(b).contracting);
      const auto xa = solve_banach(a, Vector(n, 0.0)).x;
      const auto xb = solve_banach(b, Vector(n, 0.0)).x;
      if (!testing::leq(xa, xb, 1e-8)) ++violations;
    }
    CHECK(violations == 0);
  }

  TEST_CASE("noncontracting pairs with ordered bounds") {
    Rng rng(39);
    int violations = 0, trials = 0;
    while (trials < 200) {
      const std::size_t n = 2 + rng.below(5);
      const Matrix w = testing::random_irreducible_stochastic(n, rng);
      Vector u(n), u2(n), eps(n, 0.0), eps2(n);
      for (std::size_t j = 0; j < n; ++j) {
        u[j] = rng.uniform(0.5, 3);
        u2[j] = u[j] + rng.uniform(0, 1);
        if (rng.uniform() < 0.5) eps[j] = rng.uniform(0, 1);
      }
      eps[rng.below(n)] += 0.1;
      for (std::size_t j = 0; j < n; ++j) eps2[j] = eps[j] + rng.uniform(0, 0.5);
      const Network a = en_net(w, u, eps), b = en_net(w, u2, eps2);
      // Lemma 9 needs unique equilibria; the EN certificate provides them
      REQUIRE(certificate_name(uniqueness_certificate(a)) == "ENPositiveCash");
      REQUIRE(certificate_name(uniqueness_certificate(b)) == "ENPositiveCash");
      const auto xa = solve_tarski(a, Direction::Above).x;
      const auto xb = solve_tarski(b, Direction::Above).x;
      if (!testing::leq(xa, xb, 1e-8)) ++violations;
      ++trials;
    }
    CHECK(violations == 0);
  }

  TEST_CASE("the ordering fails once states go negative under W <= W'") {
    const Network a(Matrix{{0}}, {InteractionFunction::identity()}, {-1});
    const Network b(Matrix{{0.5}}, {InteractionFunction::identity()}, {-1});
    CHECK(solve_banach(a, {0}).x[0] > solve_banach(b, {0}).x[0]);
  }
}

TEST_SUITE("EN uniqueness") {
  TEST_CASE("positive cash on an irreducible system") {
    Rng rng(40);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 2 + rng.below(5);
      const Matrix w = testing::random_irreducible_stochastic(n, rng);
      Vector pbar(n), eps(n, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        pbar[j] = rng.uniform(0.5, 3);
        if (rng.uniform() < 0.4) eps[j] = rng.uniform(0, 1);
      }
      eps[rng.below(n)] = rng.uniform(0.01, 1);
      const Network net = en_net(w, pbar, eps);
      const auto x = solve_tarski(net, Direction::Above).x;
      CHECK(std::holds_alternative<Unique>(multiplicity_probe(net, x)));
      const auto set = enumerate_equilibria(net);
      CHECK(set.points.size() == 1);
      CHECK(set.families.empty());
    }
  }
}
