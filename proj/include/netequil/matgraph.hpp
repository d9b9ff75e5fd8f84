#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "netequil/matrix.hpp"

namespace netequil {

/// Sorted, duplicate-free list of 0-based vertex indices. Reports print them
/// 1-based.
using VertexSet = std::vector<std::size_t>;

inline constexpr double kSpectralUnitTol = 1e-9;
inline constexpr double kDeficiencyTol = 1e-12;
inline constexpr double kPivotRelTol = 1e-12;

// ---------------------------------------------------------------------------
// Spectral analysis

struct SpectralOptions {
  double tol = 1e-12;
  int kmax = 200;  // maximum number of squarings
};

/// r(A) for A ≥ 0 via the Gelfand estimate ‖A^(2^m)‖^(1/2^m), computed by
/// normalized repeated squaring. The estimate is an upper bound and the
/// sequence is nonincreasing in m.
double spectral_radius(const Matrix& a, SpectralOptions opt = {});

/// The sequence ‖A^(2^m)‖_∞^(1/2^m), m = 0..count-1, used by the tests to
/// check monotonicity.
std::vector<double> gelfand_sequence(const Matrix& a, int count);

/// r(|W| diag(β)).
double contraction_modulus(const Matrix& w, const Vector& beta, SpectralOptions opt = {});

enum class Side { Left, Right };

struct PerronPair {
  double eigenvalue = 0.0;
  Vector vector;  // strictly positive, unit sum
};

/// Perron root and left or right Perron vector of an irreducible A ≥ 0.
PerronPair perron_vector(const Matrix& a, Side side, SpectralOptions opt = {});

// ---------------------------------------------------------------------------
// Graph structure. Edge i → j exists iff w_ij ≠ 0.

enum class BlockKind { InSubgraph, OutSubgraph };

struct Condensation {
  std::vector<VertexSet> blocks;      // ordered by smallest member
  std::vector<BlockKind> kind;        // per block
  std::vector<std::size_t> topo_order;  // block indices, sources first
  std::vector<std::size_t> block_of;  // vertex → block index

  std::size_t block_count() const noexcept { return blocks.size(); }
};

Condensation scc_condensation(const Matrix& w);

/// Vertices reachable from `from` (excluding those in `from` itself).
VertexSet reachable_from(const Matrix& w, const VertexSet& from);

bool is_acyclic(const Matrix& w);
bool is_irreducible(const Matrix& w);

enum class Orientation { Row, Column };

struct ChainWitness {
  Orientation orientation = Orientation::Row;
  VertexSet deficient;
  /// For each vertex: empty when deficient, otherwise a path v → … → t ending
  /// at a deficient vertex t, every hop a strictly positive entry.
  std::vector<std::vector<std::size_t>> chains;
};

struct ChainFailure {
  enum class Kind { NotSubstochastic, NoChain } kind;
  VertexSet vertices;
};

using ChainResult = std::variant<ChainWitness, ChainFailure>;

ChainResult weakly_chained_check(const Matrix& w, Orientation orientation);

Matrix principal_submatrix(const Matrix& a, const VertexSet& remove);
/// Submatrix on `keep` (in the given order).
Matrix restrict_to(const Matrix& a, const VertexSet& keep);
VertexSet complement(std::size_t n, const VertexSet& s);

// ---------------------------------------------------------------------------
// Linear algebra

/// x with xA = b, Gaussian elimination with partial pivoting. Throws
/// Error{Singular} carrying the failing pivot index.
Vector linear_solve(const Matrix& a, const Vector& b);

/// General row system xA = b for possibly singular A: rank-revealing
/// elimination with full pivoting.
struct GeneralSolution {
  bool consistent = false;
  Vector particular;          // valid when consistent
  std::vector<Vector> null_basis;  // left null space of A (xA = 0)
  std::size_t rank = 0;
};

GeneralSolution solve_general(const Matrix& a, const Vector& b, double consistency_tol);

}  // namespace netequil
