#pragma once

#include <cstdint>
#include <optional>

#include "opineq/positive_maps.hpp"

namespace opineq {

/// Identifier of the random source, recorded in reports so witnesses can be
/// regenerated in other languages.
inline constexpr const char* kRngAlgorithm = "splitmix64";

/// SplitMix64: the 64-bit counter-based generator from Steele, Lea &
/// Flood's SplittableRandom lineage. Chosen for trivial cross-language
/// reproducibility, not speed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi);

  /// Standard Gaussian via Box-Muller (one value per pair of uniforms; the
  /// spare is discarded to keep the stream position deterministic).
  double gaussian();

  Complex complex_gaussian();

 private:
  std::uint64_t state_;
};

/// Stable per-trial sub-seed: mix64(seed + (index + 1) * golden gamma).
/// Parallel searches partition the seed space with this so results are
/// order-independent.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Haar-ish random unitary: Gaussian matrix -> modified Gram-Schmidt with a
/// deterministic phase fix on the diagonal.
ComplexMatrix random_unitary(std::size_t dim, SplitMix64& rng);

/// Random Hermitian with spectrum inside [m, M] by construction (uniform
/// eigenvalues conjugated by a random unitary). dim must lie in [1, 16].
HermitianMatrix random_hermitian(std::size_t dim, double m, double M,
                                 std::uint64_t seed);

/// Random unital field skeleton: n_points maps (kraus_per_map blocks each,
/// Gaussian entries) renormalized to exact unitality; the data slots hold
/// identity placeholders until filled. Retries up to 8 sub-seeds when the
/// normalizer is singular (astronomically unlikely), then rethrows.
PositiveMapField random_unital_field(std::size_t n_points, std::size_t in_dim,
                                     std::size_t out_dim,
                                     std::size_t kraus_per_map,
                                     std::uint64_t seed);

/// Skeleton field with fresh random data with spectra in [m, M] and the
/// window attached.
PositiveMapField with_random_data(const PositiveMapField& skeleton, double m,
                                  double M, std::uint64_t seed);

/// Normalized random vector field: n_points positive operators with spectra
/// in [m, M] plus Gaussian vectors, weights rescaled so the total mass is 1.
VectorField random_vector_field(std::size_t n_points, std::size_t dim,
                                double m, double M, std::uint64_t seed);

/// Outcome of the operator-convexity falsification search.
struct FalsificationResult {
  bool found = false;
  std::optional<PositiveMapField> witness;
  double min_gap_seen = 0.0;     // most negative relative Jensen gap
  std::uint64_t trials_run = 0;
  std::uint64_t witness_trial = 0;
  std::uint64_t seed = 0;
};

/// Random search for a unital field violating the operator Jensen
/// inequality for f: alternates uniform random fields with a bias mode of
/// rank-deficient compressions V* X V (the classical source of
/// operator-convexity counterexamples). Data spectra stay inside
/// [m, M]; dims range over [min_dim, max_dim] (capped at 16). A trial
/// counts as a violation when gap_min_eig < -1e-6 * max(1, ||rhs||).
/// Not finding one is a result, not an error.
FalsificationResult falsify_jensen(const ScalarFunctionSpec& f,
                                   std::uint64_t trials, std::uint64_t seed,
                                   std::size_t min_dim, std::size_t max_dim,
                                   double m, double M);

}  // namespace opineq
