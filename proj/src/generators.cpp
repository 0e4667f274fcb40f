#include "opineq/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "opineq/jensen.hpp"

namespace opineq {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGoldenGamma;
  return mix64(state_);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

int SplitMix64::uniform_int(int lo, int hi) {
  if (hi < lo) raise(ErrorKind::InvalidParameter, "empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

double SplitMix64::gaussian() {
  // Box-Muller; u clamped away from 0 so the log stays finite.
  const double u = std::max(uniform(), 0x1.0p-60);
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586477 * v);
}

Complex SplitMix64::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + kGoldenGamma * (index + 1));
}

ComplexMatrix random_unitary(std::size_t dim, SplitMix64& rng) {
  if (dim == 0) raise(ErrorKind::InvalidParameter, "empty unitary");
  ComplexMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.complex_gaussian();

  // Modified Gram-Schmidt on columns, two passes for orthogonality at
  // working precision, then a phase fix so the result is unique given g.
  for (std::size_t j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj(0.0, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
          proj += std::conj(g(i, k)) * g(i, j);
        for (std::size_t i = 0; i < dim; ++i) g(i, j) -= proj * g(i, k);
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) {
      // Degenerate draw (vanishing probability): fall back to a basis
      // vector and orthogonalize it against the finished columns.
      for (std::size_t i = 0; i < dim; ++i)
        g(i, j) = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj(0.0, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
          proj += std::conj(g(i, k)) * g(i, j);
        for (std::size_t i = 0; i < dim; ++i) g(i, j) -= proj * g(i, k);
      }
      nrm = 0.0;
      for (std::size_t i = 0; i < dim; ++i) nrm += std::norm(g(i, j));
      nrm = std::sqrt(std::max(nrm, 1e-300));
    }
    for (std::size_t i = 0; i < dim; ++i) g(i, j) /= nrm;
    const Complex pivot = g(j, j);
    const double pa = std::abs(pivot);
    if (pa > 1e-12) {
      const Complex phase = std::conj(pivot) / pa;
      for (std::size_t i = 0; i < dim; ++i) g(i, j) *= phase;
    }
  }
  return g;
}

HermitianMatrix random_hermitian(std::size_t dim, double m, double M,
                                 std::uint64_t seed) {
  if (dim < 1 || dim > 16)
    raise(ErrorKind::InvalidParameter,
          "random Hermitian dimension must lie in [1, 16], got " +
              std::to_string(dim));
  require_window(m, M, "random_hermitian");
  SplitMix64 rng(seed);
  std::vector<double> eigs(dim);
  for (double& e : eigs) e = rng.uniform(m, M);
  if (dim == 1) return HermitianMatrix::diagonal(eigs);
  const ComplexMatrix u = random_unitary(dim, rng);
  ComplexMatrix d(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) d(i, i) = Complex(eigs[i], 0.0);
  return certified_hermitian(u * d * u.adjoint());
}

PositiveMapField random_unital_field(std::size_t n_points, std::size_t in_dim,
                                     std::size_t out_dim,
                                     std::size_t kraus_per_map,
                                     std::uint64_t seed) {
  if (n_points < 1 || in_dim < 1 || out_dim < 1 || kraus_per_map < 1)
    raise(ErrorKind::InvalidParameter, "field shape counts must be >= 1");

  for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
    SplitMix64 rng(derive_seed(seed, attempt));
    std::vector<FieldPoint> pts;
    pts.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
      const double weight = rng.uniform(0.2, 1.0);
      std::vector<ComplexMatrix> blocks;
      blocks.reserve(kraus_per_map);
      for (std::size_t k = 0; k < kraus_per_map; ++k) {
        ComplexMatrix block(out_dim, in_dim);
        for (std::size_t r = 0; r < out_dim; ++r)
          for (std::size_t c = 0; c < in_dim; ++c)
            block(r, c) = 0.5 * rng.complex_gaussian();
        blocks.push_back(std::move(block));
      }
      pts.push_back(FieldPoint{weight,
                               KrausMap(in_dim, out_dim, std::move(blocks)),
                               HermitianMatrix::identity(in_dim)});
    }
    try {
      return normalize_to_unital(PositiveMapField(std::move(pts)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularNormalizer || attempt == 7) throw;
    }
  }
  raise(ErrorKind::SingularNormalizer, "unreachable");
}

PositiveMapField with_random_data(const PositiveMapField& skeleton, double m,
                                  double M, std::uint64_t seed) {
  std::vector<HermitianMatrix> data;
  data.reserve(skeleton.points().size());
  for (std::size_t i = 0; i < skeleton.points().size(); ++i)
    data.push_back(random_hermitian(skeleton.points()[i].map.in_dim(), m, M,
                                    derive_seed(seed, i)));
  return skeleton.with_data(std::move(data))
      .with_interval(Interval::closed(m, M));
}

VectorField random_vector_field(std::size_t n_points, std::size_t dim,
                                double m, double M, std::uint64_t seed) {
  if (n_points < 1)
    raise(ErrorKind::InvalidParameter, "vector field needs >= 1 points");
  SplitMix64 rng(derive_seed(seed, 0x7EC7u));
  std::vector<VectorFieldPoint> pts;
  pts.reserve(n_points);
  double mass = 0.0;
  for (std::size_t i = 0; i < n_points; ++i) {
    VectorFieldPoint pt;
    pt.weight = rng.uniform(0.2, 1.0);
    pt.op = random_hermitian(dim, m, M, derive_seed(seed, i + 1));
    pt.vec.resize(dim);
    double nrm2 = 0.0;
    for (Complex& z : pt.vec) {
      z = rng.complex_gaussian();
      nrm2 += std::norm(z);
    }
    mass += pt.weight * nrm2;
    pts.push_back(std::move(pt));
  }
  // Rescale weights so the total mass is exactly 1 up to rounding.
  for (VectorFieldPoint& pt : pts) pt.weight /= mass;
  return VectorField(std::move(pts), Interval::closed(m, M));
}

FalsificationResult falsify_jensen(const ScalarFunctionSpec& f,
                                   std::uint64_t trials, std::uint64_t seed,
                                   std::size_t min_dim, std::size_t max_dim,
                                   double m, double M) {
  if (trials < 1)
    raise(ErrorKind::InvalidParameter, "the search needs at least one trial");
  if (min_dim < 2 || max_dim < min_dim || max_dim > 16)
    raise(ErrorKind::InvalidParameter,
          "falsification dims must satisfy 2 <= min <= max <= 16");
  require_window(m, M, "falsify_jensen");

  FalsificationResult result;
  result.seed = seed;
  result.min_gap_seen = std::numeric_limits<double>::infinity();

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t sub = derive_seed(seed, trial);
    SplitMix64 rng(sub);

    PositiveMapField field = [&]() -> PositiveMapField {
      if (trial % 2 == 0) {
        // Bias mode: a single rank-deficient compression V* X V, the
        // classical source of operator-convexity counterexamples.
        const int lo = static_cast<int>(std::max<std::size_t>(3, min_dim));
        const int hi = static_cast<int>(std::max<std::size_t>(3, max_dim));
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(lo, hi));
        const std::size_t k =
            static_cast<std::size_t>(rng.uniform_int(2, static_cast<int>(n) - 1));
        const ComplexMatrix u = random_unitary(n, rng);
        ComplexMatrix frame(n, k);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < k; ++j) frame(i, j) = u(i, j);
        std::vector<FieldPoint> pts;
        pts.push_back(FieldPoint{1.0, KrausMap::compression(frame),
                                 HermitianMatrix::identity(n)});
        return PositiveMapField(std::move(pts));
      }
      const std::size_t n_points =
          static_cast<std::size_t>(rng.uniform_int(1, 3));
      const std::size_t in_dim = static_cast<std::size_t>(rng.uniform_int(
          static_cast<int>(min_dim), static_cast<int>(max_dim)));
      const std::size_t out_dim = static_cast<std::size_t>(rng.uniform_int(
          2, static_cast<int>(std::max<std::size_t>(2, in_dim))));
      const std::size_t kraus =
          static_cast<std::size_t>(rng.uniform_int(1, 2));
      return random_unital_field(n_points, in_dim, out_dim, kraus,
                                 derive_seed(sub, 1));
    }();

    // Fill data; occasionally snap eigenvalues toward the window endpoints,
    // where violations concentrate.
    std::vector<HermitianMatrix> data;
    for (std::size_t i = 0; i < field.points().size(); ++i) {
      const std::size_t n = field.points()[i].map.in_dim();
      std::vector<double> eigs(n);
      const bool snap = rng.uniform() < 0.5;
      for (double& e : eigs) {
        e = rng.uniform(m, M);
        if (snap) e = (rng.uniform() < 0.5) ? m : M;
      }
      SplitMix64 urng(derive_seed(sub, 100 + i));
      if (n == 1) {
        data.push_back(HermitianMatrix::diagonal(eigs));
      } else {
        const ComplexMatrix u = random_unitary(n, urng);
        ComplexMatrix d(n, n);
        for (std::size_t j = 0; j < n; ++j) d(j, j) = Complex(eigs[j], 0.0);
        data.push_back(certified_hermitian(u * d * u.adjoint()));
      }
    }
    field = field.with_data(std::move(data))
                .with_interval(Interval::closed(m, M));

    result.trials_run = trial + 1;
    JensenReport report;
    try {
      report = jensen_gap(field, f);
    } catch (const Error&) {
      continue;  // domain or numeric issue on this draw; keep searching
    }
    const double scale = std::max(1.0, operator_norm(report.rhs));
    const double rel_gap = report.gap_min_eig / scale;
    result.min_gap_seen = std::min(result.min_gap_seen, rel_gap);
    if (rel_gap < -1e-6) {
      result.found = true;
      result.witness = field;
      result.witness_trial = trial;
      return result;
    }
  }
  if (!std::isfinite(result.min_gap_seen)) result.min_gap_seen = 0.0;
  return result;
}

}  // namespace opineq
