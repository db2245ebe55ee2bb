#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyimage/linalg.hpp"
#include "polyimage/polyhedron.hpp"
#include "polyimage/projection.hpp"

namespace polyimage {

/// SplitMix64 (Steele, Lea, Flood 2014). Every random stream in the project
/// comes from this generator so samples are reproducible bit for bit:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// next() mod (hi - lo + 1), shifted to [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

/// Denominator shared by every sampled coordinate.
inline constexpr std::int64_t kSampleDenominator = 2;

/// Points are drawn coordinate by coordinate as n / kSampleDenominator with
/// n = uniform_int(-radius*D, radius*D), from SplitMix64(seed).
struct SampleSpec {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::int64_t box_radius = 3;

  /// Throws Error unless count >= 1 and box_radius >= 1.
  void validate() const;
};

/// Endless stream of sample points of a fixed dimension.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::int64_t box_radius, std::size_t dim);
  QVector next();

 private:
  SplitMix64 rng_;
  std::int64_t span_;
  std::size_t dim_;
};

/// The first spec.count points of SampleStream(spec.seed, spec.box_radius, dim).
std::vector<QVector> sample_points(const SampleSpec& spec, std::size_t dim);

/// Whether some x in A has T x = y, decided by is_empty on A with T x = y
/// added as pairs of opposite inequalities.
bool feasible_with_equalities(const HPolyhedron& a, const LinMap& t, const QVector& y);

struct VerificationFailure {
  std::string property;
  std::string witness;
  std::string expected;
  std::string actual;

  friend auto operator<=>(const VerificationFailure&, const VerificationFailure&) = default;
};

class VerificationReport {
 public:
  void count(const std::string& property) { ++checks_[property]; }
  void fail(VerificationFailure failure);

  bool passed() const { return failures_.empty(); }
  const std::map<std::string, std::size_t>& checks_run() const { return checks_; }
  /// Sorted, so the report does not depend on the order checks ran in.
  std::vector<VerificationFailure> failures() const;

  /// One "PASS name checks=N" or "FAIL name ..." line per property, then a
  /// verdict line.
  std::string to_text() const;
  std::string to_json() const;

 private:
  std::map<std::string, std::size_t> checks_;
  std::vector<VerificationFailure> failures_;
};

/// Sample-wise audit of `result` as T(A): soundness (x in A => T x in
/// result), completeness (y in result => y feasible), exactness (y not in
/// result => y infeasible), certificates (when given, aligned with result's
/// rows) and cone preservation. Codomain samples use seed + 1.
VerificationReport verify_image(const LinMap& t, const HPolyhedron& a, const HPolyhedron& result,
                                const std::optional<std::vector<Certificate>>& certificates,
                                const SampleSpec& spec);

/// Sample-wise audit of `result` as T^{-1}(B): contains(result, x) must equal
/// contains(B, T x), on samples and on points straddling every bound.
VerificationReport verify_preimage(const LinMap& t, const HPolyhedron& b,
                                   const HPolyhedron& result, const SampleSpec& spec);

}  // namespace polyimage
