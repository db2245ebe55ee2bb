#include "polyimage/oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "polyimage/errors.hpp"

namespace polyimage {

namespace {

// Sampling gives up on a predicate after this many draws per requested hit.
constexpr std::size_t kDrawsPerHit = 20;

// Points on both sides of, and on, the hyperplane a·z = b, starting from the
// projection of `base` onto it: a·z takes the values b - 1/2, b, b + 1/2.
std::vector<QVector> straddle(const IneqRow& row, const QVector& base) {
  if (row.a.is_zero()) return {};
  const Rational aa = dot(row.a, row.a);
  const QVector on_plane = base + ((row.b - dot(row.a, base)) / aa) * row.a;
  std::vector<QVector> out;
  for (const Rational& s : {Rational(-1, 2), Rational(0), Rational(1, 2)}) {
    out.push_back(on_plane + (s / aa) * row.a);
  }
  return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform_int(std::int64_t lo, std::int64_t hi) {
  const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % width);
}

void SampleSpec::validate() const {
  if (count < 1) throw Error("sample count must be at least 1");
  if (box_radius < 1) throw Error("sample box radius must be at least 1");
}

SampleStream::SampleStream(std::uint64_t seed, std::int64_t box_radius, std::size_t dim)
    : rng_(seed), span_(box_radius * kSampleDenominator), dim_(dim) {}

QVector SampleStream::next() {
  QVector v(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    v[i] = Rational(rng_.uniform_int(-span_, span_), kSampleDenominator);
  }
  return v;
}

std::vector<QVector> sample_points(const SampleSpec& spec, std::size_t dim) {
  spec.validate();
  SampleStream stream(spec.seed, spec.box_radius, dim);
  std::vector<QVector> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) out.push_back(stream.next());
  return out;
}

bool feasible_with_equalities(const HPolyhedron& a, const LinMap& t, const QVector& y) {
  if (a.dim() != t.domain_dim() || y.dim() != t.codomain_dim()) {
    throw DimensionMismatch("feasible_with_equalities: inconsistent dimensions");
  }
  std::vector<IneqRow> rows = a.rows();
  for (std::size_t i = 0; i < t.codomain_dim(); ++i) {
    const QVector ti = t.matrix.row(i);
    rows.push_back({ti, y[i]});
    rows.push_back({Rational(-1) * ti, -y[i]});
  }
  return !is_empty(HPolyhedron(a.dim(), std::move(rows)));
}

void VerificationReport::fail(VerificationFailure failure) {
  failures_.push_back(std::move(failure));
}

std::vector<VerificationFailure> VerificationReport::failures() const {
  auto out = failures_;
  std::sort(out.begin(), out.end());
  return out;
}

std::string VerificationReport::to_text() const {
  const auto sorted = failures();
  std::ostringstream os;
  for (const auto& [property, n] : checks_) {
    std::size_t failed = 0;
    const VerificationFailure* first = nullptr;
    for (const auto& f : sorted) {
      if (f.property != property) continue;
      if (!first) first = &f;
      ++failed;
    }
    if (failed == 0) {
      os << "PASS " << property << " checks=" << n << '\n';
    } else {
      os << "FAIL " << property << " failures=" << failed << '/' << n
         << " witness=" << first->witness << " expected=" << first->expected
         << " actual=" << first->actual << '\n';
    }
  }
  os << (passed() ? "PASS" : "FAIL") << " verdict\n";
  return os.str();
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = passed() ? "pass" : "fail";
  j["checks"] = nlohmann::ordered_json::object();
  for (const auto& [property, n] : checks_) j["checks"][property] = n;
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : failures()) {
    j["failures"].push_back({{"property", f.property},
                             {"witness", f.witness},
                             {"expected", f.expected},
                             {"actual", f.actual}});
  }
  return j.dump(2) + "\n";
}

VerificationReport verify_image(const LinMap& t, const HPolyhedron& a, const HPolyhedron& result,
                                const std::optional<std::vector<Certificate>>& certificates,
                                const SampleSpec& spec) {
  spec.validate();
  VerificationReport report;
  report.count("dimensions");
  if (a.dim() != t.domain_dim() || result.dim() != t.codomain_dim()) {
    report.fail({"dimensions", "-",
                 "domain " + std::to_string(t.domain_dim()) + ", codomain " +
                     std::to_string(t.codomain_dim()),
                 "polyhedron " + std::to_string(a.dim()) + ", result " +
                     std::to_string(result.dim())});
    return report;
  }

  // Soundness over sampled points of A (plus one constructed point).
  std::vector<QVector> in_a;
  if (auto w = find_point(a)) in_a.push_back(*w);
  SampleStream domain(spec.seed, spec.box_radius, a.dim());
  for (std::size_t draws = 0; in_a.size() < spec.count + 1 && draws < spec.count * kDrawsPerHit;
       ++draws) {
    QVector x = domain.next();
    if (contains(a, x)) in_a.push_back(std::move(x));
  }
  for (const QVector& x : in_a) {
    report.count("soundness");
    if (!contains(result, t(x))) {
      report.fail({"soundness", "x=" + x.str(), "T x in result", "T x=" + t(x).str() + " outside"});
    }
  }

  // Codomain candidates: images of points of A, sampled hits and misses of
  // the result, and points straddling every bound of the result.
  std::set<QVector> candidates;
  for (const QVector& x : in_a) candidates.insert(t(x));
  SampleStream codomain(spec.seed + 1, spec.box_radius, result.dim());
  std::size_t hits = 0;
  std::size_t misses = 0;
  for (std::size_t draws = 0; hits < spec.count && draws < spec.count * kDrawsPerHit; ++draws) {
    QVector y = codomain.next();
    if (contains(result, y)) {
      ++hits;
      candidates.insert(std::move(y));
    } else if (misses < spec.count) {
      ++misses;
      candidates.insert(std::move(y));
    }
  }
  std::vector<QVector> bases{QVector(result.dim())};
  if (!in_a.empty()) bases.push_back(t(in_a.front()));
  for (const IneqRow& row : result.rows()) {
    for (const QVector& base : bases) {
      for (QVector& y : straddle(row, base)) candidates.insert(std::move(y));
    }
  }
  for (const QVector& y : candidates) {
    const bool in_result = contains(result, y);
    const bool feasible = feasible_with_equalities(a, t, y);
    const std::string property = in_result ? "completeness" : "exactness";
    report.count(property);
    if (in_result != feasible) {
      report.fail({property, "y=" + y.str(), "feasible=" + bool_str(in_result),
                   "feasible=" + bool_str(feasible)});
    }
  }

  if (certificates) {
    if (certificates->size() != result.size()) {
      report.count("certificates");
      report.fail({"certificates", "-", std::to_string(result.size()) + " certificates",
                   std::to_string(certificates->size())});
    } else {
      for (std::size_t k = 0; k < result.size(); ++k) {
        report.count("certificates");
        bool ok = false;
        try {
          ok = check_certificate(a, t, result.row(k), (*certificates)[k]);
        } catch (const Error&) {
          ok = false;
        }
        if (!ok) report.fail({"certificates", "row " + std::to_string(k), "valid", "invalid"});
      }
    }
  }

  if (a.is_cone()) {
    for (std::size_t k = 0; k < result.size(); ++k) {
      report.count("cone");
      if (!result.row(k).b.is_zero()) {
        report.fail({"cone", "row " + std::to_string(k), "bound 0", "bound " + result.row(k).b.str()});
      }
    }
  }
  return report;
}

VerificationReport verify_preimage(const LinMap& t, const HPolyhedron& b,
                                   const HPolyhedron& result, const SampleSpec& spec) {
  spec.validate();
  VerificationReport report;
  report.count("dimensions");
  if (b.dim() != t.codomain_dim() || result.dim() != t.domain_dim()) {
    report.fail({"dimensions", "-",
                 "domain " + std::to_string(t.domain_dim()) + ", codomain " +
                     std::to_string(t.codomain_dim()),
                 "polyhedron " + std::to_string(b.dim()) + ", result " +
                     std::to_string(result.dim())});
    return report;
  }

  std::set<QVector> points;
  for (QVector& x : sample_points(spec, t.domain_dim())) points.insert(std::move(x));
  const QVector origin(t.domain_dim());
  for (const IneqRow& row : result.rows()) {
    for (QVector& x : straddle(row, origin)) points.insert(std::move(x));
  }
  for (const IneqRow& row : b.rows()) {
    const IneqRow pulled{left_multiply(row.a, t.matrix), row.b};
    for (QVector& x : straddle(pulled, origin)) points.insert(std::move(x));
  }
  for (const QVector& x : points) {
    report.count("pointwise");
    const bool lhs = contains(result, x);
    const bool rhs = contains(b, t(x));
    if (lhs != rhs) {
      report.fail({"pointwise", "x=" + x.str(), "contains(B, T x)=" + bool_str(rhs),
                   "contains(result, x)=" + bool_str(lhs)});
    }
  }
  return report;
}

}  // namespace polyimage
