#include "polyimage/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "polyimage/errors.hpp"
#include "polyimage/io.hpp"
#include "polyimage/oracle.hpp"
#include "polyimage/polyhedron.hpp"
#include "polyimage/projection.hpp"

namespace polyimage::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Settings {
  std::string poly;
  std::string map;
  std::string result;
  std::string point;
  bool minimize = false;
  bool certificates = false;
  bool onto_range = false;
  bool json = false;
  std::string kind = "image";
  std::optional<std::size_t> verify_samples;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::int64_t radius = 3;
};

int run_image(const Settings& s, std::ostream& out, std::ostream& err) {
  const HPolyhedron a = parse_polyhedron(read_file(s.poly));
  const LinMap t = parse_map(read_file(s.map));
  ImageOptions options;
  if (s.minimize) options.redundancy = RedundancyMode::Always;

  CertifiedPolyhedron result;
  std::optional<std::vector<Certificate>> certs;
  if (s.onto_range) {
    if (s.certificates) throw Error("--certificates is not available with --onto-range");
    result.polyhedron = image_onto_range(t, a, options);
    if (s.minimize) result.polyhedron = remove_redundancy(result.polyhedron);
  } else {
    result = image(t, a, options);
    certs = result.certificates;
  }
  out << (s.certificates ? format_certified(result) : format_polyhedron(result.polyhedron));

  if (s.verify_samples) {
    const SampleSpec spec{s.seed, *s.verify_samples, s.radius};
    const VerificationReport report = verify_image(t, a, result.polyhedron, certs, spec);
    err << report.to_text();
    if (!report.passed()) return kVerificationFailed;
  }
  return kSuccess;
}

int run_verify(const Settings& s, std::ostream& out) {
  const HPolyhedron source = parse_polyhedron(read_file(s.poly));
  const LinMap t = parse_map(read_file(s.map));
  const std::string result_text = read_file(s.result);
  const HPolyhedron result = parse_polyhedron(result_text);
  const SampleSpec spec{s.seed, s.samples, s.radius};

  VerificationReport report;
  if (s.kind == "preimage") {
    report = verify_preimage(t, source, result, spec);
  } else {
    std::optional<std::vector<Certificate>> certs;
    const auto entries = parse_certificates(result_text);
    if (!entries.empty()) {
      certs.emplace();
      for (std::size_t k = 0; k < entries.size(); ++k) {
        if (k >= result.size() || !(entries[k].first == result.row(k))) {
          throw Error("certificate " + std::to_string(k) + " does not match row " +
                      std::to_string(k) + " of the result");
        }
        certs->push_back(entries[k].second);
      }
    }
    report = verify_image(t, source, result, certs, spec);
  }
  out << (s.json ? report.to_json() : report.to_text());
  return report.passed() ? kSuccess : kVerificationFailed;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact images and preimages of H-polyhedra under linear maps", "polyimage"};
  app.require_subcommand(1);
  Settings s;

  auto* image_cmd = app.add_subcommand("image", "Compute T(A) for a surjective map T");
  image_cmd->add_option("--poly", s.poly, "Polyhedron A (JSON)")->required();
  image_cmd->add_option("--map", s.map, "Linear map T (JSON)")->required();
  image_cmd->add_flag("--minimize", s.minimize, "Remove redundant rows between steps and at the end");
  image_cmd->add_flag("--certificates", s.certificates, "Emit a certificate per output row");
  image_cmd->add_flag("--onto-range", s.onto_range,
                      "Accept non-surjective maps by working in the range of T");
  image_cmd->add_option("--verify", s.verify_samples, "Audit the result with N samples per property");
  image_cmd->add_option("--seed", s.seed, "Sampling seed");
  image_cmd->add_option("--radius", s.radius, "Sampling box radius")->check(CLI::PositiveNumber);

  auto* preimage_cmd = app.add_subcommand("preimage", "Compute T^-1(B)");
  preimage_cmd->add_option("--poly", s.poly, "Polyhedron B (JSON)")->required();
  preimage_cmd->add_option("--map", s.map, "Linear map T (JSON)")->required();

  auto* member_cmd = app.add_subcommand("member", "Test whether a point lies in P");
  member_cmd->add_option("--poly", s.poly, "Polyhedron P (JSON)")->required();
  member_cmd->add_option("--point", s.point, "Comma-separated rationals, e.g. 1/2,0")->required();

  auto* empty_cmd = app.add_subcommand("empty", "Test whether P is empty");
  empty_cmd->add_option("--poly", s.poly, "Polyhedron P (JSON)")->required();

  auto* normalize_cmd = app.add_subcommand("normalize", "Print P in canonical form");
  normalize_cmd->add_option("--poly", s.poly, "Polyhedron P (JSON)")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Audit a computed image or preimage");
  verify_cmd->add_option("--poly", s.poly, "Source polyhedron (A for images, B for preimages)")
      ->required();
  verify_cmd->add_option("--map", s.map, "Linear map T (JSON)")->required();
  verify_cmd->add_option("--result", s.result, "Result to audit (JSON)")->required();
  verify_cmd->add_option("--samples", s.samples, "Samples per property")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", s.seed, "Sampling seed");
  verify_cmd->add_option("--radius", s.radius, "Sampling box radius")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--kind", s.kind, "What the result claims to be")
      ->check(CLI::IsMember({"image", "preimage"}));
  verify_cmd->add_flag("--json", s.json, "Machine-readable report");

  // CLI11 consumes its argument vector from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.get_name() << ": " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (image_cmd->parsed()) return run_image(s, out, err);
    if (preimage_cmd->parsed()) {
      const HPolyhedron b = parse_polyhedron(read_file(s.poly));
      out << format_polyhedron(preimage(parse_map(read_file(s.map)), b));
      return kSuccess;
    }
    if (member_cmd->parsed()) {
      const HPolyhedron p = parse_polyhedron(read_file(s.poly));
      out << (contains(p, parse_point(s.point)) ? "true" : "false") << '\n';
      return kSuccess;
    }
    if (empty_cmd->parsed()) {
      out << (is_empty(parse_polyhedron(read_file(s.poly))) ? "true" : "false") << '\n';
      return kSuccess;
    }
    if (normalize_cmd->parsed()) {
      out << format_polyhedron(normalize_rows(parse_polyhedron(read_file(s.poly))));
      return kSuccess;
    }
    return run_verify(s, out);
  } catch (const NotSurjective& e) {
    err << e.what() << '\n';
    return kNotSurjective;
  } catch (const ParseError& e) {
    err << "ParseError: " << e.what() << " (token '" << e.token() << "', byte " << e.offset()
        << ")\n";
    return kInputError;
  } catch (const Error& e) {
    err << "Error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace polyimage::cli
