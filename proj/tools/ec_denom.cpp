// ec-denom: prime-denominator experiments on rational points of elliptic curves.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ecdenom/census.hpp"
#include "ecdenom/errors.hpp"
#include "ecdenom/lattice.hpp"
#include "ecdenom/report.hpp"
#include "ecdenom/torsion.hpp"

namespace {

constexpr int kInputError = 1;
constexpr int kInvariantViolation = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ecd::InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ecd::InputError("cannot write '" + path + "'");
  out << content;
}

ecd::CurveInput load_curve(const std::string& path) {
  try {
    return ecd::parse_curve_input(read_file(path));
  } catch (const ecd::InputError& e) {
    throw ecd::InputError(path + ": " + e.what());
  }
}

const ecd::Point& generator_at(const ecd::CurveInput& input, std::size_t index) {
  if (index >= input.generators.size()) {
    throw ecd::InputError("--gen-index " + std::to_string(index) + " out of range (file has " +
                          std::to_string(input.generators.size()) + " generators)");
  }
  return input.generators[index];
}

ecd::MWBasis basis_for(const ecd::CurveInput& input) {
  return ecd::make_basis(input.curve, input.generators, ecd::torsion_subgroup(input.curve));
}

void echo_minimality(const ecd::CurveInput& input) {
  std::cerr << "curve " << input.label.value_or("(unlabelled)") << ": minimal model "
            << (input.minimal ? "asserted" : "NOT asserted") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Denominators z(P) of rational points on integral Weierstrass curves"};
  app.require_subcommand(1);

  std::string curve_path;
  std::string max_z_text;
  std::size_t extra_shells = 2;
  std::string out_format = "csv";
  std::string svg_path;
  double kappa = 1.0;

  auto* census = app.add_subcommand("census", "count points with z(P) <= Z and prime z(P)");
  census->add_option("--curve", curve_path, "JSON curve file")->required();
  census->add_option("--max-z", max_z_text, "cap Z (digits, 1e30 or 10^30)")->required();
  census->add_option("--extra-shells", extra_shells, "empty shells scanned before stopping")
      ->capture_default_str();
  census->add_option("--out", out_format, "report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  census->add_option("--svg", svg_path, "also write a log-scale chart here");
  census->add_option("--kappa", kappa, "constant for the overlaid heuristic")->capture_default_str();

  auto* torsion = app.add_subcommand("torsion", "torsion subgroup via Nagell-Lutz");
  torsion->add_option("--curve", curve_path, "JSON curve file")->required();

  std::size_t gen_index = 0;
  std::int64_t nmax = 0;
  std::int64_t nmin = 0;
  auto* verify = app.add_subcommand("verify", "divisibility, lemma and primitive-divisor reports");
  verify->add_option("--curve", curve_path, "JSON curve file")->required();
  verify->add_option("--gen-index", gen_index, "generator to use")->required();
  verify->add_option("--nmax", nmax, "largest multiple")->required()->check(CLI::PositiveNumber);

  auto* fit = app.add_subcommand("fit-growth", "fit log z(nQ) against n^2");
  fit->add_option("--curve", curve_path, "JSON curve file")->required();
  fit->add_option("--gen-index", gen_index, "generator to use")->required();
  fit->add_option("--nmin", nmin, "first multiple")->required();
  fit->add_option("--nmax", nmax, "last multiple")->required();

  std::size_t rank = 0;
  auto* predict = app.add_subcommand("predict", "heuristic count of prime denominators");
  predict->add_option("--rank", rank, "Mordell-Weil rank r")->required();
  predict->add_option("--max-z", max_z_text, "cap Z (digits, 1e30 or 10^30)")->required();
  predict->add_option("--kappa", kappa, "proportionality constant")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*census) {
      ecd::CurveInput input = load_curve(curve_path);
      echo_minimality(input);
      ecd::Integer max_z = ecd::parse_natural(max_z_text);
      ecd::EnumerationOptions options;
      options.extra_shells = extra_shells;
      options.threads = ecd::threads_from_env(0);
      ecd::CensusResult result = ecd::run_census(basis_for(input), max_z, options);
      if (out_format == "json") {
        std::cout << ecd::dump_canonical(ecd::census_json(result, input));
      } else {
        std::cout << ecd::census_csv(result);
      }
      if (!svg_path.empty()) write_file(svg_path, ecd::census_svg(result, kappa));
      std::cerr << "total " << result.total_count << ", prime " << result.prime_count
                << ", shells " << result.shells_visited << "\n";
    } else if (*torsion) {
      ecd::CurveInput input = load_curve(curve_path);
      std::cout << ecd::dump_canonical(ecd::torsion_json(ecd::torsion_subgroup(input.curve)));
    } else if (*verify) {
      ecd::CurveInput input = load_curve(curve_path);
      echo_minimality(input);
      ecd::DivReport report = ecd::verify_all(input.curve, generator_at(input, gen_index), nmax);
      std::cout << ecd::dump_canonical(ecd::div_report_json(report));
      if (!report.divisibility_failures.empty()) {
        std::cerr << "error: " << report.divisibility_failures.size()
                  << " divisibility failures (z(rQ) must divide z(nQ) when r | n)\n";
        return kInvariantViolation;
      }
    } else if (*fit) {
      ecd::CurveInput input = load_curve(curve_path);
      ecd::MWBasis basis = ecd::make_basis(input.curve, input.generators, ecd::trivial_torsion());
      generator_at(input, gen_index);
      std::cout << ecd::dump_canonical(
          ecd::growth_json(ecd::fit_growth(basis, gen_index, nmin, nmax)));
    } else if (*predict) {
      ecd::Integer max_z = ecd::parse_natural(max_z_text);
      std::cout << ecd::dump_canonical(
          ecd::prediction_json(ecd::heuristic_count(rank, max_z, kappa)));
    }
  } catch (const ecd::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariantViolation;
  } catch (const ecd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
