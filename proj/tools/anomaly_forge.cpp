#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "anomaly/driver.hpp"

namespace cli = anomaly::cli;

namespace {

anomaly::Sign parse_sign(const std::string& s) {
  if (s == "plus") return anomaly::Sign::plus;
  if (s == "minus") return anomaly::Sign::minus;
  throw cli::UsageError("--sign must be plus or minus");
}

anomaly::TwoCocycleVariant parse_variant(const std::string& s) {
  if (s == "std") return anomaly::TwoCocycleVariant::standard;
  if (s == "kac") return anomaly::TwoCocycleVariant::kac;
  throw cli::UsageError("--variant must be std or kac");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact anomaly cocycles of even lattices", "anomaly-forge"};
  app.set_version_flag("--version", cli::kToolVersion);

  std::string command, gram, variant = "std", sign = "minus", format = "json";
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  std::vector<long> denominators = anomaly::default_denominators();
  bool inject_fault = false;

  app.add_option("command", command, "analyze | verify | decompose | restrict | classify | selftest")
      ->required()
      ->check(CLI::IsMember({"analyze", "verify", "decompose", "restrict", "classify", "selftest"}));
  app.add_option("--gram", gram, "lattice: JSON file, inline JSON {\"gram\": [[...]]}, or preset A1|A2|A3|D4|E8|U");
  app.add_option("--variant", variant, "two-cocycle variant")->check(CLI::IsMember({"std", "kac"}));
  app.add_option("--sign", sign, "branch of the anomaly cocycle")->check(CLI::IsMember({"plus", "minus"}));
  app.add_option("--seed", seed, "PRNG seed");
  app.add_option("--samples", samples, "samples per randomized check")->check(CLI::PositiveNumber);
  app.add_option("--denominators", denominators, "denominators of sampled torus coordinates")->delimiter(',');
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "markdown"}));
  app.add_flag("--inject-fault", inject_fault, "replace the object under test by a known-bad one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::exit_usage;
  }

  cli::JobSpec job;
  try {
    job.command = cli::parse_command(command);
    job.variant = parse_variant(variant);
    job.sign = parse_sign(sign);
    job.seed = seed;
    job.samples = samples;
    job.denominators = denominators;
    job.format = format == "json" ? cli::Format::json : cli::Format::markdown;
    job.inject_fault = inject_fault;
    if (!gram.empty()) job.gram = cli::read_gram(gram);
    cli::Report report = cli::run(job);
    std::cout << cli::render(report);
    return report.exit_code();
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return cli::exit_usage;
  } catch (const anomaly::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (job.format == cli::Format::json)
      std::cout << cli::error_json(job, anomaly::to_string(e.kind()), e.what()).dump(2) << "\n";
    return cli::exit_domain;
  }
}
