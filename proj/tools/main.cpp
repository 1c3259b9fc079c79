#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

namespace {

using sp4tj::cli::Command;
using sp4tj::cli::Format;
using sp4tj::cli::RunConfig;

void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--q", c.q, "Field size: 3, 5, 7 or 11");
  app->add_option("--gamma", c.gamma, "Residue gamma in [1, q) defining psi");
  app->add_option("--out", c.out, "Write the report here (atomically) instead of stdout");
  const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};
  app->add_option("--format", c.format, "json, csv or text")->transform(CLI::CheckedTransformer(formats));
  app->add_option("--seed", c.seed, "Seed for sampled subgroup checks");
  app->add_flag("--no-timings", [&c](std::int64_t) { c.timings = false; }, "Omit timings for byte-stable reports");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  CLI::App app{"Twisted Jacquet modules of Sp4(F_q): verification harness"};
  app.set_version_flag("--version", sp4tj::cli::kVersion);
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  add_common(verify, config);
  verify->add_option("--suite", config.suite, "orbits, decomposability, tables, siegel, klingen or all");
  verify->add_flag("--deep", config.deep, "Allow theorem suites at q = 11");

  auto* tables = app.add_subcommand("tables", "Dump character tables");
  add_common(tables, config);
  tables->add_option("--group", config.group, "gl2, sl2, o2, t2, l or all");

  auto* orbits = app.add_subcommand("orbits", "Dump double cosets, orbits and stabilizers");
  add_common(orbits, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (tables->parsed()) config.command = Command::tables;
  if (orbits->parsed()) config.command = Command::orbits;
  if (config.command == Command::tables && config.format == Format::json && !tables->count("--format")) config.format = Format::csv;

  if (auto err = sp4tj::cli::validate(config)) {
    std::cerr << "sp4tj: " << *err << '\n';
    return 2;
  }
  try {
    const auto result = sp4tj::cli::run(config);
    const std::string text = sp4tj::cli::render(result, config);
    if (config.out.empty()) std::cout << text;
    else sp4tj::cli::write_atomic(config.out, text);
    if (!result.pass) std::cerr << "sp4tj: verification failed; see the report\n";
    return result.pass ? 0 : 1;
  } catch (const sp4tj::IntegralityError& e) {
    std::cerr << "sp4tj: integrality failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "sp4tj: " << e.what() << '\n';
    return 1;
  }
}
