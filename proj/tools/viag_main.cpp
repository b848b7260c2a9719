#include <CLI11.hpp>

#include "viag/run.hpp"

int main(int argc, char** argv) {
  viag::cli::RunManifest manifest;

  CLI::App app{
      "viag: optical response and Fraunhofer diffraction of a Lambda-type "
      "atomic ensemble driven by a photon-number-quantized standing-wave "
      "cavity mode"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", manifest.config_path,
                 "flat key-value configuration file");
  app.add_option("--out", manifest.out_dir, "output directory")
      ->capture_default_str();
  app.add_flag("--plot", manifest.plot, "render an SVG plot per table");
  app.add_flag("--log-y", manifest.log_y, "logarithmic intensity axis");
  app.add_flag("--deterministic", manifest.deterministic,
               "byte-identical reruns (outputs carry no timestamps)");
  app.add_option("--jobs", manifest.jobs,
                 "parallel workers (default: hardware concurrency)");
  app.add_option("--set", manifest.overrides,
                 "config override key=value (repeatable)")
      ->take_all();

  app.add_subcommand("chi", "susceptibility spectrum at x = Lambda/2");
  app.add_subcommand("transmission", "spatial transmission modulation");
  app.add_subcommand("diffraction", "Fraunhofer intensity profile");
  app.add_subcommand("first-order",
                     "first-order diffraction intensity (single point or "
                     "configured sweep)");
  auto* figure =
      app.add_subcommand("figure", "reference scenario (fig2..fig8 or all)");
  figure->add_option("name", manifest.figure, "figure name")->required();
  app.add_subcommand("validate",
                     "cross-check the closed-form susceptibility against the "
                     "steady-state oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  manifest.subcommand = app.get_subcommands().front()->get_name();
  return viag::cli::dispatch(manifest);
}
