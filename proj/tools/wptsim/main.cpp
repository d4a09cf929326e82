#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using wpt::cli::CommandResult;
using wpt::cli::RunConfig;

int run(const std::function<CommandResult()>& command, const std::string& out_dir) {
  try {
    CommandResult result = command();
    wpt::cli::write_outputs(result.files, out_dir);
    std::cout << result.report;
    for (const auto& [name, content] : result.files) {
      std::cout << "wrote " << (std::filesystem::path(out_dir) / name).string() << "\n";
    }
    return wpt::cli::kOk;
  } catch (const wpt::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wpt::cli::kValidation;
  } catch (const wpt::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return wpt::cli::kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wpt::cli::kValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled-resonator multi-transmitter wireless power transfer simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool svg = false;

  const auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "JSON run configuration");
    if (config_required) opt->required();
    sub->add_option("--out", out_dir, "output directory (default: config output.dir)");
    sub->add_flag("--svg", svg, "also write SVG plots");
  };

  auto* d0 = app.add_subcommand("d0", "uncoupling distance of two identical coils");
  add_common(d0, true);
  auto* curve = app.add_subcommand("coupling-curve", "coupling coefficient vs lateral offset");
  add_common(curve, true);
  auto* sweep = app.add_subcommand("sweep", "receiver-position sweep of the channel array");
  add_common(sweep, true);
  auto* compare = app.add_subcommand("compare", "array with repeaters vs conventional baseline");
  add_common(compare, true);
  auto* ingest = app.add_subcommand("ingest", "loaded efficiency from a two-port .s2p file");
  add_common(ingest, false);
  std::string touchstone;
  double load_ohm = 0.0;
  ingest->add_option("path", touchstone, "Touchstone .s2p file");
  ingest->add_option("--load-ohm", load_ohm, "load resistance (ohm)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wpt::cli::kValidation;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = wpt::cli::load_config(config_path);
  } catch (const wpt::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wpt::cli::kValidation;
  }
  if (svg) cfg.svg = true;
  if (out_dir.empty()) out_dir = cfg.output_dir.string();

  if (*d0) return run([&] { return wpt::cli::cmd_d0(cfg); }, out_dir);
  if (*curve) return run([&] { return wpt::cli::cmd_coupling_curve(cfg); }, out_dir);
  if (*sweep) return run([&] { return wpt::cli::cmd_sweep(cfg); }, out_dir);
  if (*compare) return run([&] { return wpt::cli::cmd_compare(cfg); }, out_dir);

  return run(
      [&] {
        wpt::cli::MeasurementSpec spec = cfg.measurement.value_or(wpt::cli::MeasurementSpec{});
        std::filesystem::path path = touchstone;
        if (path.empty() && !spec.touchstone.empty()) {
          path = cfg.source.parent_path() / spec.touchstone;
        }
        if (path.empty()) throw wpt::ValidationError("ingest needs a Touchstone file path");
        double r_load = load_ohm;
        if (!(r_load > 0.0) && spec.load) r_load = *spec.load;
        if (!(r_load > 0.0) && cfg.load && cfg.load->rule == wpt::cli::LoadRule::Fixed) {
          r_load = cfg.load->resistance;
        }
        return wpt::cli::cmd_ingest(path, r_load, spec);
      },
      out_dir);
}
