#include <iostream>

#include <CLI11.hpp>

#include "cli_support.hpp"
#include "commands.hpp"
#include "infoflow/error.hpp"

namespace {

int exit_code_for(infoflow::Errc code) {
  using infoflow::Errc;
  switch (code) {
    case Errc::kInvalidArgument:
    case Errc::kNTooLarge:
      return infoflow::cli::kExitUsage;
    case Errc::kDivergedTrajectory:
    case Errc::kSystemTooLarge:
    case Errc::kUnfittedNull:
      return infoflow::cli::kExitVerification;
    default:
      return infoflow::cli::kExitData;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and estimated multivariate information flows"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "infoflow 0.1.0");
  app.fallthrough();
  app.config_formatter(std::make_shared<infoflow::cli::JsonConfig>(&app));
  app.set_config("--config", "", "JSON run configuration for the subcommand; explicit flags override it");
  int exit_code = infoflow::cli::kExitOk;
  infoflow::cli::add_commands(app, exit_code);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : infoflow::cli::kExitUsage;
  } catch (const infoflow::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return infoflow::cli::kExitData;
  }
  return exit_code;
}
