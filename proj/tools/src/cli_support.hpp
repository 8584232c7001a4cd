#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace infoflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitVerification = 3;

// Reads --config files as JSON. Top-level scalars and arrays bind to the
// options of the subcommand that owns --config; nested objects address
// subcommands by name.
// Reads a flat JSON object of option values. It is installed on the root
// app and applies its keys to the innermost selected subcommand.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}
  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

 private:
  const CLI::App* root_;
};

// Every long option of `app` (help and config excluded) with its effective
// value, plus the command path. Keys match the flag names, so the object can
// be fed back through --config.
nlohmann::json run_config(const CLI::App& app, const std::string& command);

// Writes to the path, or to stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path);
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

// "# config: {...}" comment line for CSV outputs.
std::string config_comment(const nlohmann::json& config);

// Splits "a,b,c" and repeated values into one list.
std::vector<std::string> split_list(const std::vector<std::string>& raw);

}  // namespace infoflow::cli
