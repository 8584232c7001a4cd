#include "cli_support.hpp"

#include <sstream>

#include "infoflow/error.hpp"

namespace infoflow::cli {

namespace {

void flatten(const nlohmann::json& j, const std::string& name, const std::vector<std::string>& parents,
             std::vector<CLI::ConfigItem>& out) {
  if (j.is_object()) {
    std::vector<std::string> next = parents;
    if (!name.empty()) next.push_back(name);
    for (auto it = j.begin(); it != j.end(); ++it) flatten(*it, it.key(), next, out);
    return;
  }
  if (name.empty()) throw CLI::ConversionError("configuration must be a JSON object");
  CLI::ConfigItem item;
  item.name = name;
  item.parents = parents;
  auto scalar = [](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("unsupported configuration value " + v.dump());
  };
  if (j.is_null()) return;
  if (j.is_array()) {
    for (const auto& v : j) item.inputs.push_back(scalar(v));
  } else {
    item.inputs.push_back(scalar(j));
  }
  out.push_back(std::move(item));
}

nlohmann::json typed(const std::string& text) {
  nlohmann::json v = nlohmann::json::parse(text, nullptr, false);
  if (v.is_discarded() || !(v.is_number() || v.is_boolean())) return text;
  return v;
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool, bool, std::string) const {
  return run_config(*app, app->get_name()).dump(2);
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  nlohmann::json j;
  try {
    input >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ConversionError(std::string("invalid JSON configuration: ") + e.what());
  }
  std::vector<std::string> path;
  for (const CLI::App* app = root_; app != nullptr;) {
    const auto selected = app->get_subcommands();
    app = selected.empty() ? nullptr : selected.front();
    if (app) path.push_back(app->get_name());
  }
  std::vector<CLI::ConfigItem> items;
  flatten(j, "", path, items);
  return items;
}

nlohmann::json run_config(const CLI::App& app, const std::string& command) {
  nlohmann::json config = nlohmann::json::object();
  config["command"] = command;
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config" || opt->get_lnames().empty()) continue;
    const bool flag = opt->get_expected_min() == 0;
    if (flag) {
      config[name] = opt->count() > 0 && opt->as<bool>();
      continue;
    }
    std::vector<std::string> values;
    if (opt->count() > 0) {
      values = opt->results();
    } else if (!opt->get_default_str().empty()) {
      values = {opt->get_default_str()};
    }
    if (values.empty()) {
      config[name] = nullptr;
    } else if (opt->get_expected_max() > 1) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& v : split_list(values)) arr.push_back(typed(v));
      config[name] = arr;
    } else {
      config[name] = typed(values.back());
    }
  }
  return config;
}

Output::Output(const std::string& path) {
  if (path.empty() || path == "-") return;
  file_ = std::make_unique<std::ofstream>(path);
  if (!*file_) throw Error(Errc::kParseError, "cannot open '" + path + "' for writing");
}

std::string config_comment(const nlohmann::json& config) { return "config: " + config.dump(); }

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::stringstream ss(r);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
  }
  return out;
}

}  // namespace infoflow::cli
