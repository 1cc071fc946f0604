#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "hkc/error.hpp"
#include "hkc/montecarlo.hpp"
#include "hkc/trial.hpp"

namespace hkc {

using ordered_json = nlohmann::ordered_json;

/// Invalid configuration; `pointer` is the JSON pointer of the offending key.
class ConfigError : public UsageError {
 public:
  ConfigError(std::string pointer, const std::string& message)
      : UsageError("config error at " + (pointer.empty() ? std::string("/") : pointer) + ": " +
                   message),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

struct CliConfig {
  ExperimentSpec experiment;
  /// Normalised parameters, echoed into every output document.
  ordered_json echo;
};

/// Validates `doc` against the config schema and resolves it. Relative graph
/// file paths are taken relative to `base_dir`. `seed_override` replaces the
/// "seed" key when set.
CliConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir,
                       std::optional<std::uint64_t> seed_override = std::nullopt);

CliConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir,
                            std::optional<std::uint64_t> seed_override = std::nullopt);

CliConfig load_config_file(const std::filesystem::path& path,
                           std::optional<std::uint64_t> seed_override = std::nullopt);

/// Value of HKC_SEED, if set. Throws ConfigError when it is not a uint64.
std::optional<std::uint64_t> seed_from_env();

ordered_json report_to_json(const MonteCarloReport& report, const CliConfig& config);
ordered_json trial_to_json(const TrialOutcome& outcome, const CliConfig& config);
ordered_json bound_to_json(const CliConfig& config);

/// Serialises with every floating-point number in 17-significant-digit form.
std::string dump_json(const ordered_json& value, int indent = 2);

}  // namespace hkc
