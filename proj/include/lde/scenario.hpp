#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lde/errors.hpp"

namespace lde {

using Json = nlohmann::ordered_json;

enum class Verdict { ok, marginal, invalid };

std::string verdict_label(Verdict v);

// Weak-coupling diagnostic: the perturbative treatment needs the induced
// coupling small against the chain gap. ok below 0.1, marginal below 0.5,
// invalid above.
struct ValidityReport {
    double gap = 0.0;          // Delta, units J
    double max_coupling = 0.0; // max |J_ab|
    double ratio = 0.0;        // |J_ab| / Delta
    Verdict verdict = Verdict::ok;

    Json to_json() const;
};

ValidityReport perturbative_validity(double probe_strength, double chi0, double gap);

struct ScenarioOptions {
    std::filesystem::path output_dir = ".";
    int threads = 1;
    bool strict = false;           // fail (exit 3) on invalid validity verdicts
    std::ostream* progress = nullptr; // structured progress lines (stderr)
};

struct RunReport {
    std::filesystem::path output_file;
    std::size_t rows = 0;
    Json summary;
};

const std::vector<std::string>& scenario_names();

// Parse + strict-schema check; returns the config with defaults resolved.
// Unknown keys, wrong types and missing fields raise ConfigError.
Json validate_config(const Json& config);
Json validate_config_text(const std::string& text);

RunReport run_scenario(const Json& config, const ScenarioOptions& opts = {});
RunReport run_scenario_file(const std::filesystem::path& config_path,
                            const ScenarioOptions& opts = {});

} // namespace lde
