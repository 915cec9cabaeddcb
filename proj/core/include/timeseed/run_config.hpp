#pragma once

#include <optional>
#include <string>
#include <vector>

#include "timeseed/integrator.hpp"
#include "timeseed/model.hpp"
#include "timeseed/sweep.hpp"

namespace timeseed {

enum class Command { Simulate, Spectrum, Sweep, Crit };

struct SpectrumJob {
    std::vector<int> sizes = {6, 10, 14, 18};   ///< total atom numbers N
    bool fit = false;
    int mu_im = 4;          ///< fit order for Im series
    int mu_re = 5;          ///< fit order for Re series
    bool cross_check = false;
};

struct CritJob {
    double lo = 0.0;
    double hi = 1.0;
    double tol = 1e-4;
};

/// Everything a command needs, assembled from a preset, a JSON config file,
/// and command-line flags (flags override file fields).
struct RunConfig {
    Command command = Command::Simulate;
    NetworkParams params;
    IntegrationConfig integration;
    std::optional<BlochState> initial;   ///< empty: polarized default
    std::optional<GridSpec> grid;
    SpectrumJob spectrum;
    CritJob crit;
    int threads = 1;

    void validate() const;
};

/// Named reproduction recipes: fig1, fig1f, fig2, fig3a, fig3e, appD.
/// Throws ConfigError for unknown names.
RunConfig preset(const std::string& name);

std::vector<std::string> preset_names();

/// Parses a JSON config document.  Malformed JSON raises ConfigError naming
/// the byte offset; schema violations raise ConfigError naming the field
/// path.
RunConfig config_from_json(const std::string& text);

}  // namespace timeseed
