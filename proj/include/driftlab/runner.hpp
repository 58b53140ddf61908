#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "driftlab/config.hpp"

namespace driftlab {

struct RunOptions {
    std::string out_dir;  // empty: CSV goes to RunReport::text
    int threads = 1;
    std::optional<std::uint64_t> seed;  // overrides the config's seed
};

struct RunReport {
    bool passed = true;  // false when a verify suite failed
    std::string text;    // CSV (eval/apply/levelset without out_dir) or markdown report
    std::vector<std::string> files;
};

// Numeric defaults shared by every command; echoed into output headers.
std::string run_defaults_text();

RunReport run_eval(const ConfigText& cfg, const RunOptions& opt);
RunReport run_apply(const ConfigText& cfg, const RunOptions& opt);
RunReport run_levelset(const ConfigText& cfg, const RunOptions& opt);
// `params` holds suite parameters as key = value lines.
RunReport run_verify(const std::string& suite, const ConfigText& params, const RunOptions& opt);

// command: eval | apply | levelset | verify.
RunReport run_command(const std::string& command, const std::string& config_text, const std::string& suite,
                      const RunOptions& opt);

}  // namespace driftlab
