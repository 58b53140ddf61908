// Command-line front end. Talks to the library only through driftlab.h.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "driftlab/driftlab.h"

namespace {

int exit_code_for(dl_status s) {
    switch (s) {
        case DL_OK: return 0;
        case DL_ERR_CONFIG:
        case DL_ERR_INVALID_ARGUMENT:
        case DL_ERR_DOMAIN: return 2;
        default: return 1;
    }
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"driftlab: kernels, operators and verification suites for the drift Laplacian"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = 1;
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", config_path, "key = value config file");
        if (config_required) c->required();
        sub->add_option("--out", out_dir, "output directory (default: CSV to stdout)");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 1024));
        sub->add_option("--seed", seed, "seed (overrides the config)");
    };

    auto* eval = app.add_subcommand("eval", "evaluate kernels at listed points");
    auto* apply = app.add_subcommand("apply", "apply an operator to a source at listed points");
    auto* levelset = app.add_subcommand("levelset", "level-set measures of an operator over a region");
    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_common(eval, true);
    add_common(apply, true);
    add_common(levelset, true);
    add_common(verify, false);

    std::string suite;
    std::optional<int> n, k, q, samples;
    std::optional<std::string> op, kappa, eta;
    verify->add_option("suite", suite, "suite name, or 'all'");
    verify->add_option("--n", n, "dimension");
    verify->add_option("--k", k, "order");
    verify->add_option("--q", q, "drift order");
    verify->add_option("--op", op, "operator for sharpness / weak_type: riesz, HD, GD, hk, Hk");
    verify->add_option("--kappa", kappa, "kappa list for the orlicz suite");
    verify->add_option("--eta", eta, "eta list");
    verify->add_option("--samples", samples, "samples per eta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::string command;
    for (auto* sub : {eval, apply, levelset, verify})
        if (sub->parsed()) command = sub->get_name();

    std::string text;
    if (!config_path.empty() && !read_file(config_path, text)) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return 2;
    }
    if (command == "verify") {
        if (suite.empty()) {
            std::cerr << "error: no suite selected (try 'driftlab verify all')\n" << verify->help();
            return 2;
        }
        std::ostringstream extra;
        if (n) extra << "n = " << *n << "\n";
        if (k) extra << "k = " << *k << "\n";
        if (q) extra << "q = " << *q << "\n";
        if (op) extra << "op = " << *op << "\n";
        if (kappa) extra << "kappa = " << *kappa << "\n";
        if (eta) extra << "eta = " << *eta << "\n";
        if (samples) extra << "samples = " << *samples << "\n";
        text += "\n" + extra.str();
    }

    dl_report* report = nullptr;
    const dl_status st = dl_run(command.c_str(), text.c_str(), suite.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(),
                                threads, seed.value_or(0), seed.has_value(), &report);
    if (st != DL_OK) {
        std::cerr << "error: " << dl_last_error() << "\n";
        return exit_code_for(st);
    }
    std::cout << dl_report_text(report);
    const int code = dl_report_passed(report) ? 0 : 1;
    dl_report_destroy(report);
    return code;
}
