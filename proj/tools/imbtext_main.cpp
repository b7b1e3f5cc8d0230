#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "imbtext/parallel.hpp"
#include "imbtext/runner.hpp"

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void apply_env_overrides(imbtext::ExperimentConfig& config) {
    if (const char* seed = std::getenv("IMBTEXT_SEED"))
        config.master_seed = std::strtoull(seed, nullptr, 10);
    if (const char* workers = std::getenv("IMBTEXT_WORKERS"))
        imbtext::set_threads(int(std::strtol(workers, nullptr, 10)));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"imbalanced-text oversampling experiment harness"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run the experiment protocol from a config file");
    std::string config_path, out_dir;
    bool desk_scale = false;
    std::uint64_t seed_override = 0;
    run->add_option("--config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_flag("--desk-scale", desk_scale,
                  "shrink sizes/repetitions/replicates so the run finishes in minutes");
    run->add_option("--seed", seed_override, "override the master seed");
    bool stratify = false;
    run->add_flag("--stratify", stratify, "stratify splits by label (off by default)");

    // report
    auto* report = app.add_subcommand("report", "re-emit a report from stored results");
    std::string in_dir, format = "csv", report_out;
    report->add_option("--in", in_dir, "directory holding results.json")->required();
    report->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    report->add_option("--out", report_out, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            imbtext::ExperimentConfig config = imbtext::config_from_json(read_file(config_path));
            if (desk_scale) imbtext::apply_desk_scale(config);
            if (run->count("--seed") > 0) config.master_seed = seed_override;
            if (stratify) config.stratify_splits = true;
            apply_env_overrides(config);
            config.validate();

            imbtext::ExperimentResult result = imbtext::run_experiment(config);
            imbtext::write_experiment_outputs(result, out_dir);
            for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
            std::cout << "wrote " << result.cells.size() << " cells to " << out_dir << "\n";
        } else if (*report) {
            std::string results_text =
                read_file(std::filesystem::path(in_dir) / "results.json");
            auto parsed = nlohmann::json::parse(results_text);
            auto cells = imbtext::cells_from_json(parsed.at("cells").dump());

            std::ostringstream body;
            if (format == "csv")
                imbtext::emit_report_csv(cells, body);
            else
                body << imbtext::report_to_json(cells) << "\n";

            if (report_out.empty()) {
                std::cout << body.str();
            } else {
                std::ofstream out(report_out, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open " + report_out);
                out << body.str();
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
