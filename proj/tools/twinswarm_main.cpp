// twinswarm: run swarm-localization batches, emit built-in scenarios, and
// validate configuration files.
//
//   twinswarm scenarios                      list built-in scenarios
//   twinswarm scenarios d2d-sweep -o s.json  write one as a config document
//   twinswarm validate s.json                parse and check only
//   twinswarm run s.json -o results.csv [--override agent_count=10]
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "twinswarm/config_io.hpp"
#include "twinswarm/errors.hpp"
#include "twinswarm/montecarlo.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int fail(std::string_view kind, std::string message, int code) {
    std::replace(message.begin(), message.end(), '\n', ' ');
    std::cerr << "twinswarm: " << kind << ": " << message << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Swarm localization under D2D, cellular and digital-twin communication"};
    app.set_version_flag("--version", std::string(twinswarm::version()));
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path;
    std::string summary_path;
    std::vector<std::string> overrides;
    std::size_t threads = 0;

    auto* run = app.add_subcommand("run", "Run a batch and write a results file");
    run->add_option("config", config_path, "Config document or previous results file")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("-o,--output", output_path, "Results file (CSV with # metadata header)")
        ->required();
    run->add_option("--summary", summary_path, "Optional per-spec aggregate curve CSV");
    run->add_option("--override", overrides, "dotted.key=value, applied in order after parsing")
        ->take_all();
    run->add_option("-j,--threads", threads, "Worker threads (default: $TWINSWARM_THREADS or all cores)");

    std::string scenario_name;
    std::string scenario_out;
    auto* scenarios = app.add_subcommand("scenarios", "List built-in scenarios or emit one");
    scenarios->add_option("name", scenario_name, "Scenario to emit");
    scenarios->add_option("-o,--output", scenario_out, "Write the document here instead of stdout");

    auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
    validate->add_option("config", config_path, "Config document")->required()->check(CLI::ExistingFile);
    validate->add_option("--override", overrides, "dotted.key=value")->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage-error", e.what(), kExitConfig);
    }

    try {
        if (*scenarios) {
            if (scenario_name.empty()) {
                for (const std::string& n : twinswarm::scenario_names()) {
                    std::cout << n << '\n';
                }
                return 0;
            }
            const std::string doc = twinswarm::scenario_document(scenario_name);
            if (scenario_out.empty()) {
                std::cout << doc;
            } else {
                twinswarm::write_file_atomically(scenario_out, doc);
            }
            return 0;
        }

        const twinswarm::BatchConfig batch = twinswarm::load_config(config_path, overrides);
        if (*validate) {
            const auto specs = twinswarm::expand_specs(batch);
            std::cout << "ok: " << specs.size() << " specification(s) x " << batch.num_runs
                      << " run(s)\n";
            return 0;
        }

        const twinswarm::BatchResult result = twinswarm::run_batch(batch, {threads});
        std::ostringstream table;
        twinswarm::write_results(table, batch, result);
        std::string summary;
        if (!summary_path.empty()) {
            std::ostringstream s;
            twinswarm::write_summary(s, result);
            summary = s.str();
        }
        twinswarm::write_file_atomically(output_path, table.str());
        if (!summary_path.empty()) {
            twinswarm::write_file_atomically(summary_path, summary);
        }

        for (const auto& spec : result.specs) {
            std::cout << "spec " << spec.spec_index << ": mean final distance "
                      << twinswarm::format_double(spec.mean_final_distance) << " m (se "
                      << twinswarm::format_double(spec.std_error_final_distance)
                      << "), mean rounds " << twinswarm::format_double(spec.mean_rounds_executed);
            if (spec.converged_fraction) {
                std::cout << ", converged " << twinswarm::format_double(*spec.converged_fraction);
            }
            std::cout << '\n';
        }
        return 0;
    } catch (const twinswarm::ConfigError& e) {
        return fail("config-error", e.what(), kExitConfig);
    } catch (const std::exception& e) {
        return fail("runtime-error", e.what(), kExitRuntime);
    }
}
