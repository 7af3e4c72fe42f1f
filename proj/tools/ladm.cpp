// Command-line harness: run figure pipelines, export matrices, re-verify CSV output.
//
// Exit codes: 0 success, 2 bound-validity violation, 1 any other error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "ladm/config_io.hpp"
#include "ladm/experiments.hpp"

namespace {

constexpr int kExitViolation = 2;
constexpr int kExitError = 1;

void apply_thread_limit()
{
    if (const char* env = std::getenv("LADM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0)
            Eigen::setNbThreads(n);
    }
}

ladm::Scale parse_scale(const std::string& s)
{
    if (s == "desk")
        return ladm::Scale::Desk;
    if (s == "paper")
        return ladm::Scale::Paper;
    throw ladm::ConfigError("scale must be desk or paper, got " + s);
}

int parse_preset(const std::string& s)
{
    if (s.size() == 4 && s.rfind("fig", 0) == 0 && s[3] >= '1' && s[3] <= '5')
        return s[3] - '0';
    throw ladm::ConfigError("preset must be fig1..fig5, got " + s);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Admissible-subspace experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset_name;
    std::string scale_name = "desk";
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;

    auto* run = app.add_subcommand("run", "run a figure pipeline and write CSV files");
    run->add_option("--config", config_path, "key = value config file");
    run->add_option("--preset", preset_name, "fig1..fig5");
    run->add_option("--scale", scale_name, "desk or paper")->check(CLI::IsMember({"desk", "paper"}));
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seed", seed, "seed for the model and the starting block");

    std::string gen_config;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen-matrix", "write the model matrix A in binary form");
    gen->add_option("--config", gen_config, "key = value config file")->required();
    gen->add_option("--out", gen_out, "output file")->required();

    std::string verify_dir;
    auto* verify = app.add_subcommand("verify", "re-check bound validity on emitted CSV files");
    verify->add_option("--out", verify_dir, "directory holding fig*_plot*.csv")->required();

    CLI11_PARSE(app, argc, argv);
    apply_thread_limit();

    try {
        if (*run) {
            std::optional<ladm::KeyValueConfig> cfg;
            if (!config_path.empty())
                cfg = ladm::KeyValueConfig::load(config_path);
            int figure = 1;
            if (!preset_name.empty())
                figure = parse_preset(preset_name);
            else if (cfg && cfg->has("figure"))
                figure = static_cast<int>(cfg->get_int("figure"));
            ladm::ExperimentConfig exp = ladm::preset(figure, parse_scale(scale_name));
            if (cfg)
                ladm::apply_experiment_keys(*cfg, exp);
            exp.figure = figure;
            if (seed)
                exp.spec.seed = *seed;
            exp.output_dir = out_dir;

            const ladm::CurveSet curves = ladm::run_figure(exp);
            for (const std::string& n : curves.notes)
                std::cerr << "note: " << n << '\n';
            std::cout << "fig" << exp.figure << " (" << ladm::to_string(exp.method) << ", n=" << exp.spec.n
                      << ", q_max=" << exp.q_max << "): " << curves.plot1.rows.size() << " rows, "
                      << curves.violations << " bound violations, output in " << out_dir << '\n';
            return curves.violations > 0 ? kExitViolation : 0;
        }
        if (*gen) {
            const ladm::KeyValueConfig cfg = ladm::KeyValueConfig::load(gen_config);
            ladm::ExperimentConfig exp = ladm::preset(1, ladm::Scale::Desk);
            ladm::apply_experiment_keys(cfg, exp);
            const auto [model, env] = ladm::synth_model(exp.spec);
            ladm::write_matrix(gen_out, model.matrix());
            std::cout << "wrote " << model.size() << "x" << model.size() << " matrix to " << gen_out
                      << " (delta=" << env.delta << ", gamma=" << env.gamma << ")\n";
            return 0;
        }
        if (*verify) {
            const ladm::VerifyReport rep = ladm::verify_directory(verify_dir);
            for (const std::string& m : rep.messages)
                std::cout << m << '\n';
            if (rep.files == 0) {
                std::cerr << "no fig*_plot*.csv files in " << verify_dir << '\n';
                return kExitError;
            }
            std::cout << rep.violations << " violations in " << rep.files << " files\n";
            return rep.violations > 0 ? kExitViolation : 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return 0;
}
