#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "molt/harness.hpp"
#include "molt/parallel.hpp"

namespace {

struct Common {
  std::string config;
  std::string out;
  int threads = 0;
};

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("--config", c.config, "run configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output directory (overrides [output] dir)");
  cmd->add_option("--threads", c.threads, "worker threads (overrides MOLT_THREADS)")
      ->check(CLI::PositiveNumber);
}

molt::RunConfig prepare(const Common &c) {
  molt::RunConfig cfg = molt::load_config(c.config);
  if (!c.out.empty())
    cfg.output_dir = c.out;
  if (c.threads > 0)
    molt::set_thread_count(c.threads);
  return cfg;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"MOL^T WENO transport and Vlasov-Poisson benchmark runner"};
  app.require_subcommand(1);

  Common run_opts;
  auto *run_cmd = app.add_subcommand("run", "run one configuration, write diagnostics.csv and final.csv");
  add_common(run_cmd, run_opts);

  Common conv_opts;
  auto *conv_cmd = app.add_subcommand("converge", "convergence study over the configured resolutions");
  add_common(conv_cmd, conv_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const auto cfg = prepare(run_opts);
      const auto s = molt::run(cfg);
      std::cout << cfg.problem << " " << cfg.resolutions.front().label() << ": " << s.steps
                << " steps to t = " << s.last.t << ", min over steps " << s.min_over_steps
                << "\n  " << s.diagnostics_csv.string() << "\n  " << s.final_csv.string() << "\n";
    } else {
      const auto cfg = prepare(conv_opts);
      const auto rows = molt::convergence_study(cfg);
      std::filesystem::create_directories(cfg.output_dir);
      const auto path = std::filesystem::path(cfg.output_dir) / "convergence.csv";
      std::ofstream os(path, std::ios::binary | std::ios::trunc);
      if (!os)
        throw std::runtime_error("cannot write " + path.string());
      molt::write_convergence_csv(rows, os);
      std::cout << cfg.problem << "\n" << molt::convergence_table(rows) << "  " << path.string() << "\n";
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
