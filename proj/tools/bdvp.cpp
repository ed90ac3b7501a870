// Command-line front end: simulate | sweep-t | encode | selftest.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bdvp/cli_core.hpp"
#include "bdvp/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Block-diagonalized vector-perturbation BER simulator"};
  app.set_version_flag("--version", std::string(bdvp::kVersion));
  app.require_subcommand(1);

  bdvp::RunOptions run;
  std::uint64_t seed_value = 0;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the configured BER sweep and write a CSV");
  simulate->add_option("--config", run.config_path, "experiment config file")
      ->required();
  simulate->add_option("--out", run.out_path, "output CSV path")->required();
  CLI::Option* sim_seed =
      simulate->add_option("--seed", seed_value, "override the config seed");
  simulate->add_option("--threads", run.threads,
                       "worker threads (0 = all cores)");

  std::vector<int> a_list;
  CLI::App* sweep = app.add_subcommand(
      "sweep-t", "Repeat the sweep for several candidate radii");
  sweep->add_option("--config", run.config_path, "experiment config file")
      ->required();
  sweep->add_option("--out", run.out_path, "output CSV path")->required();
  sweep->add_option("--a-list", a_list,
                    "candidate radii to sweep (e.g. --a-list 1 2 3)")
      ->delimiter(',');
  CLI::Option* sweep_seed =
      sweep->add_option("--seed", seed_value, "override the config seed");
  sweep->add_option("--threads", run.threads, "worker threads (0 = all cores)");

  bdvp::EncodeOptions enc;
  CLI::App* encode = app.add_subcommand(
      "encode", "Encode one vector and print the chosen perturbation");
  encode->add_option("--lower", enc.lower_entries,
                     "row-major search-factor entries (N*N values)")
      ->delimiter(',');
  CLI::Option* enc_seed = encode->add_option(
      "--channel-seed", enc.channel_seed,
      "draw a random channel instead of giving --lower");
  encode->add_option("--s", enc.s, "data vector (comma separated)")
      ->delimiter(',')
      ->required();
  encode->add_option("--tau", enc.tau, "perturbation modulus");
  encode->add_option("--a", enc.a, "candidate radius");
  encode->add_option("--encoder", enc.encoder,
                     "thp | fse | qrdme | exhaustive");
  encode->add_option("--m", enc.m, "search breadth (0 = T)");
  encode->add_option("--p", enc.p, "full-expansion depth");

  app.add_subcommand("selftest", "Run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return bdvp::kExitOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e);
    return bdvp::kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bdvp::kExitUsage;
  }

  if (simulate->parsed()) {
    run.seed_override = sim_seed->count() > 0;
    run.seed = seed_value;
    return bdvp::cmd_simulate(run, std::cerr);
  }
  if (sweep->parsed()) {
    run.seed_override = sweep_seed->count() > 0;
    run.seed = seed_value;
    return bdvp::cmd_sweep_t(run, a_list, std::cerr);
  }
  if (encode->parsed()) {
    enc.use_channel_seed = enc_seed->count() > 0;
    return bdvp::cmd_encode(enc, std::cout, std::cerr);
  }
  return bdvp::cmd_selftest(std::cout);
}
