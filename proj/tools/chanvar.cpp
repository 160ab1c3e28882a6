#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chanvar/cli.hpp"

namespace {

void add_point_options(CLI::App* sub, chanvar::cli::PointArgs& args) {
  sub->add_option("--state", args.state, "state: JSON file or preset:NAME[:k=v,...]")->required();
  sub->add_option("--channel", args.channel, "channel: JSON file or preset:NAME[:k=v,...]")->required();
  sub->add_option("--alpha", args.alpha, "alpha >= 0")->capture_default_str();
  sub->add_option("--beta", args.beta, "beta >= 0, alpha + beta <= 1")->capture_default_str();
  sub->add_flag("--json", args.json, "machine-readable output");
  sub->add_option("--out", args.out, "write the report to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel uncertainty toolkit: total, quantum and classical uncertainty of quantum channels"};
  app.require_subcommand(1);

  chanvar::cli::PointArgs unc_args;
  auto* unc = app.add_subcommand("uncertainty", "V, Q and C of a channel in a state");
  add_point_options(unc, unc_args);

  chanvar::cli::PointArgs bnd_args;
  auto* bnd = app.add_subcommand("bounds", "trade-off relations and entropy bounds");
  add_point_options(bnd, bnd_args);

  chanvar::cli::SweepArgs sw_args;
  auto* sw = app.add_subcommand("sweep", "grid evaluation over a state family, emitted as CSV");
  sw->add_option("--spec", sw_args.spec, "JSON sweep spec; flags override its fields");
  sw->add_option("--family", sw_args.family, "werner | isotropic | bloch-grid");
  sw->add_option("--channel", sw_args.channel, "channel: JSON file or preset:NAME[:k=v,...]");
  sw->add_option("--alpha", sw_args.alpha, "alpha grid start:stop:step or a single value");
  sw->add_option("--beta", sw_args.beta, "beta grid start:stop:step or a single value");
  sw->add_option("--param", sw_args.param, "family parameter grid start:stop:step");
  sw->add_option("--outputs", sw_args.outputs, "comma list of V,Q,C,Fe,Se,Ic,bounds");
  sw->add_option("--direction", sw_args.direction, "bloch-grid direction n1,n2,n3");
  sw->add_option("--threads", sw_args.threads, "worker threads, 0 = all cores")->capture_default_str();
  sw->add_flag("--json", sw_args.json, "JSON instead of CSV");
  sw->add_option("--out", sw_args.out, "output file (default stdout)");

  chanvar::cli::VerifyArgs ver_args;
  auto* ver = app.add_subcommand("verify", "seeded randomized property suite");
  ver->add_option("--seed", ver_args.seed, "base seed")->capture_default_str();
  ver->add_option("--samples", ver_args.samples, "samples per property")->capture_default_str()->check(CLI::PositiveNumber);
  ver->add_option("--dims", ver_args.dims, "dimensions, e.g. 2-4 or 2,3")->capture_default_str();
  ver->add_option("--channel", ver_args.channel, "run the suite against this channel instead of random ones");
  ver->add_flag("--json", ver_args.json, "machine-readable output");
  ver->add_option("--out", ver_args.out, "write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : chanvar::cli::kBadInput;
  }

  if (*unc) return chanvar::cli::cmd_uncertainty(unc_args, std::cout, std::cerr);
  if (*bnd) return chanvar::cli::cmd_bounds(bnd_args, std::cout, std::cerr);
  if (*sw) return chanvar::cli::cmd_sweep(sw_args, std::cout, std::cerr);
  return chanvar::cli::cmd_verify(ver_args, std::cout, std::cerr);
}
