// kfid command-line front end. Talks to the library exclusively through the
// C API in kfid.h.
//
//   kfid <command> --config PATH [--set key=value ...] [--out DIR]
//        [--threads N] [--echo-config]
//   kfid --list-models

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kfid.h"

namespace {

constexpr const char* kCommands[] = {"fidelity-map", "gap-map",       "chern",
                                     "z2",           "segment",       "critical-line",
                                     "counterexamples", "ising"};

void list_models() {
  std::printf("%-24s %5s %5s  %s\n", "model", "dim_k", "dim_h", "parameters (* = homogeneous-linear)");
  int n = kfid_model_count();
  for (int i = 0; i < n; ++i) {
    std::string params;
    for (int p = 0; p < kfid_model_param_count(i); ++p) {
      if (p) params += ", ";
      params += kfid_model_param_name(i, p);
      if (kfid_model_param_linear(i, p) == 1) params += "*";
    }
    std::printf("%-24s %5d %5d  %s\n", kfid_model_id(i), kfid_model_dim_k(i), kfid_model_dim_h(i),
                params.c_str());
  }
  std::printf("%-24s %5d %5d  %s\n", "triplet_product", 2, 3,
              "t*, mu*, m_z*, delta_t* (F = F_up * F_down)");
}

int fail_with(kfid_status status) {
  std::fprintf(stderr, "error (%s): %s\n", kfid_status_name(status), kfid_last_error());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momentum-resolved fidelity scans for two-band lattice models"};
  app.require_subcommand(0, 1);

  bool list = false;
  app.add_flag("--list-models", list, "print the model catalog and exit");

  struct Opts {
    std::string config;
    std::vector<std::string> sets;
    std::string out_dir;
    int threads = 1;
    bool echo = false;
  } opts;

  std::vector<CLI::App*> subs;
  for (const char* name : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opts.config, "job config file")->required();
    sub->add_option("--set", opts.sets, "override a config key (key=value)");
    sub->add_option("--out", opts.out_dir, "directory prefix for artifact paths");
    sub->add_option("--threads", opts.threads, "grid worker count")->check(CLI::PositiveNumber);
    sub->add_flag("--echo-config", opts.echo, "print the effective config before running");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  if (list) {
    list_models();
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::fprintf(stderr, "%s\n", app.help().c_str());
    return 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  kfid_job* job = nullptr;
  kfid_status st = kfid_job_parse_file(opts.config.c_str(), &job);
  if (st != KFID_OK) return fail_with(st);
  std::unique_ptr<kfid_job, decltype(&kfid_job_free)> guard(job, &kfid_job_free);

  for (const std::string& kv : opts.sets)
    if ((st = kfid_job_set(job, kv.c_str())) != KFID_OK) return fail_with(st);
  if (command != kfid_job_command(job)) {
    std::fprintf(stderr, "error: config declares command \"%s\" but the subcommand is \"%s\"\n",
                 kfid_job_command(job), command.c_str());
    return 1;
  }
  if (!opts.out_dir.empty() && (st = kfid_job_set_out_dir(job, opts.out_dir.c_str())) != KFID_OK)
    return fail_with(st);
  if ((st = kfid_job_set_workers(job, opts.threads)) != KFID_OK) return fail_with(st);

  if (opts.echo) {
    char* text = nullptr;
    if ((st = kfid_job_format(job, &text)) != KFID_OK) return fail_with(st);
    std::fputs(text, stdout);
    kfid_string_free(text);
  }

  if ((st = kfid_job_run(job)) != KFID_OK) return fail_with(st);

  std::fputs(kfid_job_summary(job), stdout);
  for (int i = 0; i < kfid_job_artifact_count(job); ++i)
    std::printf("wrote %s\n", kfid_job_artifact_path(job, i));
  return 0;
}
