// nashforge: command-line driver for the doubling / smoothing / genus toolkit.

#include <nashforge/commands.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>

namespace cli = nashforge::cli;

int main(int argc, char** argv) {
  CLI::App app{"nashforge: doubled polygons, smoothing kernels and genus tables"};
  app.require_subcommand(1);
  std::size_t threads = nashforge::default_thread_count();
  app.add_option("--threads", threads, "worker threads (default: NASHFORGE_THREADS or 1)");

  cli::GenusTableOptions gt;
  auto* c_gt = app.add_subcommand("genus-table", "print genus of D_s(P_n)");
  c_gt->add_option("--n-max", gt.n_max)->check(CLI::Range(3, 64));
  c_gt->add_option("--s-max", gt.s_max)->check(CLI::Range(2, 40));
  c_gt->add_flag("--paper", gt.paper, "reproduce the reference 5x6 table and diff against it");
  c_gt->add_option("--format", gt.format)->check(CLI::IsMember({"csv", "markdown"}));

  cli::VerifySmoothOptions vs;
  auto* c_vs = app.add_subcommand("verify-smooth", "sample the doubled variety and check smoothness");
  c_vs->add_option("--n", vs.n);
  c_vs->add_option("--s", vs.s);
  c_vs->add_option("--samples", vs.samples);
  c_vs->add_option("--seed", vs.seed);
  c_vs->add_option("--input", vs.input, "polygon JSON")->check(CLI::ExistingFile);
  c_vs->add_option("--partition", vs.partition, "classes as 1-based lists, e.g. 1,3/2,4");
  c_vs->add_flag("--allow-invalid", vs.allow_invalid, "skip the compatibility check");

  cli::KernelCheckOptions kc;
  auto* c_kc = app.add_subcommand("kernel-check", "certify the smoothing kernels");
  c_kc->add_option("--k-max", kc.k_max)->check(CLI::Range(1, 12));
  c_kc->add_option("--grid", kc.grid);

  cli::FoldDemoOptions fd;
  auto* c_fd = app.add_subcommand("fold-demo", "fold R or R^2 onto the half-line / quadrant");
  c_fd->add_option("--dim", fd.dim);
  c_fd->add_option("--a", fd.a);
  c_fd->add_option("--k", fd.k);
  c_fd->add_option("--grid", fd.grid);
  c_fd->add_option("--csv", fd.csv);

  cli::MostowskiDemoOptions md;
  auto* c_md = app.add_subcommand("mostowski-demo", "closed embedding of [0,1) or the open disk");
  c_md->add_option("--dim", md.dim);
  c_md->add_option("--depth", md.depth);
  c_md->add_option("--seed", md.seed);
  c_md->add_option("--csv", md.csv);

  cli::MeshOptions ms;
  auto* c_ms = app.add_subcommand("mesh", "triangulate the glued surface");
  c_ms->add_option("--n", ms.n);
  c_ms->add_option("--s", ms.s);
  c_ms->add_option("--resolution", ms.resolution);
  c_ms->add_option("--format", ms.format)->check(CLI::IsMember({"obj", "ply"}));
  c_ms->add_option("--projection", ms.projection)->check(CLI::IsMember({"first3", "pca"}));
  c_ms->add_option("--out", ms.out);
  c_ms->add_option("--input", ms.input, "polygon JSON")->check(CLI::ExistingFile);
  c_ms->add_option("--partition", ms.partition);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kUsage;
  }

  cli::CommandResult res;
  try {
    if (*c_gt) {
      res = cli::cmd_genus_table(gt);
    } else if (*c_vs) {
      vs.threads = threads;
      res = cli::cmd_verify_smooth(vs);
    } else if (*c_kc) {
      kc.threads = threads;
      res = cli::cmd_kernel_check(kc);
    } else if (*c_fd) {
      res = cli::cmd_fold_demo(fd);
    } else if (*c_md) {
      res = cli::cmd_mostowski_demo(md);
    } else if (*c_ms) {
      res = cli::cmd_mesh(ms);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  }
  std::fputs(res.out.c_str(), stdout);
  std::fputs(res.err.c_str(), stderr);
  return res.exit_code;
}
