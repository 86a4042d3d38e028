#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpweno/experiment.hpp"

namespace {

struct Overrides {
  std::vector<int> n;
  std::string scheme;
  double t_end = -1.0;
  std::string output_dir;
};

dpweno::RunConfig resolve(const std::string& target, const Overrides& o) {
  dpweno::RunConfig cfg;
  if (std::filesystem::is_regular_file(target)) {
    cfg = dpweno::load_config(target);
  } else if (auto builtin = dpweno::find_experiment(target)) {
    cfg = *builtin;
  } else {
    throw std::invalid_argument("'" + target + "' is neither a config file nor a built-in experiment (see 'dpweno list')");
  }
  if (!o.n.empty()) cfg.n = o.n;
  if (!o.scheme.empty()) cfg.scheme = dpweno::scheme_from_string(o.scheme);
  if (o.t_end >= 0.0) {
    cfg.t_end = o.t_end;
    std::erase_if(cfg.snapshots, [&](double t) { return t > o.t_end; });
  }
  if (!o.output_dir.empty()) cfg.output_dir = o.output_dir;
  cfg.validate();
  return cfg;
}

dpweno::RunOptions options() {
  dpweno::RunOptions opts;
  if (const char* root = std::getenv("DPWENO_OUTPUT_ROOT"); root && *root) opts.output_root = root;
  return opts;
}

void report(const dpweno::RunResult& res) {
  for (const auto& r : res.runs) {
    std::cout << res.config.name << "  n=" << r.n << "  steps=" << r.steps << "  wall=" << r.seconds
              << "s  drift=" << r.conservation_drift();
    if (r.error) std::cout << "  l1=" << r.error->l1 << "  linf=" << r.error->linf;
    std::cout << '\n';
  }
  if (!res.table.empty()) {
    std::cout << "\n     n        L1     order      Linf     order\n";
    for (const auto& r : res.table) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%6d  %.2e  %6s  %.2e  %6s\n", r.n, r.l1,
                    r.order_l1 ? std::to_string(*r.order_l1).substr(0, 5).c_str() : "", r.linf,
                    r.order_linf ? std::to_string(*r.order_linf).substr(0, 5).c_str() : "");
      std::cout << buf;
    }
  }
  std::cout << "output: " << res.directory.string() << '\n';
}

int fail(const std::string& kind, const std::string& message, int code) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  std::cerr << j.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WENO solvers for the Degasperis-Procesi and mu-Degasperis-Procesi equations"};
  app.require_subcommand(1);

  std::string target;
  Overrides over;
  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("target", target, "config file or built-in experiment name")->required();
    sub->add_option("--n", over.n, "grid size(s), overrides the config");
    sub->add_option("--scheme", over.scheme, "weno5, mrweno5 or mrweno7");
    sub->add_option("--t-end", over.t_end, "final time (drops later snapshots)");
    sub->add_option("--output-dir", over.output_dir, "directory below the output root");
  };

  auto* run = app.add_subcommand("run", "run an experiment and write snapshot CSVs");
  add_overrides(run);
  auto* conv = app.add_subcommand("convergence", "run every grid size and write the error/order table");
  add_overrides(conv);
  auto* list = app.add_subcommand("list", "list built-in experiments");
  std::string show;
  list->add_option("--config", show, "print the config text of one built-in experiment");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      if (!show.empty()) {
        const auto cfg = dpweno::find_experiment(show);
        if (!cfg) return fail("config", "unknown experiment '" + show + "'", 2);
        std::cout << dpweno::serialize_config(*cfg);
        return 0;
      }
      for (const auto& cfg : dpweno::experiment_catalog()) {
        std::cout << cfg.name << "  (" << dpweno::to_string(cfg.equation) << ", " << dpweno::to_string(cfg.scheme)
                  << ", ic=" << cfg.ic << ", t_end=" << cfg.t_end << ")\n";
      }
      return 0;
    }
    const dpweno::RunConfig cfg = resolve(target, over);
    const auto res = conv->parsed() ? dpweno::run_convergence(cfg, options()) : dpweno::run(cfg, options());
    report(res);
    return 0;
  } catch (const dpweno::NumericalError& e) {
    return fail("numerical", e.what(), 3);
  } catch (const std::invalid_argument& e) {
    return fail("config", e.what(), 2);
  } catch (const std::exception& e) {
    return fail("runtime", e.what(), 1);
  }
}
