#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "dbulab/errors.hpp"
#include "dbulab/runner.hpp"
#include "dbulab/special_functions.hpp"

namespace {

dbu::json load_json(const std::string& path) {
  std::ifstream ifs(path);
  if (!ifs) throw dbu::validation_error("cannot open config file: " + path);
  dbu::json doc;
  ifs >> doc;
  return doc;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const dbu::divergence_error& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return 3;
  } catch (const dbu::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dbulab: pseudospectral dispersive-focusing laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "run one configuration");
  simulate->add_option("config", config_path, "JSON config file")->required();

  std::string sweep_config, sweep_axis, sweep_values;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a one-axis parameter sweep");
  sweep_cmd->add_option("config", sweep_config, "JSON base config")->required();
  sweep_cmd->add_option("--axis", sweep_axis, "config leaf, e.g. data.delta")->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();

  std::uint64_t seed = 1234;
  std::string oracle_out;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "cross-validate the slow reference paths");
  oracle_cmd->add_option("--seed", seed, "probe RNG seed");
  oracle_cmd->add_option("--out", oracle_out, "write the JSON report here");

  std::string fn_name = "airy", range = "0:10:21";
  double arg2 = 0.0;
  std::string specfun_out;
  auto* specfun_cmd = app.add_subcommand("specfun", "tabulate a special function to CSV");
  specfun_cmd->add_option("name", fn_name, "pearcey | airy | bessel_k")->required();
  specfun_cmd->add_option("--range", range, "arg1 range a:b:n");
  specfun_cmd->add_option("--arg2", arg2, "second argument (pearcey x / bessel nu)");
  specfun_cmd->add_option("--out", specfun_out, "CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    return guarded([&] {
      auto outcome = dbu::run(load_json(config_path));
      std::cout << outcome.report.dump(2) << "\n";
      return outcome.exit_code;
    });
  }

  if (sweep_cmd->parsed()) {
    return guarded([&] {
      std::vector<dbu::json> values;
      std::stringstream ss(sweep_values);
      std::string tok;
      while (std::getline(ss, tok, ',')) values.push_back(dbu::json::parse(tok));
      auto outcomes = dbu::sweep(load_json(sweep_config), sweep_axis, values);
      int rc = 0;
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        std::cout << "run " << i << ": exit " << outcomes[i].exit_code << "\n";
        rc = std::max(rc, outcomes[i].exit_code);
      }
      return rc;
    });
  }

  if (oracle_cmd->parsed()) {
    return guarded([&] {
      auto report = dbu::oracle_check(seed);
      if (!oracle_out.empty()) {
        std::ofstream(oracle_out) << report.dump(2) << "\n";
      }
      std::cout << report.dump(2) << "\n";
      return report["all_pass"].get<bool>() ? 0 : 1;
    });
  }

  if (specfun_cmd->parsed()) {
    return guarded([&] {
      double a = 0, b = 1;
      int n = 11;
      if (std::sscanf(range.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3 || n < 2) {
        throw dbu::validation_error("specfun: --range must be a:b:n with n >= 2");
      }
      std::ostringstream csv;
      csv << "arg1,arg2,re,im,est_error\n";
      for (int i = 0; i < n; ++i) {
        const double x = a + (b - a) * i / (n - 1);
        if (fn_name == "pearcey") {
          auto v = dbu::pearcey(arg2, x);
          csv << arg2 << "," << x << "," << v.value.real() << "," << v.value.imag() << ","
              << v.est_error << "\n";
        } else if (fn_name == "airy") {
          csv << x << ",," << dbu::airy(x) << ",0,1e-10\n";
        } else if (fn_name == "bessel_k") {
          const double nu = arg2 > 0 ? arg2 : 0.5;
          csv << x << "," << nu << "," << dbu::bessel_k(nu, x) << ",0,1e-8\n";
        } else {
          throw dbu::validation_error("specfun: unknown function '" + fn_name + "'");
        }
      }
      if (!specfun_out.empty()) {
        std::ofstream(specfun_out) << csv.str();
      } else {
        std::cout << csv.str();
      }
      return 0;
    });
  }
  return 0;
}
