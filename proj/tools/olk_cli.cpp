// olk: command-line front end over the C API.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "olk/olk.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

int report_failure(olk_status status) {
  std::fprintf(stderr, "error: %s: %s\n", olk_status_token(status), olk_last_error());
  return status == OLK_PARSE_ERROR || status == OLK_IO_ERROR ? kExitUsage : kExitDomain;
}

struct Handles {
  olk_space* space = nullptr;
  olk_function* input = nullptr;
  olk_report* report = nullptr;

  ~Handles() {
    olk_report_free(report);
    olk_function_free(input);
    olk_space_free(space);
  }
};

bool parse_domain(const std::string& text, double& out) {
  if (text == "inf") {
    out = HUGE_VAL;
    return true;
  }
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end != text.c_str() && *end == '\0' && out > 0.0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz-Lorentz space calculator"};
  app.require_subcommand(1);

  std::string space_path;
  std::string input_path;
  std::string json_out;
  std::string which = "both";
  std::string domain_text;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;

  auto add_space = [&](CLI::App* cmd) {
    cmd->add_option("--space", space_path, "space config file")->required()->check(
        CLI::ExistingFile);
  };
  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", input_path, ".steps file")->required()->check(
        CLI::ExistingFile);
  };
  auto add_sampling = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed")->required();
    cmd->add_option("--samples", samples, "number of samples")->required();
  };
  auto add_json = [&](CLI::App* cmd) {
    cmd->add_option("--json-out", json_out, "write the structured report here");
  };

  auto* norm = app.add_subcommand("norm", "Luxemburg and Orlicz norms and K(x)");
  add_space(norm);
  add_input(norm);
  norm->add_option("--which", which, "luxemburg | orlicz | both")
      ->check(CLI::IsMember({"luxemburg", "orlicz", "both"}));
  add_json(norm);

  auto* rearrange = app.add_subcommand("rearrange", "decreasing rearrangement of a step function");
  add_input(rearrange);
  rearrange->add_option("--space", space_path, "space config supplying the domain")
      ->check(CLI::ExistingFile);
  rearrange->add_option("--domain", domain_text, "domain length: positive number or inf");
  add_json(rearrange);

  auto* conjugate = app.add_subcommand("conjugate", "complementary function table");
  add_space(conjugate);
  add_json(conjugate);

  auto* classify = app.add_subcommand("classify", "Delta2 and Nabla2 classification");
  add_space(classify);
  add_json(classify);

  auto* predict = app.add_subcommand("predict", "predicted geometric properties");
  add_space(predict);
  add_json(predict);

  auto* witness = app.add_subcommand("witness", "build and verify a square pair");
  add_space(witness);
  add_json(witness);

  auto* probe = app.add_subcommand("probe", "seeded search for square pairs");
  add_space(probe);
  add_sampling(probe);
  add_json(probe);

  auto* luns = app.add_subcommand("luns", "seeded estimate of the LUNS constant at x");
  add_space(luns);
  add_input(luns);
  add_sampling(luns);
  add_json(luns);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: usage: %s\n", e.what());
    return kExitUsage;
  }

  Handles h;
  olk_status status = OLK_OK;

  double domain = 1.0;
  if (!space_path.empty()) {
    status = olk_space_load(space_path.c_str(), &h.space);
    if (status != OLK_OK) return report_failure(status);
    olk_space_gamma(h.space, &domain);
  }
  if (!domain_text.empty()) {
    if (h.space != nullptr) {
      std::fprintf(stderr, "error: usage: --domain and --space are exclusive\n");
      return kExitUsage;
    }
    if (!parse_domain(domain_text, domain)) {
      std::fprintf(stderr, "error: usage: --domain must be a positive number or inf\n");
      return kExitUsage;
    }
  }
  if (!input_path.empty()) {
    status = olk_function_load(input_path.c_str(), domain, &h.input);
    if (status != OLK_OK) return report_failure(status);
  }

  if (*norm) {
    const olk_norm_which w = which == "luxemburg" ? OLK_NORM_LUXEMBURG
                             : which == "orlicz"  ? OLK_NORM_ORLICZ
                                                  : OLK_NORM_BOTH;
    status = olk_report_norm(h.space, h.input, w, &h.report);
  } else if (*rearrange) {
    status = olk_report_rearrange(h.input, &h.report);
  } else if (*conjugate) {
    status = olk_report_conjugate(h.space, &h.report);
  } else if (*classify) {
    status = olk_report_classify(h.space, &h.report);
  } else if (*predict) {
    status = olk_report_predict(h.space, &h.report);
  } else if (*witness) {
    status = olk_report_witness(h.space, &h.report);
  } else if (*probe) {
    status = olk_report_probe(h.space, seed, samples, 0, &h.report);
  } else if (*luns) {
    status = olk_report_luns(h.space, h.input, seed, samples, 0, &h.report);
  }
  if (status != OLK_OK) return report_failure(status);

  std::fputs(olk_report_text(h.report), stdout);
  if (!json_out.empty()) {
    std::ofstream out(json_out, std::ios::binary);
    out << olk_report_json(h.report);
    if (!out) {
      std::fprintf(stderr, "error: io_error: cannot write '%s'\n", json_out.c_str());
      return kExitUsage;
    }
  }
  return kExitOk;
}
