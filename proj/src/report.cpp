#include "olk/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "olk/error.hpp"

namespace olk {

namespace {

using nlohmann::json;

json num(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

json space_json(const SpaceConfig& cfg) {
  return {{"phi", cfg.phi.phi.describe()},
          {"psi", cfg.phi.psi.describe()},
          {"omega", cfg.omega.describe()},
          {"gamma", num(cfg.gamma)},
          {"tol_root", cfg.tol_root},
          {"tol_norm", cfg.tol_norm},
          {"k_horizon", cfg.k_horizon}};
}

json steps_json(const StepFunction& x) {
  json pieces = json::array();
  for (const auto& p : x.pieces()) pieces.push_back({num(p.start), num(p.length), num(p.value)});
  json out = {{"domain", num(x.domain_len())}, {"pieces", pieces}};
  if (const auto& tail = x.tail()) {
    out["tail"] = {{"start", num(tail->start)},
                   {"even_value", num(tail->even_value)},
                   {"odd_value", num(tail->odd_value)}};
  }
  return out;
}

json rearrangement_json(const Rearrangement& r) {
  json levels = json::array();
  for (const auto& level : r.levels) levels.push_back({num(level.value), num(level.measure)});
  return levels;
}

json predictions_json(const Predictions& pred) {
  json out = json::object();
  for (const auto& [name, v] : pred) {
    out[name] = {{"verdict", verdict_name(v.verdict)},
                 {"reason", v.reason},
                 {"heuristic", v.heuristic}};
  }
  return out;
}

std::string predictions_text(const Predictions& pred) {
  std::string out;
  for (const auto& [name, v] : pred) {
    out += name + ": " + verdict_name(v.verdict) + " (" + v.reason + ")";
    if (v.heuristic) out += " [heuristic]";
    out += "\n";
  }
  return out;
}

json classification_json(const Classification& c) {
  json out = {{"regime", regime_name(c.regime)},
              {"holds", c.holds},
              {"heuristic", c.heuristic},
              {"max_ratio", num(c.max_ratio)},
              {"grid_start", num(c.grid_start)},
              {"horizon", num(c.horizon)}};
  out["constant"] = c.constant ? num(*c.constant) : json(nullptr);
  return out;
}

std::string classification_text(const std::string& label, const Classification& c) {
  std::string out = label + " " + regime_name(c.regime) + ": " + (c.holds ? "holds" : "fails");
  if (c.constant) out += " K=" + format12(*c.constant);
  out += " (grid sup ratio " + format12(c.max_ratio) + " on [" + format12(c.grid_start) +
         ", " + format12(c.horizon) + "])";
  if (c.heuristic) out += " [heuristic]";
  return out + "\n";
}

std::string line(const std::string& key, double value) {
  return key + ": " + format12(value) + "\n";
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string format12(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.12g", value);
  return buf;
}

Report report_norm(const SpaceConfig& cfg, const StepFunction& x, NormWhich which) {
  Report r;
  json doc = {{"command", "norm"}, {"space", space_json(cfg)}, {"input", steps_json(x)}};
  r.text = "space: " + cfg.describe() + "\n";
  r.text += line("modular", modular(cfg, x));
  doc["modular"] = num(modular(cfg, x));
  if (which != NormWhich::Orlicz) {
    const double lux = luxemburg_norm(cfg, x);
    r.text += line("luxemburg", lux);
    doc["luxemburg"] = num(lux);
  }
  if (which != NormWhich::Luxemburg) {
    const double value = orlicz_norm(cfg, x);
    const OrliczNormDetail detail = orlicz_norm_detail(cfg, x);
    r.text += line("orlicz", value);
    doc["orlicz"] = num(value);
    doc["orlicz_golden_section"] = num(detail.golden_route);
    if (!x.is_zero()) {
      r.text += line("k_star", detail.k.k_star);
      r.text += line("k_double_star", detail.k.k_double_star);
      doc["k_interval"] = {{"k_star", num(detail.k.k_star)},
                           {"k_double_star", num(detail.k.k_double_star)},
                           {"unique", detail.k.unique},
                           {"horizon_exceeded", detail.k.horizon_exceeded}};
    }
  }
  r.json = dump(doc);
  return r;
}

Report report_rearrange(const StepFunction& x) {
  const Rearrangement rr = rearrange(x);
  Report r;
  r.text = "value measure\n";
  for (const auto& level : rr.levels) {
    r.text += format12(level.value) + " " + format12(level.measure) + "\n";
  }
  r.text += line("total_measure", rr.total_measure());
  r.json = dump({{"command", "rearrange"},
                 {"input", steps_json(x)},
                 {"levels", rearrangement_json(rr)},
                 {"total_measure", num(rr.total_measure())}});
  return r;
}

Report report_conjugate(const SpaceConfig& cfg) {
  Report r;
  r.text = "phi: " + cfg.phi.phi.describe() + "\npsi: " + cfg.phi.psi.describe() + "\n";
  r.text += "v psi(v) q(v) psi_inverse(v)\n";
  json table = json::array();
  for (double v : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double psi = cfg.phi.psi(v);
    const double q = cfg.phi.q(v);
    const double inv = psi_inverse(cfg.phi, v, cfg.tol_root);
    r.text += format12(v) + " " + format12(psi) + " " + format12(q) + " " + format12(inv) + "\n";
    table.push_back({{"v", v}, {"psi", num(psi)}, {"q", num(q)}, {"psi_inverse", num(inv)}});
  }
  r.json = dump({{"command", "conjugate"},
                 {"phi", cfg.phi.phi.describe()},
                 {"psi", cfg.phi.psi.describe()},
                 {"table", table}});
  return r;
}

Report report_classify(const SpaceConfig& cfg) {
  Report r;
  json doc = {{"command", "classify"}, {"space", space_json(cfg)}};
  json phi = json::array();
  json psi = json::array();
  for (auto regime : {Delta2Regime::AllValues, Delta2Regime::LargeValues}) {
    const Classification a = classify_delta2(cfg.phi.phi, regime, cfg.delta2);
    const Classification b = classify_delta2(cfg.phi.psi, regime, cfg.delta2);
    r.text += classification_text("phi Delta2", a);
    r.text += classification_text("phi Nabla2 (psi Delta2)", b);
    phi.push_back(classification_json(a));
    psi.push_back(classification_json(b));
  }
  doc["phi_delta2"] = phi;
  doc["phi_nabla2"] = psi;
  r.json = dump(doc);
  return r;
}

Report report_predict(const SpaceConfig& cfg) {
  const Predictions pred = predict(cfg);
  Report r;
  r.text = predictions_text(pred);
  r.json = dump({{"command", "predict"},
                 {"space", space_json(cfg)},
                 {"predicted", predictions_json(pred)}});
  return r;
}

Report report_witness(const SpaceConfig& cfg) {
  const Predictions pred = predict(cfg);
  const WitnessPair pair =
      std::isinf(cfg.gamma) ? build_witness_infty(cfg) : build_witness_unit(cfg);
  const WitnessCheck check = verify_witness(cfg, pair);
  Report r;
  r.text = predictions_text(pred);
  r.text += line("c", pair.scale);
  r.text += line("norm_x", check.norm_x);
  r.text += line("norm_y", check.norm_y);
  r.text += line("norm_half_sum", check.norm_half_sum);
  r.text += line("norm_half_diff", check.norm_half_diff);
  r.text += std::string("equimeasurable: ") + (check.equimeasurable ? "yes" : "no") + "\n";
  r.json = dump({{"command", "witness"},
                 {"space", space_json(cfg)},
                 {"predicted", predictions_json(pred)},
                 {"witness",
                  {{"x", steps_json(pair.x)},
                   {"y", steps_json(pair.y)},
                   {"c", num(pair.scale)},
                   {"norm_x", num(check.norm_x)},
                   {"norm_y", num(check.norm_y)},
                   {"norm_half_sum", num(check.norm_half_sum)},
                   {"norm_half_diff", num(check.norm_half_diff)},
                   {"equimeasurable", check.equimeasurable}}}});
  return r;
}

Report report_probe(const SpaceConfig& cfg, std::uint64_t seed, std::uint64_t samples,
                    unsigned workers) {
  const Predictions pred = predict(cfg);
  const ProbeStats stats = probe_nonsquare(cfg, seed, samples, workers);
  Report r;
  r.text = predictions_text(pred);
  r.text += "seed: " + std::to_string(seed) + "\nsamples: " + std::to_string(samples) + "\n";
  json search = {{"seed", seed},
                 {"samples", samples},
                 {"at_or_above_one", stats.at_or_above_one}};
  if (stats.argmax) {
    r.text += line("max_defect", stats.max_defect);
    r.text += "argmax: " + std::to_string(*stats.argmax) + "\n";
    r.text += "pairs_at_or_above_one: " + std::to_string(stats.at_or_above_one) + "\n";
    search["max_defect"] = num(stats.max_defect);
    search["argmax"] = *stats.argmax;
    search["argmax_x"] = steps_json(*stats.argmax_x);
    search["argmax_y"] = steps_json(*stats.argmax_y);
  } else {
    r.text += "max_defect: none (no samples)\n";
    search["max_defect"] = nullptr;
    search["argmax"] = nullptr;
  }
  r.json = dump({{"command", "probe"},
                 {"space", space_json(cfg)},
                 {"predicted", predictions_json(pred)},
                 {"search", search}});
  return r;
}

Report report_luns(const SpaceConfig& cfg, const StepFunction& input, std::uint64_t seed,
                   std::uint64_t samples, unsigned workers) {
  const Predictions pred = predict(cfg);
  const double input_norm = orlicz_norm(cfg, input);
  if (input_norm == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "LUNS estimate needs a nonzero input");
  }
  const StepFunction x = scale(input, 1.0 / input_norm);
  const LunsEstimate est = estimate_luns_delta(cfg, x, seed, samples, workers);
  Report r;
  r.text = predictions_text(pred);
  r.text += line("input_norm", input_norm);
  r.text += "seed: " + std::to_string(seed) + "\nsamples: " + std::to_string(samples) + "\n";
  r.text += line("delta_hat", est.delta_hat);
  r.text += line("max_defect", est.max_defect);
  r.text += line("xi_lower", est.xi_lower);
  r.text += line("xi_upper", est.xi_upper);
  if (est.exploratory) r.text += "exploratory: LUNS is not predicted for this space\n";
  json luns = {{"seed", seed},
               {"samples", samples},
               {"delta_hat", num(est.delta_hat)},
               {"max_defect", num(est.max_defect)},
               {"xi_lower", num(est.xi_lower)},
               {"xi_upper", num(est.xi_upper)},
               {"exploratory", est.exploratory}};
  luns["argmax"] = est.argmax ? json(*est.argmax) : json(nullptr);
  r.json = dump({{"command", "luns"},
                 {"space", space_json(cfg)},
                 {"input", steps_json(input)},
                 {"input_norm", num(input_norm)},
                 {"predicted", predictions_json(pred)},
                 {"luns", luns}});
  return r;
}

}  // namespace olk
