#include "colombeau/report.hpp"

#include <cmath>

#include "colombeau/version.hpp"

namespace colombeau {
namespace report {

Json jnum(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

Json samples_json(const std::vector<Rung>& rungs) {
  Json arr = Json::array();
  for (const Rung& r : rungs) {
    Json row;
    row["eps"] = jnum(r.eps);
    row["value"] = r.ok ? jnum(r.value) : Json(nullptr);
    arr.push_back(std::move(row));
  }
  return arr;
}

Json fit_json(const FitResult& fit) {
  Json j;
  j["limit"] = jnum(fit.limit_est);
  j["rate"] = jnum(fit.rate);
  j["residual"] = jnum(fit.residual);
  j["points_used"] = fit.used;
  j["all_below_floor"] = fit.all_below_floor;
  return j;
}

Json thresholds_json(const Thresholds& th) {
  Json j;
  j["quad_tol"] = th.quad_tol;
  j["moment_tol"] = th.moment_tol;
  j["assoc_tol"] = th.assoc_tol;
  j["fit_tol"] = th.fit_tol;
  j["rate_margin"] = th.rate_margin;
  return j;
}

Json config_echo_json(const RunConfig& cfg) {
  Json j;
  for (const auto& [k, v] : echo_pairs(cfg)) j[k] = v;
  return j;
}

Json ladder_json(const LadderReport& rep) {
  Json j;
  j["samples"] = samples_json(rep.samples);
  j["fit"] = fit_json(rep.fit);
  j["verdict"] = verdict_name(rep.verdict);
  return j;
}

Json assemble(const DocParts& parts) {
  Json doc;
  doc["command"] = parts.command;
  doc["config_echo"] = parts.config_echo;
  doc["samples"] = parts.samples;
  doc["fit"] = parts.fit.is_null() ? Json(nullptr) : parts.fit;
  doc["verdict"] = parts.verdict;
  if (parts.extras.is_object())
    for (const auto& [k, v] : parts.extras.items()) doc[k] = v;
  if (!parts.details.is_null()) doc["details"] = parts.details;
  doc["thresholds"] = thresholds_json(parts.thresholds);
  doc["version"] = kVersion;
  return doc;
}

std::string to_text(const Json& doc) { return doc.dump(2) + "\n"; }

std::string csv_text(const std::vector<Rung>& rungs) {
  std::string out = "eps,value\n";
  for (const Rung& r : rungs) {
    out += format_double(r.eps);
    out += ',';
    out += r.ok ? format_double(r.value) : std::string("nan");
    out += '\n';
  }
  return out;
}

int exit_code_for(const std::string& verdict) {
  if (verdict == "associated" || verdict == "decays" || verdict == "ok") return 0;
  if (verdict == "not_associated" || verdict == "cannot_conclude") return 2;
  if (verdict == "inconclusive") return 3;
  return 1;
}

}  // namespace report
}  // namespace colombeau
