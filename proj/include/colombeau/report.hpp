#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "colombeau/assoc.hpp"
#include "colombeau/config.hpp"

namespace colombeau {
namespace report {

using Json = nlohmann::ordered_json;

// JSON has no literals for non-finite doubles: +-infinity serializes as the
// strings "+inf"/"-inf", NaN (failed rungs) as null.
Json jnum(double v);

Json samples_json(const std::vector<Rung>& rungs);
Json fit_json(const FitResult& fit);
Json thresholds_json(const Thresholds& th);
Json config_echo_json(const RunConfig& cfg);
Json ladder_json(const LadderReport& rep);

// Assembles the document with the fixed key order {command, config_echo,
// samples, fit, verdict, <extras>, details?, thresholds, version}.  extras
// are additional top-level keys (e.g. the gap command's score/conclusion);
// pass Json() (null) for no details.
struct DocParts {
  std::string command;
  Json config_echo = Json::object();
  Json samples = Json::array();
  Json fit;
  std::string verdict = "ok";
  Json extras = Json::object();
  Json details;
  Thresholds thresholds;
};

Json assemble(const DocParts& parts);

// dump(2) with a trailing newline; byte-identical for identical documents.
std::string to_text(const Json& doc);

// Header "eps,value", one row per rung, newline-terminated.
std::string csv_text(const std::vector<Rung>& rungs);

// associated/decays/ok -> 0, not_associated/cannot_conclude -> 2,
// inconclusive -> 3, anything else -> 1.
int exit_code_for(const std::string& verdict);

}  // namespace report
}  // namespace colombeau
