#include "snapfix/report.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace snapfix {

void RunConfig::save(std::ostream& out) const {
  out << "input = " << input << '\n'
      << "format = " << format << '\n'
      << "alpha_p = " << params.alphaP << '\n'
      << "alpha_b = " << params.alphaB << '\n'
      << "alpha_t = " << params.alphaT << '\n'
      << "clearance = " << params.clearance << '\n'
      << "body_shrink = " << params.bodyShrink << '\n'
      << "tip_width = " << params.tipWidth << '\n'
      << "angle_tol = " << angleTol << '\n'
      << "dist_tol = " << distTol << '\n'
      << "eps_cover = " << epsCover << '\n'
      << "objective = " << objective << '\n'
      << "max_fingers = " << maxFingers << '\n'
      << "threads = " << threads << '\n';
}

RunConfig RunConfig::load(std::istream& in) {
  RunConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || key[0] == '#') continue;
    if (key == "input") cfg.input = val;
    else if (key == "format") cfg.format = val;
    else if (key == "alpha_p") cfg.params.alphaP = std::stod(val);
    else if (key == "alpha_b") cfg.params.alphaB = std::stod(val);
    else if (key == "alpha_t") cfg.params.alphaT = std::stod(val);
    else if (key == "clearance") cfg.params.clearance = std::stod(val);
    else if (key == "body_shrink") cfg.params.bodyShrink = std::stod(val);
    else if (key == "tip_width") cfg.params.tipWidth = std::stod(val);
    else if (key == "angle_tol") cfg.angleTol = std::stod(val);
    else if (key == "dist_tol") cfg.distTol = std::stod(val);
    else if (key == "eps_cover") cfg.epsCover = std::stod(val);
    else if (key == "objective") cfg.objective = val;
    else if (key == "max_fingers") cfg.maxFingers = std::stoi(val);
    else if (key == "threads") cfg.threads = std::stoi(val);
  }
  return cfg;
}

nlohmann::json fixtureToJson(const Fixture& f, const std::optional<QualityMetrics>& q,
                             const std::optional<Direction>& serving) {
  nlohmann::json j;
  j["palm"] = f.palm;
  j["fingers"] = nlohmann::json::array();
  for (const Finger& fi : f.fingers)
    j["fingers"].push_back({{"body", fi.body}, {"tip", fi.tip}});
  if (q) {
    j["metrics"] = {{"finger_count", q->fingerCount},
                    {"weight_proxy", q->weightProxy},
                    {"obscuration_proxy", q->obscurationProxy}};
  }
  if (serving)
    j["serving_direction"] = {serving->v.x, serving->v.y, serving->v.z};
  return j;
}

nlohmann::json Report::toJson(bool includeTiming) const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["name"] = name;
  j["mesh"] = {{"verts", verts}, {"edges", edges}, {"tris", tris},
               {"merged", merged}, {"genus", genusValue}};
  j["min_fingers"] = minFingers;
  if (fixturesAtMin >= 0) j["fixtures_at_min"] = fixturesAtMin;
  j["valid_fixture_calls"] = {validCalls[0], validCalls[1], validCalls[2]};
  if (fixture) j["fixture"] = fixtureToJson(*fixture, metrics, serving);
  if (includeTiming) j["wall_ms"] = wallMs;
  return j;
}

std::string Report::csvHeader() {
  return "name,verts,edges,tris,merged,genus,min_fingers,time_ms,fixtures_at_min";
}

std::string Report::csvRow() const {
  std::ostringstream os;
  os << name << ',' << verts << ',' << edges << ',' << tris << ',' << merged << ','
     << genusValue << ',';
  if (minFingers > 0) os << minFingers;
  else os << "inf";
  os << ',' << wallMs << ',';
  if (fixturesAtMin >= 0) os << fixturesAtMin;
  return os.str();
}

}  // namespace snapfix
