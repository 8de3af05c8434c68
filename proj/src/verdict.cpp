#include "usco/verdict.hpp"

#include <stdexcept>

#include <json.hpp>

namespace usco {

using nlohmann::json;

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Certified: return "Certified";
    case Outcome::Falsified: return "Falsified";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Outcome outcome_from_string(const std::string& s) {
  if (s == "Certified") return Outcome::Certified;
  if (s == "Falsified") return Outcome::Falsified;
  if (s == "Inconclusive") return Outcome::Inconclusive;
  throw std::invalid_argument("unknown outcome: " + s);
}

void Verdict::check_invariants() const {
  if (outcome == Outcome::Falsified && !witness)
    throw std::logic_error("Falsified verdict without witness");
  if (outcome == Outcome::Certified && !certificate)
    throw std::logic_error("Certified verdict without certificate");
}

namespace {

json point_to_json(const Point& p) {
  json entries = json::array();
  for (const auto& e : p.entries())
    entries.push_back(json::array({e.first, e.second}));
  return json{{"entries", entries}};
}

Point point_from_json(const json& j) {
  std::vector<Point::Entry> entries;
  for (const auto& e : j.at("entries"))
    entries.emplace_back(e.at(0).get<std::int64_t>(), e.at(1).get<double>());
  return Point::sparse(std::move(entries));
}

json verdict_to_json(const Verdict& v) {
  json j;
  j["outcome"] = to_string(v.outcome);
  if (v.certificate) {
    j["certificate"] = json{{"bound", v.certificate->bound},
                            {"method", v.certificate->method}};
  } else {
    j["certificate"] = nullptr;
  }
  if (v.witness) {
    json seq = json::array();
    for (const Point& p : v.witness->sequence) seq.push_back(point_to_json(p));
    json vals = json::array();
    for (const Point& p : v.witness->values) vals.push_back(point_to_json(p));
    j["witness"] = json{{"sequence", seq},
                        {"values", vals},
                        {"limit", point_to_json(v.witness->limit)},
                        {"reason", v.witness->reason},
                        {"eps", v.witness->eps}};
  } else {
    j["witness"] = nullptr;
  }
  j["resolution"] = json{{"sequences", v.resolution.sequences},
                         {"prefix", v.resolution.prefix},
                         {"eps_schedule", v.resolution.eps_schedule},
                         {"grid_resolution", v.resolution.grid_resolution},
                         {"seed", v.resolution.seed},
                         {"notes", v.resolution.notes}};
  return j;
}

}  // namespace

std::string to_json(const Point& p) { return point_to_json(p).dump(); }

std::string to_json(const Verdict& v) { return verdict_to_json(v).dump(2); }

Verdict verdict_from_json(const std::string& text) {
  json j = json::parse(text);
  Verdict v;
  v.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  if (!j.at("certificate").is_null()) {
    BoundCertificate c;
    c.bound = j["certificate"].at("bound").get<double>();
    c.method = j["certificate"].at("method").get<std::string>();
    v.certificate = std::move(c);
  }
  if (!j.at("witness").is_null()) {
    Witness w;
    for (const auto& p : j["witness"].at("sequence")) w.sequence.push_back(point_from_json(p));
    for (const auto& p : j["witness"].at("values")) w.values.push_back(point_from_json(p));
    w.limit = point_from_json(j["witness"].at("limit"));
    w.reason = j["witness"].at("reason").get<std::string>();
    w.eps = j["witness"].at("eps").get<double>();
    v.witness = std::move(w);
  }
  const json& r = j.at("resolution");
  v.resolution.sequences = r.at("sequences").get<int>();
  v.resolution.prefix = r.at("prefix").get<int>();
  v.resolution.eps_schedule = r.at("eps_schedule").get<std::vector<double>>();
  v.resolution.grid_resolution = r.at("grid_resolution").get<double>();
  v.resolution.seed = r.at("seed").get<std::uint64_t>();
  v.resolution.notes = r.at("notes").get<std::vector<std::string>>();
  return v;
}

}  // namespace usco
