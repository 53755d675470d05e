#include "ldql/certificate_io.h"

#include "json.hpp"
#include "ldql/parser.h"
#include "ldql/printer.h"

namespace ldql {

namespace {

using nlohmann::json;

json lpe_safety_to_json(const LpeSafety& s);
json cert_to_json(const SafenessCertificate& c);

json unit_to_json(const UnitEvidence& u) {
  json out;
  switch (u.kind) {
    case UnitEvidence::Kind::Basic:
      out["kind"] = "basic";
      out["lpe"] = lpe_safety_to_json(*u.lpe);
      break;
    case UnitEvidence::Kind::Project:
      out["kind"] = "project";
      out["sub"] = cert_to_json(*u.sub);
      break;
    case UnitEvidence::Kind::SeedUris:
      out["kind"] = "seed-uris";
      out["sub"] = cert_to_json(*u.sub);
      break;
    case UnitEvidence::Kind::Composite:
      out["kind"] = "composite";
      out["sub"] = cert_to_json(*u.sub);
      break;
  }
  return out;
}

json lpe_safety_to_json(const LpeSafety& s) {
  json out;
  out["children"] = json::array();
  for (const auto& child : s.children) out["children"].push_back(lpe_safety_to_json(*child));
  if (s.nav_query) out["nav_query"] = cert_to_json(*s.nav_query);
  return out;
}

json justification_to_json(const Justification& j) {
  json out;
  if (j.kind == Justification::Kind::Safe) {
    out["kind"] = "safe";
    out["unit"] = unit_to_json(*j.safe_unit);
  } else {
    out["kind"] = "seed-var-bound";
    out["variable"] = j.var.name;
    out["providers"] = j.providers;
    out["inner"] = cert_to_json(*j.inner);
  }
  return out;
}

json cert_to_json(const SafenessCertificate& c) {
  json out;
  out["normal_form"] = serialize_query(*c.normal_form);
  out["conjuncts"] = json::array();
  for (const auto& conj : c.conjuncts) {
    json jc;
    jc["order"] = conj.order;
    jc["justifications"] = json::array();
    for (const auto& just : conj.justifications) {
      jc["justifications"].push_back(justification_to_json(just));
    }
    out["conjuncts"].push_back(std::move(jc));
  }
  return out;
}

LpeSafetyPtr lpe_safety_from_json(const json& j);
CertPtr cert_from_json(const json& j);

UnitEvidencePtr unit_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "basic") {
    return std::make_shared<const UnitEvidence>(
        UnitEvidence{UnitEvidence::Kind::Basic, lpe_safety_from_json(j.at("lpe")), nullptr});
  }
  auto k = kind == "project"    ? UnitEvidence::Kind::Project
           : kind == "composite" ? UnitEvidence::Kind::Composite
                                 : UnitEvidence::Kind::SeedUris;
  return std::make_shared<const UnitEvidence>(
      UnitEvidence{k, nullptr, cert_from_json(j.at("sub"))});
}

LpeSafetyPtr lpe_safety_from_json(const json& j) {
  LpeSafety out;
  for (const auto& child : j.at("children")) out.children.push_back(lpe_safety_from_json(child));
  if (j.contains("nav_query")) out.nav_query = cert_from_json(j.at("nav_query"));
  return std::make_shared<const LpeSafety>(std::move(out));
}

Justification justification_from_json(const json& j) {
  Justification out;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "safe") {
    out.kind = Justification::Kind::Safe;
    out.safe_unit = unit_from_json(j.at("unit"));
  } else {
    out.kind = Justification::Kind::SeedVarBound;
    out.var = Variable{j.at("variable").get<std::string>()};
    out.providers = j.at("providers").get<std::vector<size_t>>();
    out.inner = cert_from_json(j.at("inner"));
  }
  return out;
}

CertPtr cert_from_json(const json& j) {
  SafenessCertificate out;
  out.normal_form = parse_query(j.at("normal_form").get<std::string>());
  for (const auto& jc : j.at("conjuncts")) {
    ConjunctOrdering conj;
    conj.order = jc.at("order").get<std::vector<size_t>>();
    for (const auto& just : jc.at("justifications")) {
      conj.justifications.push_back(justification_from_json(just));
    }
    out.conjuncts.push_back(std::move(conj));
  }
  return std::make_shared<const SafenessCertificate>(std::move(out));
}

}  // namespace

std::string certificate_to_json(const SafenessCertificate& cert) {
  return cert_to_json(cert).dump(2);
}

std::string report_to_json(const SafenessReport& report) {
  json out;
  out["verdict"] = report.certified() ? "certified" : "not-certified";
  if (report.certificate) out["certificate"] = cert_to_json(*report.certificate);
  if (!report.refusals.empty()) {
    out["refusals"] = json::array();
    for (const auto& r : report.refusals) {
      json jr;
      jr["where"] = r.where;
      jr["detail"] = r.detail;
      jr["blocked_variables"] = json::array();
      for (const auto& v : r.blocked_vars) jr["blocked_variables"].push_back(v.name);
      out["refusals"].push_back(std::move(jr));
    }
  }
  return out.dump(2);
}

CertPtr certificate_from_json(const std::string& text) {
  return cert_from_json(json::parse(text));
}

}  // namespace ldql
