#include "poestar/report.hpp"

namespace poestar {

Json parseErrorsJson(const std::vector<ParseError>& errors) {
  Json out = Json::array();
  for (const auto& e : errors)
    out.push_back(Json{{"line", e.line}, {"column", e.col},
                       {"message", e.message}});
  return out;
}

Json wellFormedJson(const WellFormedReport& report) {
  Json issues = Json::array();
  for (const auto& i : report.issues) {
    Json item{{"severity",
               i.severity == IssueSeverity::Error ? "error" : "warning"},
              {"category", i.category},
              {"message", i.message}};
    if (i.rule_number) item["rule"] = *i.rule_number;
    issues.push_back(std::move(item));
  }
  return Json{{"ok", report.ok()}, {"issues", std::move(issues)}};
}

Json instanceJson(const PoeInstance& inst) {
  Json prec = Json::object();
  for (const auto& [name, rank] : inst.precedence.ranks()) prec[name] = rank;
  Json sep = Json::object();
  for (const auto& [name, kinds] : inst.separation) {
    Json ks = Json::array();
    for (ArgKind k : kinds)
      ks.push_back(k == ArgKind::Normal ? "normal" : "safe");
    sep[name] = std::move(ks);
  }
  return Json{{"precedence", std::move(prec)},
              {"separation", std::move(sep)}};
}

Json poeCertJson(const PoeCert& cert) {
  Json out{{"clause", cert.clause},
           {"lhs", cert.lhs.str()},
           {"rhs", cert.rhs.str()}};
  switch (cert.clause) {
    case 1:
      out["arg_index"] = cert.arg_index;
      out["via_equal"] = cert.via_equal;
      if (cert.arg_cert) out["argument"] = poeCertJson(*cert.arg_cert);
      break;
    case 2: {
      Json safe = Json::array();
      for (const auto& s : cert.safe_certs) safe.push_back(poeCertJson(*s));
      out["safe"] = std::move(safe);
      break;
    }
    case 3: {
      Json product = Json::array();
      for (const auto& e : cert.product) {
        if (e.equal)
          product.push_back(Json{{"equal", true}});
        else
          product.push_back(Json{{"equal", false},
                                 {"certificate", poeCertJson(*e.cert)}});
      }
      out["product"] = std::move(product);
      Json safe = Json::array();
      for (const auto& s : cert.safe_certs) safe.push_back(poeCertJson(*s));
      out["safe"] = std::move(safe);
      break;
    }
    default:
      break;
  }
  return out;
}

namespace {

PoeCertPtr certFromJson(const Signature& sig, const Json& j,
                        std::string& error) {
  auto fail = [&](const std::string& msg) -> PoeCertPtr {
    if (error.empty()) error = msg;
    return nullptr;
  };
  if (!j.is_object()) return fail("certificate node is not an object");
  if (!j.contains("clause") || !j["clause"].is_number_integer())
    return fail("certificate node lacks a clause tag");
  if (!j.contains("lhs") || !j.contains("rhs"))
    return fail("certificate node lacks endpoints");

  auto readTerm = [&](const Json& field) -> std::optional<Term> {
    if (!field.is_string()) return std::nullopt;
    ParsedTerm p = parseTerm(sig, field.get<std::string>());
    if (!p.term) return std::nullopt;
    return p.term;
  };
  auto lhs = readTerm(j["lhs"]);
  auto rhs = readTerm(j["rhs"]);
  if (!lhs || !rhs) return fail("certificate endpoint does not parse");

  int clause = j["clause"].get<int>();
  auto cert = std::make_shared<PoeCert>(clause, *lhs, *rhs);
  switch (clause) {
    case 1: {
      if (!j.contains("arg_index") || !j["arg_index"].is_number_unsigned())
        return fail("clause 1 node lacks arg_index");
      cert->arg_index = j["arg_index"].get<std::size_t>();
      cert->via_equal = j.value("via_equal", false);
      if (!cert->via_equal) {
        if (!j.contains("argument"))
          return fail("clause 1 node lacks its sub-certificate");
        cert->arg_cert = certFromJson(sig, j["argument"], error);
        if (!cert->arg_cert) return nullptr;
      }
      return cert;
    }
    case 2: {
      if (!j.contains("safe") || !j["safe"].is_array())
        return fail("clause 2 node lacks safe certificates");
      for (const auto& s : j["safe"]) {
        auto sub = certFromJson(sig, s, error);
        if (!sub) return nullptr;
        cert->safe_certs.push_back(sub);
      }
      return cert;
    }
    case 3: {
      if (!j.contains("product") || !j["product"].is_array())
        return fail("clause 3 node lacks its product");
      for (const auto& e : j["product"]) {
        if (!e.is_object() || !e.contains("equal"))
          return fail("clause 3 product entry malformed");
        if (e["equal"].get<bool>()) {
          cert->product.push_back({true, nullptr});
        } else {
          if (!e.contains("certificate"))
            return fail("clause 3 strict product entry lacks a certificate");
          auto sub = certFromJson(sig, e["certificate"], error);
          if (!sub) return nullptr;
          cert->product.push_back({false, sub});
        }
      }
      if (!j.contains("safe") || !j["safe"].is_array())
        return fail("clause 3 node lacks safe certificates");
      for (const auto& s : j["safe"]) {
        auto sub = certFromJson(sig, s, error);
        if (!sub) return nullptr;
        cert->safe_certs.push_back(sub);
      }
      return cert;
    }
    default:
      return fail("unknown clause tag " + std::to_string(clause));
  }
}

}  // namespace

CertParse poeCertFromJson(const Signature& sig, const Json& j) {
  CertParse out;
  out.cert = certFromJson(sig, j, out.error);
  if (!out.cert && out.error.empty()) out.error = "malformed certificate";
  return out;
}

Json compatJson(const CompatReport& report) {
  Json rules = Json::array();
  for (const auto& rc : report.rules) {
    Json item{{"rule", rc.rule_number},
              {"lhs", rc.rule.lhs.str()},
              {"rhs", rc.rule.rhs.str()},
              {"oriented", rc.outcome.greater()}};
    if (rc.outcome.greater())
      item["certificate"] = poeCertJson(*rc.outcome.cert);
    else
      item["failure"] = Json{{"depth", rc.outcome.failure.depth},
                             {"reason", rc.outcome.failure.reason}};
    rules.push_back(std::move(item));
  }
  return Json{{"compatible", report.compatible},
              {"instance", instanceJson(report.instance)},
              {"rules", std::move(rules)}};
}

Json inferJson(const InferResult& result) {
  Json out{{"found", result.found},
           {"budget_exhausted", result.budget_exhausted},
           {"stats",
            Json{{"separations_tried", result.stats.separations_tried},
                 {"separations_pruned", result.stats.separations_pruned},
                 {"instances_tried", result.stats.instances_tried},
                 {"instances_pruned", result.stats.instances_pruned}}}};
  if (result.found) {
    out["instance"] = instanceJson(*result.instance);
    out["report"] = compatJson(*result.report);
  } else {
    Json obs = Json::array();
    for (const auto& o : result.obstructions)
      obs.push_back(Json{
          {"rule", o.rule_number},
          {"infeasible_separations", o.infeasible_separations},
          {"sample_reason", o.sample_reason}});
    out["obstructions"] = std::move(obs);
  }
  return out;
}

Json substitutionJson(const Substitution& subst) {
  Json out = Json::object();
  for (const auto& [var, term] : subst.bindings()) out[var] = term.str();
  return out;
}

Json derivationJson(const Derivation& d) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const StepInfo& s = d.steps[i];
    Json position = Json::array();
    for (std::size_t p : s.path0) position.push_back(p + 1);
    steps.push_back(Json{{"index", i + 1},
                         {"position", std::move(position)},
                         {"rule", s.rule_number},
                         {"substitution", substitutionJson(s.subst)},
                         {"result", s.result.str()}});
  }
  return Json{{"start", d.start.str()},
              {"completed", d.completed},
              {"length", d.steps.size()},
              {"steps", std::move(steps)}};
}

Json rcSamplesJson(const std::vector<RcSample>& samples) {
  Json out = Json::array();
  for (const auto& s : samples) {
    Json item{{"size", s.input_size}, {"max_steps", s.max_steps}};
    if (s.witness) item["witness"] = s.witness->str();
    out.push_back(std::move(item));
  }
  return out;
}

Json poelCertJson(const PoelCert& cert) {
  Json out{{"clause", cert.clause},
           {"lhs", cert.lhs.str()},
           {"rhs", cert.rhs.str()}};
  if (cert.clause == 3) {
    Json items = Json::array();
    for (const auto& i : cert.items) items.push_back(poelCertJson(*i));
    out["items"] = std::move(items);
  } else if (cert.clause == 4) {
    Json blocks = Json::array();
    for (const auto& b : cert.blocks) {
      Json item{{"take", b.take}, {"equal", b.equal}};
      if (b.cert) item["certificate"] = poelCertJson(*b.cert);
      blocks.push_back(std::move(item));
    }
    out["blocks"] = std::move(blocks);
  }
  return out;
}

Json embeddingJson(const EmbeddingReport& report, bool include_certs) {
  Json steps = Json::array();
  for (const auto& s : report.steps) {
    Json pb = Json::array();
    for (const auto& t : s.pint_before) pb.push_back(t.str());
    Json pa = Json::array();
    for (const auto& t : s.pint_after) pa.push_back(t.str());
    Json item{{"index", s.step_index},
              {"before", s.before.str()},
              {"after", s.after.str()},
              {"before_in_tn", s.before_in_tn},
              {"after_in_tn", s.after_in_tn},
              {"pint_before", std::move(pb)},
              {"pint_after", std::move(pa)},
              {"decreases", s.decreases}};
    if (!s.decreases) item["failure"] = s.failure;
    if (include_certs && s.cert) item["certificate"] = poelCertJson(*s.cert);
    steps.push_back(std::move(item));
  }
  return Json{{"ell", report.ell},
              {"ok", report.ok()},
              {"all_steps_decrease", report.all_steps_decrease},
              {"tn_preserved", report.tn_preserved},
              {"steps", std::move(steps)}};
}

Json rootEmbeddingJson(const RootEmbeddingCheck& check) {
  Json out{{"rule", check.rule_number},
           {"ell", check.ell},
           {"value_substitution", check.value_substitution},
           {"holds", check.holds}};
  if (!check.holds) out["failure"] = check.failure;
  return out;
}

Json slowBoundJson(const SlowBoundCheck& check) {
  Json out{{"applicable", check.applicable}};
  if (!check.applicable) {
    out["reason"] = check.reason;
    return out;
  }
  out["slow"] = check.slow_value;
  out["arg_slows"] = check.arg_slows;
  out["rank"] = check.rank;
  out["bound"] = check.bound;
  out["bound_saturated"] = check.saturated;
  out["holds"] = check.holds;
  return out;
}

Json slowSumJson(const SlowSumCheck& check) {
  return Json{{"sequence_slow", check.sequence_slow},
              {"element_slows", check.element_slows},
              {"sum", check.sum},
              {"equal", check.equal}};
}

double leastSquaresSlope(
    const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) return 0.0;
  double n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace poestar
