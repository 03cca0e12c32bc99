#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "poestar/infer.hpp"
#include "poestar/parse.hpp"
#include "poestar/poe.hpp"
#include "poestar/poel.hpp"
#include "poestar/rewrite.hpp"
#include "poestar/trs.hpp"

namespace poestar {

// Insertion-ordered JSON keeps every report byte-deterministic.
using Json = nlohmann::ordered_json;

// Positions, rule numbers and argument indices are 1-based in all
// serialized output; terms appear as canonical strings.

Json parseErrorsJson(const std::vector<ParseError>& errors);
Json wellFormedJson(const WellFormedReport& report);
Json instanceJson(const PoeInstance& inst);

Json poeCertJson(const PoeCert& cert);

struct CertParse {
  PoeCertPtr cert;
  std::string error;  // nonempty on malformed input
  bool ok() const { return cert != nullptr; }
};

// Reads a certificate back against the signature the terms were printed
// under (the separated one for compatibility reports).
CertParse poeCertFromJson(const Signature& sig, const Json& j);

Json compatJson(const CompatReport& report);
Json inferJson(const InferResult& result);

Json substitutionJson(const Substitution& subst);
Json derivationJson(const Derivation& d);
Json rcSamplesJson(const std::vector<RcSample>& samples);

Json poelCertJson(const PoelCert& cert);
Json embeddingJson(const EmbeddingReport& report, bool include_certs = false);
Json rootEmbeddingJson(const RootEmbeddingCheck& check);
Json slowBoundJson(const SlowBoundCheck& check);
Json slowSumJson(const SlowSumCheck& check);

// Least-squares slope of y over x; used for growth-rate summaries.
double leastSquaresSlope(const std::vector<std::pair<double, double>>& points);

}  // namespace poestar
