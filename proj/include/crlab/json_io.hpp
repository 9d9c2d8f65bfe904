#pragma once

// JSON encodings of every exchanged type. Exact numbers travel as base-10
// strings ("p/q" or "p"); parse errors name the offending field path.

#include <string>

#include <json.hpp>

#include "crlab/construct.hpp"
#include "crlab/hypersurface.hpp"
#include "crlab/obstruct.hpp"
#include "crlab/typecheck.hpp"

namespace crlab::json_io {

using Json = nlohmann::ordered_json;

Json to_json(const GaussianRational &x);
GaussianRational gaussian_from_json(const Json &j, const std::string &where);

Json to_json(const TruncatedSeries &s);
TruncatedSeries series_from_json(const Json &j, const std::string &where);

// Integer or ">=K+1".
Json to_json(const Valuation &v);

Json to_json(const SequenceFamily &f);
SequenceFamily family_from_json(const Json &j, const std::string &where = "family");

Json to_json(const Curve &c);
Curve curve_from_json(const Json &j, const std::string &where = "curve");

Json to_json(const ModelFunction &F);
// n is taken from the first multi-index; all monomials must agree.
ModelFunction model_from_json(const Json &j, const std::string &where = "model");

Json to_json(const SpikeCheck &c);
Json to_json(const TangencyResult &t);
Json to_json(const XmCheckResult &r);
Json to_json(const SubharmonicReport &r);
Json to_json(const smooth::SubharmonicityConstant &c);
Json to_json(const NormalizedCurve &c);
Json to_json(const CompositionBound &b);
Json to_json(const ObstructionCertificate &c);
ObstructionCertificate certificate_from_json(const Json &j, const std::string &where = "certificate");
Json to_json(const BgTypeResult &b);
Json to_json(const DAngeloWitness &w);
Json to_json(const DAngeloBound &b);
Json to_json(const TypeReport &r);

// Reads and parses a JSON file; ParseError names the file on failure.
Json read_file(const std::string &path);
// Pretty-printed with two-space indent and a trailing newline.
void write_file(const std::string &path, const Json &j);

} // namespace crlab::json_io
