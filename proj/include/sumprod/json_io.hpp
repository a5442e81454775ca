#pragma once

#include <json.hpp>

#include "sumprod/catalog.hpp"
#include "sumprod/special.hpp"

namespace sumprod {

using Json = nlohmann::json;

// Every report carries "schema": 1. Rationals serialize as
// {"num": n, "den": d, "str": "n/d", "approx": double}.

Json to_json(const Rational& r);
Json to_json(const RSet& s);
Json to_json(const GrowthReport& g, const FiniteRing& ring);
Json to_json(const AxiomReport& r);
Json to_json(const CoverWitness& w);
Json to_json(const TriangleCheck& t);
Json to_json(const PlunneckeCheck& p);
Json to_json(const ExtractionOutcome& o);
Json to_json(const SrSet& s);
Json to_json(const SrPropertyReport& r);
Json to_json(const StructureCertificate& c);
Json to_json(const FreimanModel& m);
Json to_json(const GeneralOutcome& o);
Json to_json(const AffineWitness& w);
Json to_json(const DivisionExperimentResult& r);
Json to_json(const ProductExperimentResult& r);
Json to_json(const CyclicExperimentResult& r);
Json to_json(const AlgebraExperimentResult& r);
Json to_json(const M2AnnihilatorResult& r);

std::string dump_report(Json j);  // adds schema field, 2-space indent, newline

}  // namespace sumprod
