#pragma once

#include <string>

#include "json.hpp"

#include "milnor/fiber.h"
#include "milnor/mixed_poly.h"
#include "milnor/real_poly.h"
#include "milnor/structure.h"
#include "milnor/transversality.h"

namespace milnor {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "milnor-scope/1";

Json to_json(const ComplexRational& c);
Json to_json(const DiagonalMixedPolynomial& psi);
Json to_json(const RealPolynomialMap& f);
Json to_json(const CriticalIndexPartition& p);
Json to_json(const CriticalSetDescription& s);
Json to_json(const DiscriminantGeometry& d);
Json to_json(const RadialWeights& w);
Json to_json(const FibrationVerdict& v);
Json to_json(const SigmaCapVCertificate& c);
Json to_json(const StructureReport& r);
Json to_json(const TangencyWitness& w);
Json to_json(const Tolerances& t, double margin);
Json to_json(const TransversalityReport& r);
// Metadata only; points go to CSV unless include_points is set.
Json to_json(const FiberSample& s, bool include_points = false);
Json to_json(const FiberStats& s);
Json to_json(const FiberComparison& c);

// One row per point: x1..xn, residual.
std::string fiber_csv(const FiberSample& s, std::size_t n);

}  // namespace milnor
