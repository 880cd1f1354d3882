#pragma once

#include <string>

#include "json.hpp"

#include "probclone/feasibility.hpp"
#include "probclone/funcspace.hpp"
#include "probclone/gamesim.hpp"
#include "probclone/optimize.hpp"
#include "probclone/phasestate.hpp"
#include "probclone/rational.hpp"

namespace probclone {

/// Key order is insertion order so that identical inputs give identical bytes.
using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);  ///< "p/q"
Json to_json(const BooleanFunction& f);
Json to_json(const FunctionSet& s);
Json to_json(const TaskInstance& t);
Json to_json(const StateVector& v);  ///< [[re, im], ...]
Json to_json(const GramMatrix& g);
Json to_json(const RationalMatrix& g);
Json to_json(const HermitianMatrix3<double>& m);    ///< rows of [re, im]
Json to_json(const HermitianMatrix3<Rational>& m);  ///< rows of ["p/q", "p/q"]
Json to_json(const FeasibilityPoint<double>& pt, double tol = kDefaultPsdTol);
Json to_json(const FeasibilityPoint<Rational>& pt);
Json to_json(const OptimumReport& r);
Json to_json(const ScoreReport& r);

enum class Format { Json, Csv, Table };

Format parse_format(std::string_view text);

/// JSON is canonical; CSV ("path,value" rows) and the aligned table are
/// flattenings of the same document.
std::string render(const Json& doc, Format format);

}  // namespace probclone
