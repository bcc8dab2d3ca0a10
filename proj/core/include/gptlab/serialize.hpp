#pragma once

#include <nlohmann/json.hpp>

#include "gptlab/compatibility.hpp"
#include "gptlab/mixing.hpp"
#include "gptlab/qubit.hpp"
#include "gptlab/uncertainty.hpp"

namespace gptlab {

using Json = nlohmann::ordered_json;

// {"kind": "simplex" | "polygon" | "disc", "n": int, "rescaled": bool,
//  "resolution": int}; "representation": "standard" | "rescaled" may replace
// "rescaled", so the output of to_json(Theory) reads back.
TheoryPtr theory_from_json(const Json& j);
Json to_json(const Theory& t);
Json to_json(const Observable& f);
Observable observable_from_json(const TheoryPtr& t, const Json& j);
Json to_json(const JointObservable& j);
JointObservable joint_from_json(const TheoryPtr& t, const Json& j);

Json to_json(const CompatResult& r);
Json to_json(const StateSubset& s);
Json to_json(const BisectTrace& b);
Json to_json(const ScanResult& s);
Json to_json(const ChiCompReport& r);
Json to_json(const DimensionReport& r);
Json to_json(const ThresholdReport& r);
Json to_json(const GammaResult& g);
Json to_json(const MajorizationResult& m);
Json to_json(const MurReport& r);
Json to_json(const MurSweep& s);
Json to_json(const ConsistencyReport& r);

}  // namespace gptlab
