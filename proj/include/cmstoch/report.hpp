#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "cmstoch/cm_analysis.hpp"
#include "cmstoch/discounted.hpp"
#include "cmstoch/matrix_game.hpp"
#include "cmstoch/mdp_average.hpp"

// JSON encoders for every result type. Rationals are emitted as canonical
// "p/q" strings and object keys are sorted, so equal results always encode
// to identical bytes.
namespace cmstoch::report {

using nlohmann::json;

json encode(const CmCertificate& cert);
json encode(const MatrixGameSolution& sol);
json encode(const KaplanskyResult& result);
json encode(const Lemma2Result& result);
json encode(const DiscountedSolution& sol);
json encode(const UndiscountedVerification& v);
json encode(const CmWitness& w);
json encode(const CmReport& r);
json encode(const VanishingDiscountTrace& trace, bool include_steps = true);
json encode(const ThresholdSearch& search);
json encode(const Theorem11Result& result);
json encode(const Theorem13Result& result);

// 64-bit FNV-1a of the bytes, as "fnv1a64:<16 hex digits>".
std::string fingerprint(std::string_view bytes);

}  // namespace cmstoch::report
