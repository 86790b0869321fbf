#pragma once

#include "mixfrob/certificate.hpp"
#include "mixfrob/trtlep.hpp"
#include "mixfrob/unfolding.hpp"

#include <json.hpp>

#include <optional>

namespace mixfrob {

using json = nlohmann::json;

// Rationals are strings "p/q"; integers are also accepted on input.
json to_json(const Rat& q);
Rat rat_from_json(const json& j);

json to_json(const QVec& v);
QVec qvec_from_json(const json& j);
json to_json(const QMat& m);   // row-major list of rows
QMat qmat_from_json(const json& j);

// Jets are {"e_1,..,e_n": "p/q"} over nonzero coefficients; a constant jet
// is written as a plain string.
json to_json(const Jet& x);
Jet jet_from_json(const SpacePtr& sp, const json& j);
json to_json(const JMat& m);
JMat jmat_from_json(const SpacePtr& sp, const json& j);

json to_json(const Flag& w);   // {"k": basis rows of W_k}
Flag flag_from_json(std::size_t n, const json& j);

json to_json(const Certificate& c);

// {"rank","nt","ny","D","N","C","U","V","W","g"}; optional "A" (connection
// matrices of a non-flat frame, one per variable) is gauged away on input.
json to_json(const MixedTrTLEP& t);
struct TrTLEPInput {
    MixedTrTLEP T;
    std::optional<QVec> zeta;
    std::optional<Rat> d;
    json extra;   // the whole document, for command-specific keys
};
TrTLEPInput trtlep_from_json(const json& j);

json to_json(const SaitoMFS& m);
json to_json(const UnfoldingResult& r);

// Parse or throw ParseError.
json parse_json_text(const std::string& text);

}  // namespace mixfrob
