#pragma once

// JSON reports shared by the command-line tool and the Python module.  Every
// report carries a "certificate"; ok is false when any of its checks fails.

#include "mixfrob/bmodel.hpp"
#include "mixfrob/io.hpp"

#include <cstdint>

namespace mixfrob {

struct Report {
    json body;
    bool ok = true;
};

Report polytope_check(const std::string& text, int kmax);

struct BInput {
    LaurentPoly f;
    LatticePolytope delta;
};
// Empty poly text means "use the Newton polytope of f".
BInput read_b_input(const std::string& laurent, const std::string& poly);
Report bmodel_ring(const BInput& in);
Report bmodel_regular(const BInput& in);
Report bmodel_h2(const BInput& in);
// Empty dirs means the single direction m = 0 (the constant term).
Report bmodel_gm(const BInput& in, const std::vector<IVec>& dirs, int D);
Report bmodel_pipeline(const BInput& in, const std::vector<IVec>& dirs, int D, int N);

Report trtlep_verify(const json& j);
Report trtlep_rees(const json& j);
Report trtlep_twist(const json& j, const Rat& ell);

// "psi_ext": {"ny", "N", "components": one jet per rank}
Report unfold_run(const json& j);
Report unfold_universal(const json& j, int N);

// "nilpotent": matrix
Report limit_run(const json& j);

Report amodel_pipeline(const std::string& fan, const std::string& gw, const QVec& z, int D, int N, int cutoff);

// Timings are left out unless asked for, so repeated runs are byte-identical.
Report verify_all(std::uint64_t seed, int instances, const std::vector<int>& only, bool timing);

}  // namespace mixfrob
