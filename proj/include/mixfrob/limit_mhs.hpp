#pragma once

#include "mixfrob/trtlep.hpp"

namespace mixfrob {

// Index of nilpotency (smallest s with N^s = 0); throws if N is not nilpotent.
int nilpotency_index(const QMat& n);

// In-frame compatibility of a constant nilpotent 𝔑 with a trTLEP(0)
// structure (single weight 0, pairing g_0):
//   [C_i,𝔑] = 0, [U,𝔑] = 0, [V,𝔑] = −𝔑, g(𝔑a,b) = g(a,𝔑b).
Certificate check_nilpotent_compat(const MixedTrTLEP& t, const QMat& n);

struct LimitResult {
    MixedTrTLEP T;                 // on the cokernel of 𝔑
    Quotient G;                    // representatives and projection
    std::map<int, std::size_t> graded_dims;
    Certificate cert;              // compat, (Pk), q_k symmetric/nondegenerate, mixed checks
};

// W_k = image(Ker 𝔑^{k+1}), q_k([a],[b]) = g(𝔑^k a, b) with pole order λ^{-k}.
LimitResult limit_mixed(const MixedTrTLEP& t, const QMat& n);

}  // namespace mixfrob
