#pragma once

#include "mixfrob/trtlep.hpp"

#include <string>

namespace mixfrob {

// ψ with ψ(0) = 0 and ∂ψ/∂z_i = C_i ζ for every jet variable.
std::vector<Jet> potential(const FrobType& f, const QVec& zeta);

// Words in the letters C_1..C_m (indices 0..m-1) and U (index m).
using Word = std::vector<int>;
struct MonomialFrame {
    std::vector<Word> words;
    int letters = 0;   // m; letter m is U
};
std::string word_name(const Word& w, int letters);

// Breadth-first search over words applied to ζ at the origin; keeps a word
// when it enlarges the span.  Throws GCFails when the span stays deficient.
MonomialFrame monomial_frame(const FrobType& f, const QVec& zeta);
MonomialFrame monomial_frame(const std::vector<QMat>& cs, const QMat& u, const QVec& zeta);

struct UnfoldingResult {
    MixedTrTLEP T;               // over (t, y) jets
    std::vector<Jet> psi;        // ψ_ext
    std::vector<QVec> directions;   // ∂ψ_ext/∂y_j at the origin
    std::vector<std::string> log;
    Certificate cert;            // (n=0), (t1), (t2), (y1), (y2), (potential), W
};

// Unfold along the y-variables of ψ_ext's jet space, one direction at a time.
// T lives over the t-variables only; requires N <= D.
UnfoldingResult unfold(const MixedTrTLEP& t, const QVec& zeta, const std::vector<Jet>& psi_ext);

// ψ_ext = ψ_ζ(t) + Σ y_j b_j with b_j the unit-vector complement of the image
// of dψ_ζ(0); the certificate also records (IdC) afterwards.
UnfoldingResult universal_unfold(const MixedTrTLEP& t, const QVec& zeta, int N);

struct PairingExtension {
    std::map<int, QMat> g;
    Certificate cert;
};
PairingExtension extend_pairings(const UnfoldingResult& r, const std::map<int, QMat>& g);

SaitoRoundtrip extract_mfs(const UnfoldingResult& r, const QVec& zeta, const Rat& d, const std::map<int, QMat>& g);

// Isomorphism-invariant summary: graded dims, eigenvalues of V(0) on ζ etc.
struct UnfoldingSummary {
    std::map<int, std::size_t> graded_dims;
    std::size_t extra_directions = 0;
};
UnfoldingSummary summarize(const UnfoldingResult& r);

}  // namespace mixfrob
