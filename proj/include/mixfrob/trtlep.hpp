#pragma once

#include "mixfrob/certificate.hpp"
#include "mixfrob/jet.hpp"
#include "mixfrob/subspace.hpp"

#include <map>

namespace mixfrob {

// Frobenius type data in the flat frame (∇^r = d):
//   ∇ = d + λ^{-1} Σ C_i dz_i + (λ^{-1} U − V) dλ/λ  on column vectors,
// with one C per jet variable (base t's first, then unfolding y's).
struct FrobType {
    SpacePtr sp;
    std::size_t rank = 0;
    std::vector<JMat> C;
    JMat U, V;

    static FrobType zero(SpacePtr sp, std::size_t rank);
    int nvars() const { return sp->nvars(); }
};

// [C_i,C_j] = 0, ∂_iC_j = ∂_jC_i, [C_i,U] = 0, ∂_iV = 0,
// ∂_iU = [C_i,V] − C_i.
Certificate check_frob_type(const FrobType& f);
// Cross-check: λ-coefficients of the curvature of the assembled connection.
Certificate check_connection_curvature(const FrobType& f);

// A graded piece Gr_k = W_k / W_{k-1}: representatives (columns) and a
// projection that reads coordinates of vectors of W_k modulo W_{k-1}.
struct GradedPiece {
    QMat basis;   // n x dk
    QMat proj;    // dk x n
    std::size_t dim() const { return basis.cols(); }
};
GradedPiece graded_piece(const Flag& w, int k);
QMat induced(const GradedPiece& gp, const QMat& x);

// Mixed trTLEP data: weight flag on flat sections and constant graded
// pairings g_k on Gr_k (in the graded_piece basis).  The pairing on Gr_k has
// pole order λ^{-k}: g_k symmetric, C̄, Ū self-adjoint, V̄ᵀg + gV̄ = k g.
struct MixedTrTLEP {
    FrobType F;
    Flag W;
    std::map<int, QMat> g;
};

Certificate check_mixed_trtlep(const MixedTrTLEP& t);
// W(ℓ)_{k+2ℓ} = W_k, g(ℓ)_{k+2ℓ} = g_k, V ↦ V + ℓ.
MixedTrTLEP tate_twist(const MixedTrTLEP& t, const Rat& ell);

struct SectionConditions {
    bool IC = false, IdC = false, GC = false, EC = false;
};
SectionConditions section_conditions(const FrobType& f, const QVec& zeta, const Rat& d);

// Krylov span of ζ under the order-0 matrices {C_i(0), U(0)}.
QSubspace generated_span(const FrobType& f, const QVec& zeta);

// Decreasing filtration F^p stored at a few indices: F^p is the value at the
// smallest stored index >= p (zero above the top index).
using DecFiltration = std::map<int, QSubspace>;
QSubspace dec_at(const DecFiltration& f, int p, std::size_t n);

// Hodge filtration over the base: F^p spanned by the columns of a jet matrix.
using JetFiltration = std::map<int, JMat>;

// Opposite filtration (increasing U_ℓ) and graded polarizations S_k (in the
// graded_piece basis of W, (−1)^k-symmetric) checked at the closed point.
Certificate check_opposite(const DecFiltration& f0, const Flag& w, const Flag& u, const std::map<int, QMat>& s);

struct ReesResult {
    MixedTrTLEP T;
    QMat frame0;                 // frame at the origin, in original coordinates
    std::vector<int> hodge;      // Hodge level ℓ of each frame vector
    Certificate cert;
};
ReesResult rees_construct(const Flag& w, const JetFiltration& f, const Flag& u, const std::map<int, QMat>& s);

// Saito data in flat coordinates x_1..x_n.  mult[a] is the matrix of ∂_a∘
// on the basis (∂_1..∂_n); e and E are vector fields; I is constant in the flat
// frame; g_k are metrics on Gr^I_k.
struct SaitoMFS {
    SpacePtr sp;
    std::size_t n = 0;
    std::vector<JMat> mult;
    std::vector<Jet> e, E;
    Flag I;
    std::map<int, JMat> g;
    Rat d;
};

Certificate check_mfs(const SaitoMFS& m);
// C_a = −(∂_a∘), U = E∘, V = ∇E − c with c = (2 − d)/2.
MixedTrTLEP mfs_to_mixed(const SaitoMFS& m);

// Saito structure induced by a section with (IdC) and (EC)_d, in the flat
// coordinates x = −ψ_ζ(t) where μ = −C_•ζ is the identity.
struct SaitoRoundtrip {
    SaitoMFS M;
    std::vector<Jet> t_of_x;     // inverse coordinate change
    Certificate cert;            // includes the comparison with the input
};
SaitoRoundtrip roundtrip_saito(const MixedTrTLEP& t, const QVec& zeta, const Rat& d);

}  // namespace mixfrob
