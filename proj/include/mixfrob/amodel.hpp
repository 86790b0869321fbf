#pragma once

#include "mixfrob/limit_mhs.hpp"
#include "mixfrob/polytope.hpp"
#include "mixfrob/unfolding.hpp"

#include <map>
#include <string>

namespace mixfrob {

// Smooth complete toric surface: rays v_1..v_n (any order; sorted by angle
// internally) and a nef basis γ_1..γ_r as combinations of the ray divisors.
struct ToricSurface {
    std::vector<IVec> rays;
    std::vector<std::vector<Rat>> nef;
};

struct SurfaceIntersections {
    std::vector<IVec> rays;          // counterclockwise
    std::vector<long> self;          // D_i²
    QMat gamma;                      // γ_i·γ_j
    QVec c1_gamma;                   // c_1(S)·γ_j
    Rat c1_squared;
    QVec c1;                         // c_1(S) in the γ basis
};
SurfaceIntersections surface_intersections(const ToricSurface& s);

// H*(X) for X = P(K_S ⊕ O) on the basis Γ_0..Γ_{r+1}, Δ_0..Δ_{r+1}
// (Γ_a = p*γ_a, Δ_a = ξ ∪ Γ_a, ξ² = ξ·c_1(S)).
struct LocalCohomology {
    int r = 0;
    std::vector<int> degree;         // real degrees
    std::vector<std::string> names;
    QMat pairing;                    // ∫_X a ∪ b
    std::vector<QMat> cup;           // cup[b] = matrix of (e_b ∪ ·)
    std::vector<QVec> gamma_dual;    // Γ_k^∨, k = 1..r (dual basis w.r.t. pairing)
    std::size_t size() const { return degree.size(); }
    std::size_t gamma(int a) const { return static_cast<std::size_t>(a); }
    std::size_t delta(int a) const { return static_cast<std::size_t>(r + 2 + a); }
};
LocalCohomology build_cohomology(const ToricSurface& s);

struct GWTable {
    int r = 0;
    std::map<std::vector<long>, Rat> N;   // nef-basis degree → N_d
    int cutoff = 3;
};

struct SmallQuantum {
    LocalCohomology H;
    MixedTrTLEP T;      // trTLEP(0) over τ_i = log q_i − log z_i at q_0 = 0
    QMat nilpotent;     // Δ_0 ∪
    Certificate cert;
};
SmallQuantum small_quantum_connection(const ToricSurface& s, const GWTable& gw, const QVec& z, int D);

struct ALimit {
    LimitResult limit;
    MixedTrTLEP T;      // limit twisted by +1/2
    Certificate cert;
};
ALimit limit_and_twist(const SmallQuantum& sq);

struct APipelineResult {
    SmallQuantum sq;
    ALimit lim;
    SectionConditions conditions;
    UnfoldingResult unfolding;
    PairingExtension pairings;
    SaitoRoundtrip mfs;
    Rat charge;
    Certificate cert;
};
APipelineResult local_a_pipeline(const ToricSurface& s, const GWTable& gw, const QVec& z, int N, int D);

// Fan file: lines "x y" (rays) and "nef a_1 .. a_n"; '#' comments.
ToricSurface parse_fan(const std::string& text);
// GW file: lines "d_1 .. d_r : p/q".
GWTable parse_gw(const std::string& text, int r, int cutoff);

}  // namespace mixfrob
