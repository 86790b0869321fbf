#pragma once

#include "mixfrob/certificate.hpp"
#include "mixfrob/polytope.hpp"
#include "mixfrob/unfolding.hpp"

#include <map>
#include <optional>
#include <string>

namespace mixfrob {

struct LaurentPoly {
    int d = 0;
    std::map<IVec, Rat> terms;   // exponent → nonzero coefficient

    LaurentPoly() = default;
    explicit LaurentPoly(int dim) : d(dim) {}
    void add(const IVec& m, const Rat& c);
    Rat coeff(const IVec& m) const;
    LatticePolytope newton() const;   // throws NotFullDimensional
};
// Lines "m_1 .. m_d : p/q"; '#' comments; repeated exponents add up.
LaurentPoly parse_laurent(const std::string& text);

// Element of the cone ring S_Δ; key (k, m_1..m_d) stands for t_0^k t^m.
using ConeElem = std::map<IVec, Rat>;
// L_f^0 = t_0∂_{t_0} + t_0 f, L_f^i = θ_i + t_0 θ_i f (i = 1..d).
ConeElem apply_Lf(const LaurentPoly& f, int i, const ConeElem& s);

// Graded Jacobian ring S_Δ / (t_0 f, t_0 θ_i f) in degrees 0..d+1.
struct JacobianRing {
    LatticePolytope delta;
    LaurentPoly f;
    int d = 0;
    std::vector<std::vector<IVec>> S;       // lattice points of kΔ, lex order
    std::vector<QMat> ideal;                // spanning columns of J^k in S^k
    std::vector<std::vector<IVec>> basis;   // monomial basis of R^k
    std::vector<QMat> reduce;               // S^k → R^k coordinates
    std::vector<std::size_t> offset;        // start of R^k in the global basis

    std::vector<std::size_t> dims() const;
    std::size_t total() const;
    std::vector<int> degrees() const;       // degree of each global basis element
    // R-coordinates (global) of t_0^k t^m.
    QVec reduce_monomial(long k, const IVec& m) const;
};
JacobianRing jacobian_ring(const LaurentPoly& f, const LatticePolytope& delta);

// d <= 2: Newton polytope is Δ and no face restriction has a torus critical
// point with critical value 0.
bool is_delta_regular(const LaurentPoly& f, const LatticePolytope& delta);

struct WeightOnR {
    Flag W;
    std::map<int, QSubspace> raw;   // image of I(ℓ), ℓ = 0..d+2
};
WeightOnR weight_filtration_on_R(const JacobianRing& jr);

// Multiplication by t_0 t^m on R (global basis).
QMat multiply_by(const JacobianRing& jr, const IVec& m);
// One matrix per basis element of R^1.
std::vector<QMat> higgs_matrices(const JacobianRing& jr);

struct H2Result {
    bool ok = false;
    std::size_t dim_R1 = 0;
    std::size_t dim_J1 = 0;
    int failing_degree = -1;
    Certificate cert;
};
H2Result check_h2_generation(const JacobianRing& jr);

struct GMJetData {
    std::vector<IVec> directions;
    SpacePtr sp;
    std::vector<JMat> A;   // ∇_{∂a_j} e_b = Σ_i A_j(i,b) e_i
    Certificate cert;
};
GMJetData gm_connection(const LaurentPoly& f0, const LatticePolytope& delta, const std::vector<IVec>& directions, int D);

struct BPipelineResult {
    JacobianRing jr;
    H2Result h2;
    GMJetData gm;
    WeightOnR weight;
    ReesResult rees;
    QVec zeta;
    UnfoldingResult unfolding;
    PairingExtension pairings;
    SaitoRoundtrip mfs;
    Rat charge;
    Certificate cert;
};
// Graded polarization used when none is supplied: antidiagonal, alternating
// on odd weights.
std::map<int, QMat> default_polarization(const Flag& w);
BPipelineResult b_model_pipeline(const LaurentPoly& f, const LatticePolytope& delta, const std::vector<IVec>& directions,
                                 int D, int N, const std::optional<std::map<int, QMat>>& s = std::nullopt);

}  // namespace mixfrob
