#pragma once

#include "mixfrob/amodel.hpp"
#include "mixfrob/bmodel.hpp"

#include <cstdint>
#include <random>

namespace mixfrob {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool ok = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 20261016;
    int random_instances = 50;
    int order = 4;   // D = N for the randomized unfolding suite
};

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

// --- harness pieces, exposed for the unit tests ---

// Reflexive polygons by brute force over vertex sets in [-2,2]^2, one per
// GL_2(Z) class (vertices listed counterclockwise).
std::vector<std::vector<IVec>> enumerate_reflexive_polygons();
// Lexicographically least vertex list over all GL_2(Z) normalizations.
std::vector<IVec> polygon_normal_form(const std::vector<IVec>& ccw_vertices);

// Deterministic search for a Δ-regular f (vertex coefficients 1).
LaurentPoly find_regular_polynomial(const LatticePolytope& delta);
// Dense rank oracle: dim S^k − rank of the generators of J^k, from scratch.
std::vector<std::size_t> jacobian_dims_oracle(const std::vector<IVec>& ccw_vertices, const LaurentPoly& f, int kmax);

// Frobenius-type structure built from a graded Artinian algebra and a
// polynomial family p(t), conjugated by a random unimodular matrix.
struct RandomInstance {
    MixedTrTLEP T;
    QVec zeta;
    bool mixed = false;
    std::string label;
};
RandomInstance random_instance(std::mt19937_64& rng, int D);

// Direct sum of Jordan blocks (sizes), each tensored with I_mult, with the
// compatible V and g; C_1 = 𝔑 over one base variable.
struct JordanInstance {
    MixedTrTLEP T;
    QMat nilpotent;
};
JordanInstance jordan_instance(const std::vector<int>& sizes, int mult, int D);

ToricSurface surface_p2();
ToricSurface surface_p1xp1();
GWTable mock_gw_p2(int cutoff);
GWTable mock_gw_p1xp1(int cutoff);
LaurentPoly p2_mirror(const Rat& a0);

}  // namespace mixfrob
