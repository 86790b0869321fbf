#pragma once

#include <string>
#include <vector>

namespace mixfrob {

using IVec = std::vector<long>;

// Supporting inequality <normal, x> >= offset with a primitive inward normal.
struct Facet {
    IVec normal;
    long offset;
};

class LatticePolytope {
public:
    // Convex hull of the given points; throws NotFullDimensional.
    LatticePolytope() = default;
    LatticePolytope(int d, std::vector<IVec> points);

    int dim() const { return d_; }
    const std::vector<IVec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    // m ∈ kΔ
    bool contains(const IVec& m, long k = 1) const;

private:
    int d_ = 0;
    std::vector<IVec> vertices_;
    std::vector<Facet> facets_;
};

// Integer points of kΔ, sorted lexicographically.
std::vector<IVec> lattice_points(const LatticePolytope& p, long k);

bool is_reflexive(const LatticePolytope& p);
// {u : <m,u> >= -1 on Δ}; throws Unsupported when it is not a lattice polytope.
LatticePolytope dual_polytope(const LatticePolytope& p);

// Codimension of the smallest face of the cone over {1}×Δ containing (k, m);
// the apex (0, 0) has codimension d+1.
int face_codimension(const LatticePolytope& p, long k, const IVec& m);
// (k, m) ∈ I(ℓ): on no face of codimension >= ℓ.
bool in_weight_index_set(const LatticePolytope& p, int ell, long k, const IVec& m);

struct GenerationResult {
    bool ok = true;
    long failing_degree = 0;
};
// Every point of kΔ is a sum of k points of Δ, for 2 <= k <= kmax.
GenerationResult degree_one_generates(const LatticePolytope& p, long kmax);

// d = 2 only: the fan over the faces of Δ is smooth (unimodular cones).
bool is_smooth_fano(const LatticePolytope& p);

// Number of lattice points of Δ.
std::size_t lattice_point_count(const LatticePolytope& p);

// "d" on the first line, then one vertex per line; '#' starts a comment.
LatticePolytope parse_polytope(const std::string& text);

}  // namespace mixfrob
