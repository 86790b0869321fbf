#pragma once

#include "mixfrob/jet.hpp"

namespace mixfrob {

// Curvature components F_ij = ∂_i A_j − ∂_j A_i + [A_i, A_j] of d + Σ A_i dz_i,
// one per pair i < j, over every variable of the jet space.
std::vector<JMat> curvature(const std::vector<JMat>& a);

// Gauge g with g(0) = I and dg = −A g, so that g^{-1} dg + g^{-1} A g = 0:
// the columns of g are flat sections.  One A per jet variable.
JMat flat_gauge(const std::vector<JMat>& a);

// Conjugate a jet matrix into the new frame: g^{-1} X g.
JMat gauge_transform(const JMat& g, const JMat& ginv, const JMat& x);

}  // namespace mixfrob
