#include "mixfrob/gauge.hpp"
#include "mixfrob/errors.hpp"

namespace mixfrob {

namespace {

void check_shapes(const std::vector<JMat>& a) {
    if (a.empty()) return;
    const auto& sp = a[0].space();
    if (static_cast<int>(a.size()) != sp->nvars())
        throw DimensionMismatch("one connection matrix per jet variable expected");
    for (const auto& m : a)
        if (m.rows() != a[0].rows() || m.cols() != a[0].rows() || !m.space()->same_shape(*sp))
            throw DimensionMismatch("connection matrices differ in shape");
}

}  // namespace

std::vector<JMat> curvature(const std::vector<JMat>& a) {
    check_shapes(a);
    std::vector<JMat> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            out.push_back(a[j].derivative(i) - a[i].derivative(j) + commutator(a[i], a[j]));
    return out;
}

JMat flat_gauge(const std::vector<JMat>& a) {
    check_shapes(a);
    if (a.empty()) throw DimensionMismatch("flat_gauge needs at least one variable");
    const auto& sp = a[0].space();
    std::size_t r = a[0].rows();

    std::size_t idx = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j, ++idx) {
            auto f = a[j].derivative(i) - a[i].derivative(j) + commutator(a[i], a[j]);
            if (!zero_within(f, {static_cast<int>(i), static_cast<int>(j)}))
                throw NotFlat("curvature F_" + std::to_string(i + 1) + std::to_string(j + 1) + " is nonzero");
        }

    // Integrate along the first variable present in each monomial:
    // α_v g_α = −(A_v g)_{α−e_v}, which only involves lower-degree terms of g.
    std::vector<QMat> coef(sp->size(), QMat(r, r));
    coef[0] = QMat::identity(r);
    std::vector<std::vector<QMat>> acoef(a.size());
    for (std::size_t v = 0; v < a.size(); ++v)
        for (std::size_t m = 0; m < sp->size(); ++m) acoef[v].push_back(a[v].coefficient(m));
    for (std::size_t m = 1; m < sp->size(); ++m) {
        const auto& e = sp->exponent(m);
        int v = 0;
        while (e[v] == 0) ++v;
        long beta = sp->shift_down(v, m);
        QMat acc(r, r);
        for (auto [g1, g2] : sp->products(beta)) {
            if (acoef[v][g1].is_zero() || coef[g2].is_zero()) continue;
            acc = acc + acoef[v][g1] * coef[g2];
        }
        coef[m] = acc * (Rat(-1) / e[v]);
    }
    JMat g(sp, r, r);
    for (std::size_t m = 0; m < sp->size(); ++m)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) g(i, j)[m] = coef[m](i, j);

    for (std::size_t v = 0; v < a.size(); ++v)
        if (!zero_within(g.derivative(v) + a[v] * g, {static_cast<int>(v)}))
            throw NotFlat("gauge residual nonzero along variable " + std::to_string(v + 1));
    return g;
}

JMat gauge_transform(const JMat& g, const JMat& ginv, const JMat& x) { return ginv * x * g; }

}  // namespace mixfrob
