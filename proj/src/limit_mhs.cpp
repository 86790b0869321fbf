#include "mixfrob/limit_mhs.hpp"
#include "mixfrob/errors.hpp"

namespace mixfrob {

namespace {

QMat power(const QMat& a, int k) {
    QMat p = QMat::identity(a.rows());
    for (int i = 0; i < k; ++i) p = p * a;
    return p;
}

bool commutes_all_orders(const JMat& x, const QMat& n, const QMat& rhs) {
    for (std::size_t m = 0; m < x.space()->size(); ++m) {
        QMat c = x.coefficient(m);
        QMat want = m == 0 ? rhs : QMat(n.rows(), n.cols());
        if (!(commutator(c, n) == want)) return false;
    }
    return true;
}

}  // namespace

int nilpotency_index(const QMat& n) {
    if (n.rows() != n.cols()) throw DimensionMismatch("nilpotent endomorphism must be square");
    QMat p = QMat::identity(n.rows());
    for (std::size_t s = 0; s <= n.rows(); ++s) {
        if (p.is_zero()) return static_cast<int>(s);
        p = p * n;
    }
    throw CompatFails("endomorphism is not nilpotent");
}

Certificate check_nilpotent_compat(const MixedTrTLEP& t, const QMat& n) {
    Certificate c;
    std::size_t r = t.F.rank;
    if (n.rows() != r || n.cols() != r) throw DimensionMismatch("𝔑 size differs from rank");
    bool nil = true;
    try {
        nilpotency_index(n);
    } catch (const CompatFails&) {
        nil = false;
    }
    c.add("nilpotent", nil);
    auto jumps = t.W.jumps();
    c.add("single weight 0", jumps.size() == 1 && jumps[0] == 0);
    QMat zero(r, r);
    for (std::size_t i = 0; i < t.F.C.size(); ++i)
        c.add("[C" + std::to_string(i + 1) + ",N] = 0", commutes_all_orders(t.F.C[i], n, zero));
    c.add("[U,N] = 0", commutes_all_orders(t.F.U, n, zero));
    c.add("[V,N] = -N", commutes_all_orders(t.F.V, n, -n));
    auto it = t.g.find(0);
    if (it == t.g.end() || it->second.rows() != r) {
        c.add("g_0 present", false);
    } else {
        c.add("g(Na,b) = g(a,Nb)", n.transpose() * it->second == it->second * n);
    }
    return c;
}

LimitResult limit_mixed(const MixedTrTLEP& t, const QMat& n) {
    LimitResult res;
    res.cert.merge("compat: ", check_nilpotent_compat(t, n));
    if (!res.cert.ok()) throw CompatFails(res.cert.first_failure());
    std::size_t r = t.F.rank;
    const auto& sp = t.F.sp;
    const QMat& g = t.g.at(0);
    int s = nilpotency_index(n);

    QSubspace im = image(n);
    res.G = quotient(im);
    const QMat& P = res.G.projection;
    QMat R = res.G.section();
    std::size_t dg = R.cols();

    JMat Pj = JMat::constant(sp, P), Rj = JMat::constant(sp, R);
    MixedTrTLEP& T = res.T;
    T.F = FrobType::zero(sp, dg);
    for (std::size_t i = 0; i < t.F.C.size(); ++i) T.F.C[i] = Pj * t.F.C[i] * Rj;
    T.F.U = Pj * t.F.U * Rj;
    T.F.V = Pj * t.F.V * Rj;

    std::map<int, QSubspace> steps;
    std::vector<QSubspace> kers;   // Ker 𝔑^{k+1}
    for (int k = 0; k < std::max(s, 1); ++k) {
        kers.push_back(kernel(power(n, k + 1)));
        steps[k] = apply(P, kers.back());
    }
    T.W = Flag(dg, steps);

    for (int k = 0; k < std::max(s, 1); ++k) {
        std::string K = std::to_string(k);
        QMat nk = power(n, k);
        // (Pk): {b : g(𝔑^k a, b) = 0 for a ∈ Ker 𝔑^{k+1}} = Im 𝔑 + Ker 𝔑^k
        std::vector<QVec> rows;
        for (const auto& a : kers[k].vectors()) rows.push_back(g.transpose() * (nk * a));
        QSubspace orth = rows.empty() ? QSubspace::full(r) : kernel(QMat::from_rows(rows, r));
        QSubspace want = sum(im, kernel(nk));
        res.cert.add("(P" + K + ")", orth == want);
    }
    for (int k : T.W.jumps()) {
        std::string K = std::to_string(k);
        GradedPiece gp = graded_piece(T.W, k);
        std::size_t dk = gp.dim();
        res.graded_dims[k] = dk;
        // lift each graded basis vector into Ker 𝔑^{k+1}
        auto kb = kers[k].vectors();
        QMat Kmat = QMat::from_columns(kb, r);
        QMat PK = P * Kmat;
        std::vector<QVec> lifts;
        for (std::size_t i = 0; i < dk; ++i) {
            auto c = solve(PK, gp.basis.col(i));
            if (!c) throw CompatFails("graded vector does not lift to Ker N^" + std::to_string(k + 1));
            lifts.push_back(Kmat * *c);
        }
        QMat nk = power(n, k);
        QMat q(dk, dk);
        for (std::size_t i = 0; i < dk; ++i)
            for (std::size_t j = 0; j < dk; ++j) q(i, j) = dot(nk * lifts[i], g * lifts[j]);
        res.cert.add("q_" + K + " symmetric", q == q.transpose());
        res.cert.add("q_" + K + " nondegenerate", det(q) != 0);
        T.g[k] = q;
    }
    res.cert.merge("limit: ", check_mixed_trtlep(T));
    return res;
}

}  // namespace mixfrob
