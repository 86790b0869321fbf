#include "mixfrob/reports.hpp"

#include "mixfrob/acceptance.hpp"
#include "mixfrob/amodel.hpp"
#include "mixfrob/errors.hpp"
#include "mixfrob/limit_mhs.hpp"

#include <algorithm>

namespace mixfrob {

namespace {

json ivec_json(const IVec& v) { return json(v); }

json points_json(const std::vector<IVec>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(ivec_json(p));
    return a;
}

std::vector<IVec> sorted(std::vector<IVec> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<IVec> directions_or_origin(std::vector<IVec> dirs, int d) {
    if (dirs.empty()) dirs.push_back(IVec(d, 0));
    return dirs;
}

}  // namespace

// ---- polytope ----

Report polytope_check(const std::string& text, int kmax) {
    LatticePolytope p = parse_polytope(text);
    Report r;
    Certificate c;
    json out;
    out["dimension"] = p.dim();
    out["vertices"] = points_json(sorted(p.vertices()));
    json counts = json::array();
    for (int k = 0; k <= kmax; ++k) counts.push_back(lattice_points(p, k).size());
    out["lattice_points"] = counts;
    bool refl = is_reflexive(p);
    out["reflexive"] = refl;
    c.add("reflexive", refl);
    if (refl) {
        auto dual = dual_polytope(p);
        out["dual_vertices"] = points_json(sorted(dual.vertices()));
        bool inv = sorted(dual_polytope(dual).vertices()) == sorted(p.vertices());
        c.add("dual of dual = polytope", inv);
    }
    if (kmax >= 2) {
        auto g = degree_one_generates(p, kmax);
        out["degree_one_generates"] = g.ok;
        if (!g.ok) out["failing_degree"] = g.failing_degree;
        c.add("degree-one generation up to k = " + std::to_string(kmax), g.ok);
    }
    if (p.dim() == 2) out["smooth_fano"] = is_smooth_fano(p);
    out["certificate"] = to_json(c);
    r.body = out;
    r.ok = c.ok();
    return r;
}

// ---- bmodel ----

BInput read_b_input(const std::string& laurent, const std::string& poly) {
    BInput in;
    in.f = parse_laurent(laurent);
    in.delta = poly.empty() ? in.f.newton() : parse_polytope(poly);
    return in;
}

namespace {

json ring_json(const JacobianRing& jr) {
    json basis = json::object();
    for (std::size_t k = 0; k < jr.basis.size(); ++k) basis[std::to_string(k)] = points_json(jr.basis[k]);
    return json{{"dims", jr.dims()}, {"basis", basis}, {"degrees", jr.degrees()}};
}

}  // namespace

Report bmodel_ring(const BInput& in) {
    auto jr = jacobian_ring(in.f, in.delta);
    Certificate c;
    for (std::size_t k = 0; k < jr.S.size(); ++k) {
        std::string K = std::to_string(k);
        c.add("dim R^" + K + " = dim S^" + K + " - rank J^" + K, jr.dims()[k] == jr.S[k].size() - rank(jr.ideal[k]));
        // reducing a basis monomial returns its own coordinate vector
        bool idem = true;
        for (std::size_t i = 0; i < jr.basis[k].size(); ++i)
            idem = idem && jr.reduce_monomial(k, jr.basis[k][i]) == unit_vector(jr.total(), jr.offset[k] + i);
        c.add("reduction is a projection in degree " + K, idem);
    }
    auto w = weight_filtration_on_R(jr);
    json raw = json::object(), wd = json::object();
    for (const auto& [l, s] : w.raw) raw[std::to_string(l)] = s.dim();
    for (int k = w.W.lo(); k <= w.W.hi(); ++k) wd[std::to_string(k)] = w.W.at(k).dim();
    bool nested = true;
    for (const auto& [l, s] : w.raw) {
        auto it = w.raw.find(l + 1);
        if (it != w.raw.end()) nested = nested && it->second.contains(s);
    }
    c.add("I images nested", nested);
    json higgs = json::array();
    auto hs = higgs_matrices(jr);
    for (const auto& h : hs) higgs.push_back(to_json(h));
    bool comm = true;
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j) comm = comm && commutator(hs[i], hs[j]).is_zero();
    c.add("Higgs matrices commute", comm);
    for (const auto& h : hs) c.add("Higgs field preserves W", [&] {
            for (const auto& [k, s] : w.W.steps())
                if (!is_invariant(h, s)) return false;
            return true;
        }());
    json out = ring_json(jr);
    out["weight"] = {{"raw_I", raw}, {"W", wd}};
    out["higgs"] = higgs;
    out["certificate"] = to_json(c);
    return {out, c.ok()};
}

Report bmodel_regular(const BInput& in) {
    bool reg = is_delta_regular(in.f, in.delta);
    return {json{{"regular", reg}}, reg};
}

Report bmodel_h2(const BInput& in) {
    auto jr = jacobian_ring(in.f, in.delta);
    auto h = check_h2_generation(jr);
    json out{{"ok", h.ok}, {"dim_R1", h.dim_R1}, {"dim_J1", h.dim_J1}, {"certificate", to_json(h.cert)}};
    if (h.failing_degree >= 0) out["failing_degree"] = h.failing_degree;
    return {out, h.ok};
}

Report bmodel_gm(const BInput& in, const std::vector<IVec>& dirs, int D) {
    auto gm = gm_connection(in.f, in.delta, directions_or_origin(dirs, in.delta.dim()), D);
    json a = json::array();
    for (const auto& m : gm.A) a.push_back(to_json(m));
    json out{{"directions", points_json(gm.directions)}, {"order", D}, {"A", a}, {"certificate", to_json(gm.cert)}};
    return {out, gm.cert.ok()};
}

Report bmodel_pipeline(const BInput& in, const std::vector<IVec>& dirs, int D, int N) {
    auto res = b_model_pipeline(in.f, in.delta, directions_or_origin(dirs, in.delta.dim()), D, N);
    json out{{"ring", ring_json(res.jr)},
             {"charge", to_json(res.charge)},
             {"zeta", to_json(res.zeta)},
             {"hodge", res.rees.hodge},
             {"unfolding", to_json(res.unfolding)},
             {"mfs", to_json(res.mfs.M)},
             {"certificate", to_json(res.cert)}};
    return {out, res.cert.ok()};
}

// ---- trtlep ----

Report trtlep_verify(const json& j) {
    auto in = trtlep_from_json(j);
    auto c = check_mixed_trtlep(in.T);
    json out{{"certificate", to_json(c)}};
    bool ok = c.ok();
    if (in.zeta) {
        auto sc = section_conditions(in.T.F, *in.zeta, in.d.value_or(Rat(0)));
        json s{{"IC", sc.IC}, {"IdC", sc.IdC}, {"GC", sc.GC}};
        if (in.d) s["EC"] = sc.EC;
        out["section_conditions"] = s;
    }
    return {out, ok};
}

Report trtlep_rees(const json& j) {
    if (!j.is_object()) throw ParseError("Rees input must be a JSON object");
    int r = j.value("rank", 0), nt = j.value("nt", 0), D = j.value("D", 0);
    if (r <= 0 || nt < 0 || D < 1) throw ParseError("Rees input needs rank > 0, nt >= 0, D >= 1");
    SpacePtr sp = JetSpace::get(nt, 0, D, 0);
    JetFiltration F;
    if (!j.contains("F") || !j["F"].is_object()) throw ParseError("'F' must map p to a jet matrix with F^p as columns");
    for (const auto& [k, v] : j["F"].items()) F[std::stoi(k)] = jmat_from_json(sp, v);
    if (!j.contains("W") || !j.contains("U")) throw ParseError("'W' and 'U' are required");
    Flag W = flag_from_json(r, j["W"]), U = flag_from_json(r, j["U"]);
    std::map<int, QMat> S;
    if (j.contains("S"))
        for (const auto& [k, v] : j["S"].items()) S[std::stoi(k)] = qmat_from_json(v);
    auto res = rees_construct(W, F, U, S);
    json out{{"structure", to_json(res.T)},
             {"frame0", to_json(res.frame0)},
             {"hodge", res.hodge},
             {"certificate", to_json(res.cert)}};
    return {out, res.cert.ok()};
}

Report trtlep_twist(const json& j, const Rat& l) {
    auto in = trtlep_from_json(j);
    auto tw = tate_twist(in.T, l);
    auto back = tate_twist(tw, -l);
    Certificate c = check_mixed_trtlep(tw);
    bool inv = back.W == in.T.W && back.g == in.T.g && (back.F.V - in.T.F.V).is_zero();
    c.add("twist(-l) after twist(l) is the identity", inv);
    json out{{"structure", to_json(tw)}, {"certificate", to_json(c)}};
    if (in.zeta && in.d) {
        bool a = section_conditions(in.T.F, *in.zeta, *in.d).EC;
        bool b = section_conditions(tw.F, *in.zeta, *in.d + 2 * l).EC;
        out["EC"] = {{"before", a}, {"after_shifted", b}};
        c.add("(EC)_d <-> (EC)_{d+2l}", a == b);
        out["certificate"] = to_json(c);
    }
    return {out, c.ok()};
}

// ---- unfolding ----

namespace {

Report finish_unfolding(const TrTLEPInput& in, const UnfoldingResult& u) {
    json out = to_json(u);
    Certificate c = u.cert;
    if (!in.T.g.empty()) {
        auto pe = extend_pairings(u, in.T.g);
        c.merge("pairings: ", pe.cert);
        json g = json::object();
        for (const auto& [k, m] : pe.g) g[std::to_string(k)] = to_json(m);
        out["pairings"] = g;
        if (in.d && in.zeta) {
            auto m = extract_mfs(u, *in.zeta, *in.d, pe.g);
            c.merge("saito: ", m.cert);
            out["mfs"] = to_json(m.M);
        }
    }
    out["certificate"] = to_json(c);
    return {out, c.ok()};
}

}  // namespace

Report unfold_run(const json& j) {
    auto in = trtlep_from_json(j);
    if (!in.zeta) throw ParseError("'zeta' is required");
    const json& pe = in.extra.contains("psi_ext") ? in.extra["psi_ext"] : throw ParseError("'psi_ext' is required");
    int ny = pe.value("ny", 0), N = pe.value("N", 0);
    const auto& base = in.T.F.sp;
    SpacePtr sp = JetSpace::get(base->nt(), ny, base->D(), N);
    if (!pe.contains("components") || !pe["components"].is_array() || pe["components"].size() != in.T.F.rank)
        throw ParseError("'psi_ext.components' needs one jet per rank");
    std::vector<Jet> psi;
    for (const auto& c : pe["components"]) psi.push_back(jet_from_json(sp, c));
    return finish_unfolding(in, unfold(in.T, *in.zeta, psi));
}

Report unfold_universal(const json& j, int N) {
    auto in = trtlep_from_json(j);
    if (!in.zeta) throw ParseError("'zeta' is required");
    return finish_unfolding(in, universal_unfold(in.T, *in.zeta, N));
}

// ---- limit ----

Report limit_run(const json& j) {
    auto in = trtlep_from_json(j);
    if (!in.extra.contains("nilpotent")) throw ParseError("'nilpotent' matrix is required");
    QMat n = qmat_from_json(in.extra["nilpotent"]);
    auto res = limit_mixed(in.T, n);
    json gd = json::object();
    for (const auto& [k, d] : res.graded_dims) gd[std::to_string(k)] = d;
    json reps = json::array();
    for (const auto& v : res.G.representatives) reps.push_back(to_json(v));
    json out{{"structure", to_json(res.T)},
             {"graded_dims", gd},
             {"cokernel_representatives", reps},
             {"nilpotency_index", nilpotency_index(n)},
             {"certificate", to_json(res.cert)}};
    return {out, res.cert.ok()};
}

// ---- amodel ----

Report amodel_pipeline(const std::string& fan, const std::string& gw, const QVec& zv, int D, int N, int cutoff) {
    ToricSurface s = parse_fan(fan);
    int r = static_cast<int>(s.rays.size()) - 2;
    GWTable table = parse_gw(gw, r, cutoff);
    auto res = local_a_pipeline(s, table, zv, N, D);
    json gd = json::object();
    for (const auto& [k, d] : res.lim.limit.graded_dims) gd[std::to_string(k)] = d;
    json out{{"cohomology", {{"names", res.sq.H.names}, {"degrees", res.sq.H.degree}, {"pairing", to_json(res.sq.H.pairing)}}},
             {"limit_graded_dims", gd},
             {"V_cokernel", to_json(res.lim.T.F.V.constant_part())},
             {"charge", to_json(res.charge)},
             {"section_conditions", {{"IC", res.conditions.IC}, {"GC", res.conditions.GC}, {"EC", res.conditions.EC}}},
             {"mfs", to_json(res.mfs.M)},
             {"certificate", to_json(res.cert)}};
    return {out, res.cert.ok()};
}

// ---- verify ----

Report verify_all(std::uint64_t seed, int instances, const std::vector<int>& only, bool timing) {
    AcceptanceOptions opt;
    opt.seed = seed;
    opt.random_instances = instances;
    std::vector<CriterionResult> rs;
    if (only.empty())
        rs = run_acceptance(opt);
    else
        for (int id : only) rs.push_back(run_criterion(id, opt));
    json a = json::array();
    bool ok = true;
    for (const auto& r : rs) {
        json e{{"id", r.id}, {"title", r.title}, {"ok", r.ok}, {"detail", r.detail}};
        if (timing) e["seconds"] = r.seconds;
        a.push_back(e);
        ok = ok && r.ok;
    }
    return {json{{"criteria", a}, {"ok", ok}, {"seed", seed}}, ok};
}

}  // namespace mixfrob
