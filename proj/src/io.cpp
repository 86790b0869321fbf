#include "mixfrob/io.hpp"
#include "mixfrob/errors.hpp"
#include "mixfrob/gauge.hpp"

#include <sstream>

namespace mixfrob {

namespace {

std::string key_of(const Exponent& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s;
}

Exponent exponent_from_key(const std::string& k, int nvars) {
    Exponent e;
    std::stringstream ss(k);
    for (std::string tok; std::getline(ss, tok, ',');) {
        try {
            std::size_t pos = 0;
            int x = std::stoi(tok, &pos);
            if (pos != tok.size() || x < 0) throw ParseError("");
            e.push_back(x);
        } catch (...) {
            throw ParseError("bad jet exponent key '" + k + "'");
        }
    }
    if (k.empty() && nvars == 0) return e;
    if (static_cast<int>(e.size()) != nvars)
        throw ParseError("jet key '" + k + "' needs " + std::to_string(nvars) + " exponents");
    return e;
}

int get_int(const json& j, const char* key, int dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number_integer()) throw ParseError(std::string("'") + key + "' must be an integer");
    return j[key].get<int>();
}

}  // namespace

json to_json(const Rat& q) { return to_string(q); }

Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw ParseError("expected a rational, got " + j.dump());
}

json to_json(const QVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

QVec qvec_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected a vector");
    QVec v;
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

json to_json(const QMat& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}

QMat qmat_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected a matrix (list of rows)");
    std::vector<QVec> rows;
    for (const auto& r : j) rows.push_back(qvec_from_json(r));
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows)
        if (r.size() != c) throw ParseError("ragged matrix");
    return QMat::from_rows(rows, c);
}

json to_json(const Jet& x) {
    const auto& sp = x.space();
    bool constant = true;
    for (std::size_t i = 1; i < sp->size(); ++i)
        if (sgn(x[i]) != 0) constant = false;
    if (constant) return to_json(x[0]);
    json o = json::object();
    for (std::size_t i = 0; i < sp->size(); ++i)
        if (sgn(x[i]) != 0) o[key_of(sp->exponent(i))] = to_json(x[i]);
    return o;
}

Jet jet_from_json(const SpacePtr& sp, const json& j) {
    if (!j.is_object()) return Jet::constant(sp, rat_from_json(j));
    Jet x(sp);
    for (const auto& [k, v] : j.items()) {
        long idx = sp->index(exponent_from_key(k, sp->nvars()));
        if (idx < 0) continue;   // beyond the truncation
        x[idx] += rat_from_json(v);
    }
    return x;
}

json to_json(const JMat& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
        a.push_back(r);
    }
    return a;
}

JMat jmat_from_json(const SpacePtr& sp, const json& j) {
    if (!j.is_array()) throw ParseError("expected a matrix (list of rows)");
    std::size_t r = j.size(), c = r ? j[0].size() : 0;
    JMat m(sp, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!j[i].is_array() || j[i].size() != c) throw ParseError("ragged matrix");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = jet_from_json(sp, j[i][k]);
    }
    return m;
}

json to_json(const Flag& w) {
    json o = json::object();
    for (const auto& [k, s] : w.steps()) o[std::to_string(k)] = to_json(s.basis());
    return o;
}

Flag flag_from_json(std::size_t n, const json& j) {
    if (!j.is_object()) throw ParseError("weight filtration must be an object {\"k\": rows}");
    std::map<int, QSubspace> steps;
    for (const auto& [k, v] : j.items()) {
        int w;
        try {
            w = std::stoi(k);
        } catch (...) {
            throw ParseError("bad weight key '" + k + "'");
        }
        std::vector<QVec> rows;
        for (const auto& r : v) {
            rows.push_back(qvec_from_json(r));
            if (rows.back().size() != n) throw ParseError("weight space vector has wrong length");
        }
        steps[w] = QSubspace::span(n, rows);
    }
    return Flag(n, steps);
}

json to_json(const Certificate& c) {
    json checks = json::array();
    std::size_t failed = 0;
    for (const auto& ch : c.checks) {
        json e{{"name", ch.name}, {"ok", ch.ok}, {"residual", ch.ok ? "0" : (ch.detail.empty() ? "nonzero" : ch.detail)}};
        if (!ch.detail.empty()) e["detail"] = ch.detail;
        if (!ch.ok) ++failed;
        checks.push_back(e);
    }
    return json{{"ok", c.ok()}, {"checks", checks}, {"failed", failed}, {"total", c.checks.size()}};
}

json to_json(const MixedTrTLEP& t) {
    const auto& sp = t.F.sp;
    json c = json::array();
    for (const auto& m : t.F.C) c.push_back(to_json(m));
    json g = json::object();
    for (const auto& [k, m] : t.g) g[std::to_string(k)] = to_json(m);
    return json{{"rank", t.F.rank}, {"nt", sp->nt()}, {"ny", sp->ny()}, {"D", sp->D()}, {"N", sp->N()},
                {"C", c},         {"U", to_json(t.F.U)}, {"V", to_json(t.F.V)}, {"W", to_json(t.W)}, {"g", g}};
}

TrTLEPInput trtlep_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("trTLEP input must be a JSON object");
    TrTLEPInput in;
    in.extra = j;
    int r = get_int(j, "rank", -1);
    if (r <= 0) throw ParseError("'rank' must be a positive integer");
    int nt = get_int(j, "nt", 0), ny = get_int(j, "ny", 0);
    int D = get_int(j, "D", 0), N = get_int(j, "N", 0);
    if (nt < 0 || ny < 0 || D < 0 || N < 0) throw ParseError("orders and variable counts must be nonnegative");
    SpacePtr sp = JetSpace::get(nt, ny, D, N);
    auto& F = in.T.F;
    F = FrobType::zero(sp, r);
    auto sized = [&](const JMat& m, const std::string& what) {
        if (m.rows() != static_cast<std::size_t>(r) || m.cols() != static_cast<std::size_t>(r))
            throw ParseError(what + " must be " + std::to_string(r) + "x" + std::to_string(r));
        return m;
    };
    if (j.contains("C")) {
        if (!j["C"].is_array() || static_cast<int>(j["C"].size()) != sp->nvars())
            throw ParseError("'C' needs one matrix per jet variable");
        for (int i = 0; i < sp->nvars(); ++i) F.C[i] = sized(jmat_from_json(sp, j["C"][i]), "C");
    }
    if (j.contains("U")) F.U = sized(jmat_from_json(sp, j["U"]), "U");
    if (j.contains("V")) F.V = sized(jmat_from_json(sp, j["V"]), "V");
    if (j.contains("A")) {
        if (!j["A"].is_array() || static_cast<int>(j["A"].size()) != sp->nvars())
            throw ParseError("'A' needs one matrix per jet variable");
        std::vector<JMat> a;
        for (int i = 0; i < sp->nvars(); ++i) a.push_back(sized(jmat_from_json(sp, j["A"][i]), "A"));
        JMat g = flat_gauge(a), gi = inverse(g);
        for (auto& c : F.C) c = gauge_transform(g, gi, c);
        F.U = gauge_transform(g, gi, F.U);
        F.V = gauge_transform(g, gi, F.V);
    }
    in.T.W = j.contains("W") ? flag_from_json(r, j["W"]) : Flag::trivial(r, get_int(j, "weight", 0));
    if (j.contains("g")) {
        if (!j["g"].is_object()) throw ParseError("'g' must be an object {\"k\": matrix}");
        for (const auto& [k, v] : j["g"].items()) {
            int w;
            try {
                w = std::stoi(k);
            } catch (...) {
                throw ParseError("bad pairing key '" + k + "'");
            }
            in.T.g[w] = qmat_from_json(v);
        }
    }
    if (j.contains("zeta")) {
        in.zeta = qvec_from_json(j["zeta"]);
        if (in.zeta->size() != static_cast<std::size_t>(r)) throw ParseError("'zeta' has wrong length");
    }
    if (j.contains("d")) in.d = rat_from_json(j["d"]);
    return in;
}

json to_json(const SaitoMFS& m) {
    json mult = json::array();
    for (const auto& x : m.mult) mult.push_back(to_json(x));
    json e = json::array(), E = json::array();
    for (const auto& x : m.e) e.push_back(to_json(x));
    for (const auto& x : m.E) E.push_back(to_json(x));
    json g = json::object();
    for (const auto& [k, x] : m.g) g[std::to_string(k)] = to_json(x);
    return json{{"n", m.n}, {"mult", mult}, {"e", e}, {"E", E}, {"I", to_json(m.I)}, {"g", g}, {"d", to_json(m.d)}};
}

json to_json(const UnfoldingResult& r) {
    json psi = json::array(), dirs = json::array();
    for (const auto& p : r.psi) psi.push_back(to_json(p));
    for (const auto& d : r.directions) dirs.push_back(to_json(d));
    auto s = summarize(r);
    json gd = json::object();
    for (const auto& [k, n] : s.graded_dims) gd[std::to_string(k)] = n;
    return json{{"structure", to_json(r.T)},
                {"psi", psi},
                {"directions", dirs},
                {"log", r.log},
                {"certificate", to_json(r.cert)},
                {"summary", {{"graded_dims", gd}, {"extra_directions", s.extra_directions}}}};
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("JSON: ") + e.what());
    }
}

}  // namespace mixfrob
