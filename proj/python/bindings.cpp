// Thin pybind11 layer over the JSON reports; the Python package decodes the
// text so that callers get plain dicts.
#include "mixfrob/errors.hpp"
#include "mixfrob/reports.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mixfrob;

namespace {

std::pair<std::string, bool> out(const Report& r) { return {r.body.dump(), r.ok}; }

QVec qvec(const std::vector<std::string>& v) {
    QVec q;
    for (const auto& s : v) q.push_back(parse_rat(s));
    return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    auto base = py::register_exception<Error>(m, "MixfrobError");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    m.def("polytope_check", [](const std::string& text, int kmax) { return out(polytope_check(text, kmax)); });

    m.def("bmodel", [](const std::string& op, const std::string& laurent, const std::string& poly,
                       const std::vector<IVec>& dirs, int D, int N) {
        BInput in = read_b_input(laurent, poly);
        if (op == "ring") return out(bmodel_ring(in));
        if (op == "regular") return out(bmodel_regular(in));
        if (op == "h2") return out(bmodel_h2(in));
        if (op == "gm") return out(bmodel_gm(in, dirs, D));
        if (op == "pipeline") return out(bmodel_pipeline(in, dirs, D, N));
        throw ParseError("unknown bmodel operation '" + op + "'");
    });

    m.def("trtlep", [](const std::string& op, const std::string& text, const std::string& ell) {
        json j = parse_json_text(text);
        if (op == "verify") return out(trtlep_verify(j));
        if (op == "rees") return out(trtlep_rees(j));
        if (op == "twist") return out(trtlep_twist(j, parse_rat(ell)));
        throw ParseError("unknown trtlep operation '" + op + "'");
    });

    m.def("unfold_run", [](const std::string& text) { return out(unfold_run(parse_json_text(text))); });
    m.def("unfold_universal", [](const std::string& text, int N) { return out(unfold_universal(parse_json_text(text), N)); });
    m.def("limit_run", [](const std::string& text) { return out(limit_run(parse_json_text(text))); });

    m.def("amodel_pipeline", [](const std::string& fan, const std::string& gw, const std::vector<std::string>& z,
                                int D, int N, int cutoff) { return out(amodel_pipeline(fan, gw, qvec(z), D, N, cutoff)); });

    m.def("verify_all", [](std::uint64_t seed, int instances, const std::vector<int>& only) {
        return out(verify_all(seed, instances, only, false));
    });
}
