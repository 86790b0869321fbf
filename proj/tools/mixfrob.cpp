// Command-line front end: reads structured text / JSON inputs, runs one
// construction or checker, prints a JSON report.  Exit 0 when every
// certificate passes, 1 on a certificate or mathematical failure, 2 on
// malformed input.
#include "mixfrob/acceptance.hpp"
#include "mixfrob/errors.hpp"
#include "mixfrob/reports.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace mixfrob;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) { return parse_json_text(slurp(path)); }

IVec parse_ivec(const std::string& s) {
    IVec v;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stol(tok, &pos));
            if (pos != tok.size()) throw 0;
        } catch (...) {
            throw ParseError("bad integer vector '" + s + "'");
        }
    }
    return v;
}

std::vector<IVec> parse_dirs(const std::vector<std::string>& dirs) {
    std::vector<IVec> out;
    for (const auto& s : dirs) out.push_back(parse_ivec(s));
    return out;
}

QVec parse_qvec(const std::string& s) {
    QVec v;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) v.push_back(parse_rat(tok));
    return v;
}

bool input_error(const Error& e) {
    return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DimensionMismatch*>(&e) ||
           dynamic_cast<const NotFullDimensional*>(&e);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact constructions and certificates for mixed trTLEP and mixed Frobenius structures"};
    app.require_subcommand(1);
    bool quiet = false;
    std::string output;
    app.add_flag("-q,--quiet", quiet, "suppress the JSON report on stdout");
    app.add_option("-o,--output", output, "also write the JSON report to this file");

    std::function<Report()> action;
    std::string file, poly, ell = "1", fan, gw, z;
    int kmax = 5, D = 3, N = 3, order = 4, cutoff = 3, instances = 50;
    std::uint64_t seed = AcceptanceOptions{}.seed;
    std::vector<std::string> dirs;
    std::vector<int> only;
    bool timing = false;
    auto b_input = [&] { return read_b_input(slurp(file), poly.empty() ? "" : slurp(poly)); };

    auto* poly_cmd = app.add_subcommand("polytope", "lattice polytopes")->require_subcommand(1);
    auto* pc = poly_cmd->add_subcommand("check", "reflexivity, duality, lattice point counts");
    pc->add_option("file", file, "polytope file")->required();
    pc->add_option("--kmax", kmax, "largest dilation")->check(CLI::PositiveNumber);
    pc->callback([&] { action = [&] { return polytope_check(slurp(file), kmax); }; });

    auto* bm = app.add_subcommand("bmodel", "Laurent polynomials and Jacobian rings")->require_subcommand(1);
    auto b_common = [&](CLI::App* s) {
        s->add_option("file", file, "Laurent polynomial file")->required();
        s->add_option("--polytope", poly, "polytope file (default: Newton polytope of f)");
    };
    auto* br = bm->add_subcommand("ring", "graded Jacobian ring, weight images, Higgs matrices");
    b_common(br);
    br->callback([&] { action = [&] { return bmodel_ring(b_input()); }; });
    auto* bg = bm->add_subcommand("regular", "Δ-regularity (d <= 2)");
    b_common(bg);
    bg->callback([&] { action = [&] { return bmodel_regular(b_input()); }; });
    auto* bh = bm->add_subcommand("h2", "H^2-generation");
    b_common(bh);
    bh->callback([&] { action = [&] { return bmodel_h2(b_input()); }; });
    auto* bgm = bm->add_subcommand("gm", "Gauss-Manin connection jets");
    b_common(bgm);
    bgm->add_option("--direction", dirs, "moduli direction m as 'm1,m2' (repeatable; default origin)");
    bgm->add_option("--order", D, "jet order")->check(CLI::PositiveNumber);
    bgm->callback([&] { action = [&] { return bmodel_gm(b_input(), parse_dirs(dirs), D); }; });
    auto* bp = bm->add_subcommand("pipeline", "Rees + universal unfolding + MFS");
    b_common(bp);
    bp->add_option("--direction", dirs, "moduli direction (repeatable; default origin)");
    bp->add_option("--order", D, "jet order D")->check(CLI::PositiveNumber);
    bp->add_option("--unfold-order", N, "unfolding order N")->check(CLI::PositiveNumber);
    bp->callback([&] { action = [&] { return bmodel_pipeline(b_input(), parse_dirs(dirs), D, N); }; });

    auto* tt = app.add_subcommand("trtlep", "mixed trTLEP structures")->require_subcommand(1);
    auto* tv = tt->add_subcommand("verify", "check a mixed trTLEP structure");
    tv->add_option("file", file, "structure JSON")->required();
    tv->callback([&] { action = [&] { return trtlep_verify(read_json(file)); }; });
    auto* trs = tt->add_subcommand("rees", "Rees construction from filtered data");
    trs->add_option("file", file, "Rees input JSON")->required();
    trs->callback([&] { action = [&] { return trtlep_rees(read_json(file)); }; });
    auto* ttw = tt->add_subcommand("twist", "Tate twist");
    ttw->add_option("file", file, "structure JSON")->required();
    ttw->add_option("--ell", ell, "twist amount (rational)");
    ttw->callback([&] { action = [&] { return trtlep_twist(read_json(file), parse_rat(ell)); }; });

    auto* uf = app.add_subcommand("unfold", "unfoldings")->require_subcommand(1);
    auto* ur = uf->add_subcommand("run", "unfold along a supplied psi_ext");
    ur->add_option("file", file, "structure JSON with psi_ext")->required();
    ur->callback([&] { action = [&] { return unfold_run(read_json(file)); }; });
    auto* uu = uf->add_subcommand("universal", "universal unfolding");
    uu->add_option("file", file, "structure JSON")->required();
    uu->add_option("--order", order, "unfolding order N (<= D)")->check(CLI::PositiveNumber);
    uu->callback([&] { action = [&] { return unfold_universal(read_json(file), order); }; });

    auto* lm = app.add_subcommand("limit", "nilpotent limits")->require_subcommand(1);
    auto* lr = lm->add_subcommand("run", "limit structure on the cokernel");
    lr->add_option("file", file, "structure JSON with 'nilpotent'")->required();
    lr->callback([&] { action = [&] { return limit_run(read_json(file)); }; });

    auto* am = app.add_subcommand("amodel", "local A-model")->require_subcommand(1);
    auto* ap = am->add_subcommand("pipeline", "small quantum D-module, limit, unfolding, MFS");
    ap->add_option("--fan", fan, "fan file")->required();
    ap->add_option("--gw", gw, "Gromov-Witten table")->required();
    ap->add_option("--z", z, "base point 'z1,..,zr'")->required();
    ap->add_option("--order", D, "jet order D")->check(CLI::PositiveNumber);
    ap->add_option("--unfold-order", N, "unfolding order N")->check(CLI::PositiveNumber);
    ap->add_option("--cutoff", cutoff, "GW degree cutoff")->check(CLI::PositiveNumber);
    ap->callback([&] { action = [&] { return amodel_pipeline(slurp(fan), slurp(gw), parse_qvec(z), D, N, cutoff); }; });

    auto* vf = app.add_subcommand("verify", "acceptance suite")->require_subcommand(1);
    auto* va = vf->add_subcommand("all", "run every acceptance criterion");
    va->add_option("--seed", seed, "seed of the randomized suite");
    va->add_option("--instances", instances, "randomized instances")->check(CLI::PositiveNumber);
    va->add_option("--criterion", only, "run only these criteria (repeatable)");
    va->add_flag("--timing", timing, "include wall-clock seconds (breaks byte-identical output)");
    va->callback([&] { action = [&] { return verify_all(seed, instances, only, timing); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Report rep;
    try {
        rep = action();
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return input_error(e) ? 2 : 1;
    } catch (const json::exception& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return 2;
    }
    std::string text = rep.body.dump(2) + "\n";
    if (!quiet) std::cout << text;
    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "cannot write '" << output << "'\n";
            return 2;
        }
        out << text;
    }
    if (!rep.ok && !quiet) std::cerr << "certificate failed\n";
    return rep.ok ? 0 : 1;
}
