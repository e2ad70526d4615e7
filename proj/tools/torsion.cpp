// Command-line front end: one binary, one subcommand per operation.

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "torsion/io.hpp"

using namespace torsion;

namespace {

struct Globals {
    bool json = false;
    i64 max_conductor = 10000;
    i64 max_M = 240;
    int max_depth = 64;
    unsigned threads = 1;
};

std::string root_text(const RootOfUnity& r) { return std::to_string(r.num()) + "/" + std::to_string(r.ord()); }

std::string point_text(const TorsionPoint& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + root_text(p[i]);
    return s + ")";
}

std::string coset_text(const TorsionCoset& c) {
    std::string s = "base " + point_text(c.base()) + " lattice [";
    for (std::size_t i = 0; i < c.lattice().size(); ++i) {
        s += i ? "; " : "";
        for (std::size_t k = 0; k < c.lattice()[i].size(); ++k) s += (k ? " " : "") + std::to_string(c.lattice()[i][k]);
    }
    return s + "]";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

i64 to_i64(const std::string& s) {
    std::size_t used = 0;
    i64 v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw Error("usage", "not an integer: '" + s + "'");
    }
    if (used != s.size()) throw Error("usage", "not an integer: '" + s + "'");
    return v;
}

std::vector<i64> int_list(const std::string& s) {
    std::vector<i64> out;
    for (auto& t : split(s, ',')) out.push_back(to_i64(t));
    return out;
}

// A fixed term "c" or "c@k/m" stands for c * zeta_m^k.
LinearTerm fixed_term(const std::string& s) {
    const auto at = s.find('@');
    if (at == std::string::npos) return {to_i64(s), RootOfUnity()};
    const auto slash = s.find('/', at);
    if (slash == std::string::npos) throw Error("usage", "fixed term '" + s + "' must look like c@k/m");
    const i64 m = to_i64(s.substr(slash + 1));
    if (m <= 0) throw Error("usage", "root order must be positive in '" + s + "'");
    return {to_i64(s.substr(0, at)), RootOfUnity(to_i64(s.substr(at + 1, slash - at - 1)), m)};
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Torsion points and torsion cosets of hypersurfaces in G_m^n"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_option("--max-conductor", g.max_conductor, "largest conductor explored by the solver")->check(CLI::PositiveNumber);
    app.add_option("--max-M", g.max_M, "largest M accepted by the oracle")->check(CLI::PositiveNumber);
    app.add_option("--max-depth", g.max_depth, "recursion depth of the descent")->check(CLI::PositiveNumber);
    app.add_option("--threads", g.threads, "worker threads for the oracle")->check(CLI::PositiveNumber);

    std::size_t nvars = 2;
    std::string expr;

    auto* solve = app.add_subcommand("solve", "maximal torsion cosets of Z(f) for n = 2");
    solve->add_option("-n", nvars, "number of variables")->default_val(2);
    solve->add_option("-f", expr, "polynomial")->required();

    i64 M = 0;
    auto* oracle = app.add_subcommand("oracle", "all points of Z(f) in mu_M^n");
    oracle->add_option("-n", nvars, "number of variables")->required();
    oracle->add_option("-f", expr, "polynomial")->required();
    oracle->add_option("-M", M, "order")->required()->check(CLI::PositiveNumber);

    std::string fixed_s, coeffs_s;
    std::size_t unknowns = 0;
    std::size_t max_terms = 8;
    auto* linsolve = app.add_subcommand("linsolve", "solve sum fixed + sum a_i xi_i = 0 in roots of unity");
    linsolve->add_option("--fixed", fixed_s, "comma list of c or c@k/m (c zeta_m^k)")->default_val("");
    linsolve->add_option("--unknowns", unknowns, "number of unknowns")->required()->check(CLI::PositiveNumber);
    linsolve->add_option("--coeffs", coeffs_s, "coefficients of the unknowns (default all 1)");
    linsolve->add_option("--max-terms", max_terms, "cap on the total number of terms")->default_val(8);

    std::string primes_s, degrees_s;
    int fam_d = 0;
    bool fam_emit = false, fam_verify = false;
    auto* family = app.add_subcommand("family", "zeta_p1 + ... + zeta_pn + x1^d1 + ... + xn^dn");
    family->add_option("--primes", primes_s, "comma list of increasing primes > 2n")->required();
    auto* dopt = family->add_option("-d", fam_d, "common exponent")->check(CLI::PositiveNumber);
    family->add_option("--degrees", degrees_s, "comma list of exponents")->excludes(dopt);
    family->add_flag("--emit", fam_emit, "print the polynomial and the expected count");
    family->add_flag("--verify", fam_verify, "solve and compare with the expected count");

    bool want_stats = false;
    i64 embed_l = 0;
    auto* polytope = app.add_subcommand("polytope", "Newton polytope statistics and simplex embedding");
    polytope->add_option("-n", nvars, "number of variables")->default_val(2);
    polytope->add_option("-f", expr, "polynomial")->required();
    polytope->add_flag("--stats", want_stats, "volume, l1-diameter, multidegree");
    polytope->add_option("--embed", embed_l, "scale l of the embedding")->check(CLI::PositiveNumber);

    std::string set, format = "text", md_s, vol_s;
    long bn = 0, bd = 0, bk = 0, bj = 0, bdelta = 0, bdelta0 = 0, bk0 = 0, bk1 = 0;
    bool full = false;
    auto* bounds = app.add_subcommand("bounds", "counting bounds");
    bounds->add_option("--set", set, "main|volume|theta|theta0|competitors")
        ->required()
        ->check(CLI::IsMember({"main", "volume", "theta", "theta0", "competitors"}));
    auto* on = bounds->add_option("-n", bn, "ambient dimension");
    auto* od = bounds->add_option("-d", bd, "dimension of V");
    auto* ok = bounds->add_option("-k", bk, "codimension");
    auto* oj = bounds->add_option("-j", bj, "dimension of the torsion part");
    auto* odelta = bounds->add_option("--delta", bdelta, "degree parameter delta");
    auto* odelta0 = bounds->add_option("--delta0", bdelta0, "degree parameter delta0");
    auto* ok0 = bounds->add_option("--k0", bk0, "codimension k0");
    auto* ok1 = bounds->add_option("--k1", bk1, "codimension k1");
    auto* omd = bounds->add_option("--multidegree", md_s, "comma list");
    auto* ovol = bounds->add_option("--vol", vol_s, "volume as p/q");
    bounds->add_option("--format", format, "text|csv|json")->check(CLI::IsMember({"text", "csv", "json"}));
    bounds->add_flag("--full", full, "print huge values in full");

    i64 psi_m = 0;
    auto* psi_cmd = app.add_subcommand("psi", "Psi(m) = 2 + sum over primes p | m of (p - 2)");
    psi_cmd->add_option("M", psi_m, "squarefree m")->required()->check(CLI::PositiveNumber);

    i64 cj_k = 0;
    auto* cj_cmd = app.add_subcommand("cjconductors", "squarefree m with Psi(m) <= K");
    cj_cmd->add_option("K", cj_k, "number of terms")->required()->check(CLI::PositiveNumber);

    std::string ms_s;
    bool collapse = false;
    auto* ms_cmd = app.add_subcommand("minsums", "minimal vanishing sums with given coefficients");
    ms_cmd->add_option("COEFFS", ms_s, "comma list of positive integers")->required();
    ms_cmd->add_flag("--collapse", collapse, "one representative per rotation / equal-coefficient permutation class");
    ms_cmd->add_option("--max-terms", max_terms, "cap on the number of terms")->default_val(8);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit(error_json("usage", e.what()));
        return 2;
    }

    try {
        if (solve->parsed()) {
            const MPoly f = parse_poly(expr, nvars);
            SolveOptions so;
            so.max_depth = g.max_depth;
            so.max_conductor = g.max_conductor;
            const SolveReport r = descent_solve(f, so);
            if (g.json) {
                emit(to_json(r));
            } else {
                std::cout << "f = " << to_text(f) << "\n";
                std::cout << "isolated: " << r.isolated.size() << "\n";
                for (auto& c : r.isolated) std::cout << "  " << point_text(c.base()) << "\n";
                std::cout << "cosets: " << r.cosets.size() << "\n";
                for (auto& c : r.cosets) std::cout << "  " << coset_text(c) << "\n";
            }
        } else if (oracle->parsed()) {
            const MPoly f = parse_poly(expr, nvars);
            OracleOptions oo;
            oo.max_M = g.max_M;
            oo.threads = g.threads;
            const auto pts = bruteforce_oracle(f, M, oo);
            if (g.json) {
                Json a = Json::array();
                for (auto& p : pts) a.push_back(to_json(p));
                emit(Json{{"M", M}, {"points", a}, {"count", pts.size()}});
            } else {
                std::cout << "points: " << pts.size() << "\n";
                for (auto& p : pts) std::cout << "  " << point_text(p) << "\n";
            }
        } else if (linsolve->parsed()) {
            std::vector<LinearTerm> fixed;
            for (auto& t : split(fixed_s, ',')) fixed.push_back(fixed_term(t));
            std::vector<i64> coeffs = coeffs_s.empty() ? std::vector<i64>(unknowns, 1) : int_list(coeffs_s);
            LinearOptions lo;
            lo.max_terms = max_terms;
            const auto cs = solve_linear_torsion(fixed, unknowns, coeffs, lo);
            if (g.json) {
                Json a = Json::array();
                for (auto& c : cs) a.push_back(to_json(c));
                emit(Json{{"cosets", a}});
            } else {
                std::cout << "cosets: " << cs.size() << "\n";
                for (auto& c : cs) std::cout << "  dim " << c.dim() << " " << coset_text(c) << "\n";
            }
        } else if (family->parsed()) {
            const std::vector<i64> primes = int_list(primes_s);
            std::vector<int> degs;
            if (!degrees_s.empty())
                for (i64 v : int_list(degrees_s)) degs.push_back(static_cast<int>(v));
            else if (fam_d > 0)
                degs.assign(primes.size(), fam_d);
            else
                throw Error("usage", "family needs -d or --degrees");
            const FamilyInstance fi = cj_family(primes, degs);
            Json j{{"polynomial", to_text(fi.f)}, {"expected", fi.expected_isolated.get_str()}};
            std::string status;
            if (fam_verify) {
                SolveOptions so;
                so.max_depth = g.max_depth;
                so.max_conductor = g.max_conductor;
                const SolveReport r = descent_solve(fi.f, so);
                const bool good = r.cosets.empty() && mpz_class(r.isolated.size()) == fi.expected_isolated;
                status = good ? "OK" : "MISMATCH";
                j["found"] = r.isolated.size();
                j["cosets"] = r.cosets.size();
                j["status"] = status;
            }
            if (g.json) {
                emit(j);
            } else {
                std::cout << "polynomial: " << to_text(fi.f) << "\n";
                std::cout << "expected " << fi.expected_isolated.get_str();
                if (fam_verify) std::cout << ", found " << j["found"].get<std::size_t>() << ", status " << status;
                std::cout << "\n";
            }
            if (fam_verify && status != "OK") return 1;
        } else if (polytope->parsed()) {
            const MPoly f = parse_poly(expr, nvars);
            const LatticePolytope P = newton_polytope(f);
            Json j{{"polytope", to_json(P)}};
            if (want_stats || embed_l == 0) j["stats"] = to_json(polytope_stats(P));
            if (embed_l > 0) j["embedding"] = to_json(simplex_embed(P, embed_l));
            if (g.json) {
                emit(j);
            } else {
                std::cout << "vertices: " << j["polytope"]["vertices"].dump() << "\n";
                if (j.contains("stats"))
                    std::cout << "volume " << j["stats"]["volume"].get<std::string>() << ", diam1 " << j["stats"]["diam1"].dump()
                              << ", multidegree " << j["stats"]["multidegree"].dump() << "\n";
                if (j.contains("embedding")) {
                    const Json& e = j["embedding"];
                    std::cout << "l " << e["l"].dump() << ", M_l " << e["M_l"].dump() << ", tau_l " << e["tau_l"].dump()
                              << ", bound " << e["bound"].dump() << ", verified " << e["verified"].dump() << "\n";
                }
            }
        } else if (bounds->parsed()) {
            auto need = [](CLI::Option* o, const char* name) {
                if (o->count() == 0) throw Error("usage", std::string("missing ") + name);
            };
            BoundParams p;
            if (on->count()) p.n = bn;
            if (od->count()) p.d = bd;
            if (ok->count()) p.k = bk;
            if (oj->count()) p.j = bj;
            if (odelta->count()) p.delta = bdelta;
            if (odelta0->count()) p.delta0 = bdelta0;
            if (ok0->count()) p.k0 = bk0;
            if (ok1->count()) p.k1 = bk1;
            if (omd->count()) {
                std::vector<long> md;
                for (i64 v : int_list(md_s)) md.push_back(static_cast<long>(v));
                p.multidegree = md;
            }
            if (ovol->count()) {
                try {
                    p.vol = mpq_class(vol_s);
                    p.vol->canonicalize();
                } catch (const std::exception&) {
                    throw Error("usage", "not a rational: '" + vol_s + "'");
                }
            }
            std::vector<BoundReport> reps;
            if (set == "main") {
                need(on, "-n");
                need(od, "-d");
                need(odelta, "--delta");
                const long j = p.j.value_or(0);
                const MainBound m = bound_main(bn, bd, bdelta, j);
                BoundParams q = p;
                q.j = j;
                BoundReport a, b;
                a.name = "main_intro";
                a.params = q;
                a.value = mpq_class(m.intro);
                a.log2 = detail::log2_of(m.intro);
                b.name = "main_refined";
                b.params = q;
                b.value = mpq_class(m.refined);
                b.log2 = detail::log2_of(m.refined);
                reps = {a, b};
            } else if (set == "volume") {
                need(on, "-n");
                need(ovol, "--vol");
                reps = {bound_volume(bn, p.j.value_or(0), *p.vol)};
            } else if (set == "theta0") {
                need(on, "-n");
                need(ok, "-k");
                need(od, "-d");
                need(odelta0, "--delta0");
                BoundReport r;
                r.name = "theta0";
                r.params = p;
                const mpz_class v = bound_theta0(bn, bk, bd, bdelta0);
                r.value = mpq_class(v);
                r.log2 = detail::log2_of(v);
                reps = {r};
            } else if (set == "theta") {
                need(on, "-n");
                need(ok0, "--k0");
                need(ok1, "--k1");
                need(odelta, "--delta");
                BoundReport r;
                r.name = "theta";
                r.params = p;
                const mpz_class v = bound_theta(bn, bk0, bk1, bdelta);
                r.value = mpq_class(v);
                r.log2 = detail::log2_of(v);
                reps = {r};
            } else {
                reps = bound_competitors(p);
            }
            if (format == "json" || g.json) {
                Json a = Json::array();
                for (auto& r : reps) a.push_back(to_json(r, full));
                emit(a);
            } else if (format == "csv") {
                std::cout << "name,value,log2,exact,note\n";
                for (auto& r : reps)
                    std::cout << r.name << "," << render_value(r, full) << "," << std::setprecision(10) << r.log2 << ","
                              << (r.exact ? "true" : "false") << "," << (r.error.empty() ? r.note : r.error) << "\n";
            } else {
                std::size_t w = 4;
                for (auto& r : reps) w = std::max(w, r.name.size());
                for (auto& r : reps) {
                    std::cout << std::left << std::setw(static_cast<int>(w) + 2) << r.name << render_value(r, full);
                    if (!r.symbolic.empty())
                        std::cout << "  (" << r.symbolic << " rounded up, ~" << std::setprecision(12) << r.value->get_d() << ")";
                    if (!r.error.empty()) std::cout << "  [" << r.error << "]";
                    if (!r.note.empty()) std::cout << "  [" << r.note << "]";
                    std::cout << "\n";
                }
            }
        } else if (psi_cmd->parsed()) {
            const i64 v = psi(psi_m);
            if (g.json)
                emit(Json{{"m", psi_m}, {"psi", v}});
            else
                std::cout << v << "\n";
        } else if (cj_cmd->parsed()) {
            const auto v = cj_conductors(cj_k);
            if (g.json) {
                emit(Json{{"k", cj_k}, {"conductors", v}});
            } else {
                for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? " " : "") << v[i];
                std::cout << "\n";
            }
        } else if (ms_cmd->parsed()) {
            MinSumOptions mo;
            mo.max_terms = max_terms;
            mo.collapse = collapse;
            const auto sums = minimal_vanishing_sums(int_list(ms_s), mo);
            if (g.json) {
                Json a = Json::array();
                for (auto& s : sums) a.push_back(to_json(s));
                emit(Json{{"sums", a}});
            } else {
                std::cout << "sums: " << sums.size() << "\n";
                for (auto& s : sums) {
                    std::cout << " ";
                    for (auto& t : s.terms) std::cout << " " << t.coeff << "*" << root_text(t.root);
                    std::cout << "\n";
                }
            }
        }
    } catch (const Error& e) {
        emit(error_json(e.code(), e.what()));
        return e.code() == "usage" || e.code() == "syntax" ? 2 : 1;
    } catch (const std::exception& e) {
        emit(error_json("internal", e.what()));
        return 1;
    }
    return 0;
}
