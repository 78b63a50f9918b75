// kqde-cli: command-line front end. Every subcommand prints one JSON document on
// standard output. Exit status: 0 when every asserted identity holds, 1 when one
// fails (the failing invariants are listed under "failed" and on stderr), 2 for
// bad flags or inputs.

#include "kqde/hypergeom.hpp"
#include "kqde/json_io.hpp"
#include "kqde/qkz.hpp"
#include "kqde/stokes.hpp"
#include "kqde/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

using namespace kq;
using nlohmann::json;

namespace {

constexpr const char* kPrecisionEnv = "KQDE_PRECISION";

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// encoding

std::string dstr(double x) { return decimal_string(x); }

json laurent_str(const LaurentQ& f) { return f.str(); }
json laurent_c_str(const LaurentC& f) { return f.str(); }
json cyclo_str(const Cyclo& c) { return c.str(); }

json cmat_json(const CMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(cplx_json(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

json cvec_json(const std::vector<cplx>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(cplx_json(x));
    return a;
}

json class_json(const KRing& R, const KClass& f) {
    json c = json::array();
    for (auto& x : R.coeffs(f)) c.push_back(x.str());
    return c;
}

json basis_json(const KRing& R, const ExBasis& b) {
    json out = json::array();
    for (int i = 0; i < b.size(); ++i) {
        json e;
        e["label"] = i < static_cast<int>(b.labels.size()) ? b.labels[i] : "";
        e["coeffs"] = class_json(R, b.e[i]);
        if (i < static_cast<int>(b.tags.size()) && b.tags[i] >= 0) e["tag"] = b.tags[i];
        out.push_back(e);
    }
    return out;
}

json word_json(const BraidWord& w) {
    json a = json::array();
    for (int x : w) a.push_back(x);
    return a;
}

// ---------------------------------------------------------------------------
// report

struct Report {
    json body = json::object();
    std::vector<std::string> failed;

    void check(const std::string& invariant, bool ok) {
        if (!ok) failed.push_back(invariant);
    }
    // numeric identity: records the measured defect next to its tolerance
    void bound(const std::string& key, const std::string& invariant, double value, double tol) {
        body["residuals"][key] = {{"value", dstr(value)}, {"tolerance", dstr(tol)}};
        check(invariant, value <= tol);
    }
};

// ---------------------------------------------------------------------------
// shared options

struct Common {
    int n = 2;
    std::vector<std::string> z;
    std::string q = "0.3";
    int sheet = 0;
    int order = 30;      // series solutions of the qDE
    int hyp_order = 40;  // residue series of the q-hypergeometric solutions
};

void require_n(int n, int lo = 2, int hi = kMaxVars - 1) {
    if (n < lo || n > hi) throw UsageError("--n must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

void require_order(int N) {
    if (N < 1) throw UsageError("--order must be at least 1");
}

NumericContext numeric_z(const Common& c) {
    if (static_cast<int>(c.z.size()) != c.n) throw UsageError("--z needs exactly n = " + std::to_string(c.n) + " values");
    NumericContext ctx;
    for (auto& s : c.z) ctx.z.push_back(parse_complex(s));
    try {
        ctx.require_omega();
    } catch (const std::domain_error& e) {
        throw UsageError(std::string("--z: ") + e.what());
    }
    return ctx;
}

json z_json(const NumericContext& ctx) { return cvec_json(ctx.z); }

// log q on the universal cover: principal logarithm plus 2 pi i * sheet
cplx log_q_of(const Common& c) {
    cplx q = parse_complex(c.q);
    if (q == 0.0) throw UsageError("--q must be nonzero");
    return std::log(q) + cplx(0.0, 2.0 * std::numbers::pi * c.sheet);
}

ExBasis named_basis(const KRing& R, const std::string& name, int k) {
    if (name == "beilinson") return beilinson(R);
    return structured_basis(R, parse_qkind(name), k);
}

BraidWord parse_word(const std::vector<int>& letters, int n) {
    for (int x : letters)
        if (x == 0 || std::abs(x) > n - 1) throw UsageError("braid letters must be nonzero with |letter| <= n - 1");
    return letters;
}

// ---------------------------------------------------------------------------
// commands

struct BasisOpts {
    std::string basis = "beilinson";
    int k = 0;
};

void add_basis_opts(CLI::App* sc, BasisOpts& b) {
    sc->add_option("--basis", b.basis, "beilinson, Q, Qp, Qpp, Qt, Qtp or Qtpp")->capture_default_str();
    sc->add_option("--k", b.k, "index of the structured basis")->capture_default_str();
}

void report_basis(Report& rep, const KRing& R, const ExBasis& b) {
    auto G = gram_matrix(R, b);
    rep.body["basis"] = basis_json(R, b);
    rep.body["gram"] = matrix_json(G, laurent_str);
    rep.check("Gram matrix is upper unitriangular", G.is_upper_unitriangular());
}

Report cmd_gram(const Common& c, const BasisOpts& b) {
    require_n(c.n);
    KRing R(c.n);
    Report rep;
    rep.body["basis_name"] = b.basis;
    rep.body["k"] = b.k;
    report_basis(rep, R, named_basis(R, b.basis, b.k));
    return rep;
}

Report cmd_mutate(const Common& c, const BasisOpts& b, const std::string& side, int pos) {
    require_n(c.n);
    if (pos < 1 || pos > c.n - 1) throw UsageError("--pos must lie in [1, n - 1]");
    KRing R(c.n);
    // the pair (e_pos, e_pos+1) is moved by the generator of index n - pos
    int letter = side == "right" ? c.n - pos : -(c.n - pos);
    Report rep;
    rep.body["side"] = side;
    rep.body["pos"] = pos;
    rep.body["letter"] = letter;
    report_basis(rep, R, act_generator(R, letter, named_basis(R, b.basis, b.k)));
    return rep;
}

Report cmd_braid(const Common& c, const BasisOpts& b, const std::vector<int>& letters, const std::string& name, int power) {
    require_n(c.n);
    KRing R(c.n);
    BraidWord w = name.empty() ? parse_word(letters, c.n) : braid_constant(parse_braid_name(name), c.n);
    w = braid_power(w, power);
    Report rep;
    rep.body["word"] = word_json(w);
    report_basis(rep, R, braid_act(R, w, named_basis(R, b.basis, b.k)));
    return rep;
}

Report cmd_dioph(const Common& c, const BasisOpts& b, const std::vector<int>& letters) {
    require_n(c.n);
    KRing R(c.n);
    auto basis = braid_act(R, parse_word(letters, c.n), named_basis(R, b.basis, b.k));
    auto G = gram_matrix(R, basis);
    Report rep;
    rep.body["gram"] = matrix_json(G, laurent_str);
    auto d = dioph_residual(R, G);
    rep.body["residuals"]["characteristic_polynomial"] = d.str();
    rep.check("det(L - G^-1 G^dagger) = prod(L - (-1)^(n-1) Z_i^n / s_n)", d.is_zero());
    if (c.n == 3) {
        auto m1 = markov1_residual(R, G(0, 1), G(0, 2), G(1, 2));
        auto m2 = markov2_residual(R, G(0, 1), G(0, 2), G(1, 2));
        rep.body["residuals"]["markov1"] = m1.str();
        rep.body["residuals"]["markov2"] = m2.str();
        rep.check("first Markov-type equation", m1.is_zero());
        rep.check("second Markov-type equation", m2.is_zero());
    }
    if (c.n == 4) {
        json a = json::array();
        bool ok = true;
        for (auto& r : markov4_residuals(R, G)) {
            a.push_back(r.str());
            ok = ok && r.is_zero();
        }
        rep.body["residuals"]["markov4"] = a;
        rep.check("n = 4 Diophantine equations", ok);
    }
    return rep;
}

Report cmd_solve_qde(const Common& c, const std::string& solution, double tol) {
    require_n(c.n);
    require_order(c.order);
    auto ctx = numeric_z(c);
    cplx lq = log_q_of(c);
    Report rep;
    rep.body["z"] = z_json(ctx);
    rep.body["log_q"] = cplx_json(lq);
    rep.body["solution"] = solution;
    double res = 0.0;
    if (solution == "levelt") {
        LeveltSolution Y(ctx, c.order);
        rep.body["Y"] = cmat_json(Y.eval(lq));
        res = ode_residual(Y, ctx, lq);
    } else {
        TopologicalSolution Y(ctx, c.order);
        rep.body["Y"] = cmat_json(Y.eval(lq));
        res = ode_residual(Y, ctx, lq);
    }
    rep.bound("qde", "dY/dq = A(q) Y", res, tol);
    return rep;
}

Report cmd_qkz(const Common& c, int i, const std::string& basis) {
    require_n(c.n);
    if (i < 1 || i > c.n) throw UsageError("--i must lie in [1, n]");
    auto ctx = numeric_z(c);
    cplx q = std::exp(log_q_of(c));
    auto K = qkz_operator(i - 1, q, ctx, basis == "g" ? QkzBasis::g : QkzBasis::x);
    Report rep;
    rep.body["z"] = z_json(ctx);
    rep.body["i"] = i;
    rep.body["basis"] = basis;
    rep.body["K"] = cmat_json(K.m);
    return rep;
}

Report cmd_qkz_check(const Common& c, double tol) {
    require_n(c.n);
    require_order(c.hyp_order);
    auto ctx = numeric_z(c);
    cplx lq = log_q_of(c);
    cplx q = std::exp(lq);
    int N = c.hyp_order;
    SolutionFamily family = [N](const NumericContext& x, cplx l) { return psi_J_solution(x, N).eval(l); };
    double compat = 0.0, diff = 0.0;
    for (int i = 0; i < c.n; ++i) {
        compat = std::max(compat, compatibility_residual(i, ctx, q));
        diff = std::max(diff, difference_residual(family, i, ctx, lq));
    }
    Report rep;
    rep.body["z"] = z_json(ctx);
    rep.bound("compatibility", "dK_i/dq = A(z - e_i) K_i - K_i A(z)", compat, tol);
    rep.bound("difference", "Psi_J(z - e_i) = K_i Psi_J(z)", diff, tol);
    return rep;
}

Report cmd_psi(const Common& c, const std::string& cls, const std::string& oracle, double tol) {
    require_n(c.n);
    require_order(c.hyp_order);
    auto ctx = numeric_z(c);
    cplx lq = log_q_of(c);
    KRing R(c.n);
    LaurentQ Q = parse_laurent(cls, R.vars_with_X());
    auto S = psi_Q(Q, ctx, c.hyp_order);
    auto val = S.eval(lq);
    CVec x = S.eval_x(lq);
    Report rep;
    rep.body["z"] = z_json(ctx);
    rep.body["class"] = Q.str();
    rep.body["restrictions"] = cvec_json(val.r);
    rep.body["x_coords"] = cvec_json(std::vector<cplx>(x.data(), x.data() + x.size()));
    if (oracle == "contour") {
        auto ref = contour_oracle(Q, lq, ctx);
        double d = 0.0, m = 0.0;
        for (int i = 0; i < c.n; ++i) {
            d = std::max(d, std::abs(val.r[i] - ref.r[i]));
            m = std::max(m, std::abs(ref.r[i]));
        }
        rep.body["contour"] = cvec_json(ref.r);
        rep.bound("contour", "residue series = contour integral", m > 0.0 ? d / m : d, tol);
    }
    return rep;
}

Report cmd_b_check(const Common& c, int k, double tol) {
    require_n(c.n);
    require_order(c.hyp_order);
    auto ctx = numeric_z(c);
    std::vector<cplx> samples{cplx(std::log(0.1), 0.2), cplx(std::log(0.2), -0.4), std::log(0.3)};
    auto r = b_theorem_check(k, ctx, c.hyp_order, samples);
    Report rep;
    rep.body["z"] = z_json(ctx);
    rep.body["k"] = k;
    rep.body["recovered"] = cmat_json(r.recovered);
    rep.body["predicted"] = cmat_json(r.predicted);
    rep.body["condition"] = dstr(r.condition);
    rep.bound("connection", "Y_qhyp = Y_top C_TV,k", r.max_rel_dev, tol);
    return rep;
}

Report cmd_stokes(const Common& c, const std::string& sector, bool symbolic) {
    require_n(c.n);
    SectorId v;
    try {
        v = parse_sector(sector);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--sector: ") + e.what());
    }
    if (!symbolic && c.z.empty()) throw UsageError("stokes needs --z or --symbolic");
    KRing R(c.n);
    auto sd = stokes_matrices(R, v);
    auto g = gram_stokes_check(R, sd);
    Report rep;
    rep.body["sector"] = v.str();
    rep.body["order"] = sd.order;
    rep.body["basis"] = basis_json(R, sd.eps);
    if (symbolic) {
        rep.body["S1"] = matrix_json(sd.S1, laurent_str);
        rep.body["S2"] = matrix_json(sd.S2, laurent_str);
        rep.body["gram"] = matrix_json(sd.gram, laurent_str);
    } else {
        auto ctx = numeric_z(c);
        rep.body["z"] = z_json(ctx);
        rep.body["S1"] = cmat_json(specialize(sd.S1, ctx));
        rep.body["S2"] = cmat_json(specialize(sd.S2, ctx));
        rep.body["gram"] = cmat_json(specialize(sd.gram, ctx));
    }
    auto d2 = dioph2_residual(R, sd.S1);
    auto mono = monodromy_residual(R, sd.S1, sd.S2);
    rep.body["residuals"] = {{"dioph2", d2.str()}, {"monodromy", mono.str()}};
    rep.check("S1 upper triangular", g.s1_upper);
    rep.check("S2 lower triangular", g.s2_lower);
    rep.check("S1 = J (G^dagger)^-1 J", g.s1_is_gram_dual);
    rep.check("S2 = J G J", g.s2_is_gram);
    rep.check("S2 = (S1^dagger)^-1", g.s2_is_dagger_inverse);
    rep.check("det(L - S1^dagger S1^-1) identity", g.dioph2 && d2.is_zero());
    rep.check("formal monodromy eigenvalues", g.monodromy && mono.is_zero());
    return rep;
}

Report cmd_formal_reduce(const Common& c) {
    require_n(c.n, 2, 5);
    require_order(c.order);
    auto fs = formal_reduce(c.n, c.order);
    Report rep;
    rep.body["lambda"] = fs.lambda.str();
    json u = json::array();
    for (auto& x : fs.u) u.push_back(x.str());
    rep.body["u"] = u;
    json F = json::array();
    for (auto& M : fs.F) F.push_back(matrix_json(M, laurent_c_str));
    rep.body["F"] = F;
    auto res = gauge_residual(fs, c.order);
    bool zero = true;
    for (int a = 0; a < res.rows(); ++a)
        for (int b = 0; b < res.cols(); ++b) zero = zero && res(a, b).is_zero();
    rep.body["residuals"]["gauge"] = zero ? "0" : "nonzero";
    rep.check("gauge substitution removes B up to the retained order", zero);
    json K = json::array();
    bool diag = true;
    for (int j = 1; j <= c.n; ++j) {
        auto M = qkz_normal_form(j, c.n);
        K.push_back(matrix_json(M, laurent_c_str));
        for (int a = 0; a < c.n; ++a)
            for (int b = 0; b < c.n; ++b)
                diag = diag && M(a, b) == LaurentC(M(a, b).vars(), a == b ? Cyclo::zeta(c.n, -a) : Cyclo(0L));
    }
    rep.body["qkz_normal_form"] = K;
    rep.check("qKZ normal form = diag(zeta_n^-m)", diag);
    return rep;
}

Report cmd_roots_of_unity(const Common& c) {
    require_n(c.n, 2, 5);
    auto r = roots_of_unity_suite(c.n);
    Report rep;
    json zo = json::array();
    for (auto& x : z_o(c.n)) zo.push_back(x.get_str());
    rep.body["z_o"] = zo;
    rep.body["monodromy_order"] = r.monodromy_order;
    rep.body["monodromy_order_shifted"] = r.monodromy_order_shifted;
    rep.check("scalar operator at z_o is n^-n s^n d^n/ds^n", r.stirling_collapse);
    rep.check("Beilinson basis orthonormal at z_o", r.beilinson_orthonormal);
    rep.check("S1 = S2 = 1 at z_o", r.stokes_trivial);
    rep.check("monodromy order n at z_o", r.monodromy_order == c.n);
    rep.check("monodromy order n at z_o + e_1", r.monodromy_order_shifted == c.n);
    rep.bound("g_eigen", "g_m(zeta s) = zeta^m g_m(s)", r.g_eigen_dev, 1e-10);
    rep.bound("g_partition", "sum_m g_m = e^{ns}", r.g_partition_dev, 1e-10);
    rep.bound("g_ode", "g_m^(n) = n^n g_m", r.g_ode_dev, 1e-8);
    return rep;
}

Report cmd_dubrovin(const Common& c, double theta, double r0, double r1, double tol) {
    require_n(c.n, 2, 5);
    if (!(r0 > 0.0) || !(r1 > r0)) throw UsageError("need 0 < --r0 < --r1");
    auto d = dubrovin_bridge(c.n, theta, r0, r1);
    Report rep;
    rep.body["V"] = matrix_json(d.V, cyclo_str);
    rep.check("V antisymmetric", d.V_antisymmetric);
    rep.check("V = offdiagonal part of E B_1(0) E^-1", d.V_is_offdiag_B1);
    rep.bound("bridge", "transformed solution solves the isomonodromic system", d.residual, tol);
    return rep;
}

Report cmd_verify_all(const Common& c, bool fast, int criterion) {
    require_n(c.n, 2, 5);
    VerifyOptions opt;
    opt.n_max = c.n;
    opt.fast = fast;
    std::vector<CheckResult> checks;
    if (criterion == 0) checks = verify_all(opt);
    else if (criterion >= 1 && criterion <= kCriteria) checks = verify_criterion(criterion, opt);
    else throw UsageError("--criterion must lie in [1, " + std::to_string(kCriteria) + "]");
    Report rep;
    json arr = json::array();
    for (auto& x : checks) {
        json j{{"criterion", x.criterion}, {"name", x.name}, {"passed", x.passed()}};
        if (x.exact) j["failures"] = static_cast<int>(x.measured);
        else {
            j["value"] = dstr(x.measured);
            j["tolerance"] = dstr(x.tolerance);
        }
        arr.push_back(j);
        rep.check("criterion " + std::to_string(x.criterion) + ": " + x.name, x.passed());
    }
    rep.body["checks"] = arr;
    rep.body["fast"] = fast;
    return rep;
}

// ---------------------------------------------------------------------------
// configuration file: "key = value" lines mirroring the long flags of the
// subcommand; '#' starts a comment; flags given on the command line win.

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
    std::string f = "--" + key;
    for (auto& a : args)
        if (a == f || a.rfind(f + "=", 0) == 0) return true;
    return false;
}

std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::vector<std::string> extra;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") throw UsageError(path + ":" + std::to_string(lineno) + ": bad key");
        if (has_flag(args, key)) continue;
        if (value == "true") {
            extra.push_back("--" + key);
        } else if (value == "false") {
            continue;
        } else {
            extra.push_back("--" + key);
            extra.push_back(value);
        }
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

void emit(const Report& rep, const std::string& command, const std::string& output) {
    json doc = rep.body;
    doc["command"] = command;
    doc["ok"] = rep.failed.empty();
    doc["failed"] = rep.failed;
    std::string text = doc.dump(2) + "\n";
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) throw std::runtime_error("cannot write " + output);
        out << text;
    }
    for (auto& f : rep.failed) std::cerr << "invariant failed: " << f << "\n";
}

int run(int argc, char** argv) {
    if (const char* p = std::getenv(kPrecisionEnv); p && std::string(p) != "double") {
        std::cerr << kPrecisionEnv << "=" << p << " is not supported; the only precision is \"double\"\n";
        return 2;
    }

    CLI::App app{"Equivariant quantum differential equations of projective spaces: exact and numeric checks"};
    app.require_subcommand(1);
    app.fallthrough();  // --config and --output may follow the subcommand
    std::string config, output;
    app.add_option("--config", config, "flat key = value file mirroring the flags; flags win");
    app.add_option("-o,--output", output, "write the JSON report to a file instead of stdout");

    Common c;
    BasisOpts b;
    auto add_n = [&](CLI::App* sc) { sc->add_option("--n", c.n, "rank (P^{n-1})")->required(); };
    auto add_z = [&](CLI::App* sc, bool required) {
        auto o = sc->add_option("--z", c.z, "equivariant parameters, comma separated (rational, decimal or a+bi)")->delimiter(',');
        if (required) o->required();
    };
    auto add_q = [&](CLI::App* sc) {
        sc->add_option("--q", c.q, "point q (complex)")->capture_default_str();
        sc->add_option("--sheet", c.sheet, "sheet of log q: principal log + 2 pi i sheet")->capture_default_str();
    };

    std::map<std::string, std::function<Report()>> handlers;

    auto gram = app.add_subcommand("gram", "Gram matrix of an exceptional basis");
    add_n(gram);
    add_basis_opts(gram, b);
    handlers["gram"] = [&] { return cmd_gram(c, b); };

    std::string side = "left";
    int pos = 1;
    auto mut = app.add_subcommand("mutate", "mutate the pair (e_pos, e_pos+1) of a basis");
    add_n(mut);
    add_basis_opts(mut, b);
    mut->add_option("--side", side, "left or right")->check(CLI::IsMember({"left", "right"}))->capture_default_str();
    mut->add_option("--pos", pos, "1-based position of the pair")->capture_default_str();
    handlers["mutate"] = [&] { return cmd_mutate(c, b, side, pos); };

    std::vector<int> word;
    std::string bname;
    int power = 1;
    auto braid = app.add_subcommand("braid", "act by a braid word or a named braid");
    add_n(braid);
    add_basis_opts(braid, b);
    braid->add_option("--word", word, "letters +-i (tau_i or its inverse), comma separated, rightmost acts first")->delimiter(',');
    braid->add_option("--name", bname, "C, gamma, delta_odd, delta_even, beta, sigma_odd or sigma_even");
    braid->add_option("--power", power, "power of the word")->capture_default_str();
    handlers["braid"] = [&] { return cmd_braid(c, b, word, bname, power); };

    auto dioph = app.add_subcommand("dioph-check", "Diophantine constraints on a Gram matrix");
    add_n(dioph);
    add_basis_opts(dioph, b);
    dioph->add_option("--word", word, "braid word applied to the basis first")->delimiter(',');
    handlers["dioph-check"] = [&] { return cmd_dioph(c, b, word); };

    std::string solution = "levelt";
    double tol = 0.0;
    auto solve = app.add_subcommand("solve-qde", "evaluate a series solution and its residual");
    add_n(solve);
    add_z(solve, true);
    add_q(solve);
    solve->add_option("--order", c.order, "truncation order N")->capture_default_str();
    solve->add_option("--solution", solution, "levelt or top")->check(CLI::IsMember({"levelt", "top"}))->capture_default_str();
    solve->add_option("--tol", tol, "residual tolerance (default 1e-9)");
    handlers["solve-qde"] = [&] { return cmd_solve_qde(c, solution, tol > 0 ? tol : 1e-9); };

    int qi = 1;
    std::string qbasis = "x";
    auto qkz = app.add_subcommand("qkz", "numeric qKZ operator K_i");
    add_n(qkz);
    add_z(qkz, true);
    add_q(qkz);
    qkz->add_option("--i", qi, "1-based index")->required();
    qkz->add_option("--basis", qbasis, "g or x")->check(CLI::IsMember({"g", "x"}))->capture_default_str();
    handlers["qkz"] = [&] { return cmd_qkz(c, qi, qbasis); };

    auto qkzc = app.add_subcommand("qkz-check", "compatibility and difference-equation residuals");
    add_n(qkzc);
    add_z(qkzc, true);
    add_q(qkzc);
    qkzc->add_option("--order", c.hyp_order, "truncation order of Psi_J")->capture_default_str();
    qkzc->add_option("--tol", tol, "residual tolerance (default 1e-8)");
    handlers["qkz-check"] = [&] { return cmd_qkz_check(c, tol > 0 ? tol : 1e-8); };

    std::string cls, oracle;
    auto psi = app.add_subcommand("psi", "the q-hypergeometric solution Psi_Q");
    add_n(psi);
    add_z(psi, true);
    add_q(psi);
    psi->add_option("--class", cls, "Laurent polynomial in Z1..Zn, X")->required();
    psi->add_option("--oracle", oracle, "contour: compare with the contour integral")->check(CLI::IsMember({"contour"}));
    psi->add_option("--order", c.hyp_order, "truncation order")->capture_default_str();
    psi->add_option("--tol", tol, "oracle tolerance (default 1e-6)");
    handlers["psi"] = [&] { return cmd_psi(c, cls, oracle, tol > 0 ? tol : 1e-6); };

    int bk = 0;
    auto bchk = app.add_subcommand("b-check", "numeric connection matrix against C_TV,k");
    add_n(bchk);
    add_z(bchk, true);
    bchk->add_option("--k", bk, "shift k")->capture_default_str();
    bchk->add_option("--order", c.hyp_order, "truncation order")->capture_default_str();
    bchk->add_option("--tol", tol, "tolerance (default 1e-6)");
    handlers["b-check"] = [&] { return cmd_b_check(c, bk, tol > 0 ? tol : 1e-6); };

    std::string sector;
    bool symbolic = false;
    auto stokes = app.add_subcommand("stokes", "Stokes matrices of a sector and their Gram description");
    add_n(stokes);
    add_z(stokes, false);
    stokes->add_option("--sector", sector, "vp:k or vpp:k")->required();
    stokes->add_flag("--symbolic", symbolic, "exact matrices in Z1..Zn");
    handlers["stokes"] = [&] { return cmd_stokes(c, sector, symbolic); };

    auto formal = app.add_subcommand("formal-reduce", "formal solution at s = infinity");
    add_n(formal);
    formal->add_option("--order", c.order, "number of F_k coefficients")->required();
    handlers["formal-reduce"] = [&] { return cmd_formal_reduce(c); };

    auto rou = app.add_subcommand("roots-of-unity", "degeneration at z_o = (0, 1/n, ..., (n-1)/n)");
    add_n(rou);
    handlers["roots-of-unity"] = [&] { return cmd_roots_of_unity(c); };

    double theta = 0.3, r0 = 1.0, r1 = 3.0;
    auto dub = app.add_subcommand("dubrovin", "bridge to the isomonodromic system at z = 0");
    add_n(dub);
    dub->add_option("--theta", theta, "argument of the integration ray")->capture_default_str();
    dub->add_option("--r0", r0, "start radius")->capture_default_str();
    dub->add_option("--r1", r1, "end radius")->capture_default_str();
    dub->add_option("--tol", tol, "residual tolerance (default 1e-8)");
    handlers["dubrovin"] = [&] { return cmd_dubrovin(c, theta, r0, r1, tol > 0 ? tol : 1e-8); };

    bool fast = false;
    int criterion = 0;
    auto va = app.add_subcommand("verify-all", "run the acceptance checks up to rank n");
    add_n(va);
    va->add_flag("--fast", fast, "fewer bases, sectors and samples");
    va->add_option("--criterion", criterion, "run a single criterion (1-10)");
    handlers["verify-all"] = [&] { return cmd_verify_all(c, fast, criterion); };

    std::vector<std::string> args(argv + 1, argv + argc);
    CLI::App* active = nullptr;
    try {
        args = merge_config(args);
        std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
        app.parse(args);
        active = app.get_subcommands().front();
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        if (code == 0) return 0;
        auto subs = app.get_subcommands();
        std::cerr << (subs.empty() ? app.help() : subs.front()->help());
        return 2;
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    std::string name = active->get_name();
    try {
        Report rep = handlers.at(name)();
        emit(rep, name, output);
        return rep.failed.empty() ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << name << ": " << e.what() << "\n" << active->help();
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << name << ": " << e.what() << "\n" << active->help();
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << name << ": " << e.what() << "\n" << active->help();
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "invariant failed: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
