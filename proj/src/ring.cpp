#include "kqde/json_io.hpp"
#include "kqde/laurent.hpp"
#include "kqde/symmetric.hpp"

#include <charconv>
#include <map>
#include <mutex>

namespace kq {

VarList make_vars(std::vector<std::string> names) {
    if (names.size() > static_cast<size_t>(kMaxVars)) throw std::invalid_argument("too many variables");
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

VarList z_vars(int n) {
    static std::mutex mu;
    static std::map<int, VarList> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& v = cache[n];
    if (!v) {
        std::vector<std::string> names;
        for (int i = 1; i <= n; ++i) names.push_back("Z" + std::to_string(i));
        v = make_vars(names);
    }
    return v;
}

VarList append_var(const VarList& v, const std::string& name) {
    std::vector<std::string> names = *v;
    names.push_back(name);
    return make_vars(names);
}

LaurentC to_cyclo(const LaurentQ& f) {
    std::vector<LaurentC::Term> t;
    t.reserve(f.terms().size());
    for (auto& [e, c] : f.terms()) t.push_back({e, Cyclo(c)});
    LaurentC r(f.vars());
    r.set_terms_unchecked(std::move(t));
    return r;
}

std::vector<LaurentQ> z_list(const VarList& vars, int n) {
    std::vector<LaurentQ> zs;
    for (int i = 0; i < n; ++i) zs.push_back(LaurentQ::var(vars, i));
    return zs;
}

LaurentQ sym_poly(SymKind kind, int k, const VarList& vars, int first, int count) {
    if (k < 0) throw std::invalid_argument("symmetric function degree must be nonnegative");
    std::vector<LaurentQ> xs;
    for (int i = first; i < first + count; ++i) xs.push_back(LaurentQ::var(vars, i));
    LaurentQ zero(vars), one(vars, Rational(1));
    if (kind == SymKind::elementary) {
        if (k > count) throw std::invalid_argument("elementary symmetric function s_k needs k <= n");
        return elementary(k, xs, zero, one);
    }
    return complete(k, xs, zero, one);
}

LaurentQ sym_poly(SymKind kind, int k, int n) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    return sym_poly(kind, k, z_vars(n), 0, n);
}

namespace {
template <class Rec>
mpz_class stirling_table(int n, int k, Rec rec) {
    if (n < 0 || k < 0) return 0;
    std::vector<std::vector<mpz_class>> t(n + 1, std::vector<mpz_class>(n + 2, 0));
    t[0][0] = 1;
    for (int m = 0; m < n; ++m)
        for (int j = 1; j <= m + 1; ++j) t[m + 1][j] = rec(m, j, t[m][j], t[m][j - 1]);
    return k <= n ? t[n][k] : mpz_class(0);
}
}  // namespace

mpz_class stirling_first(int n, int k) {
    return stirling_table(n, k, [](int m, int, const mpz_class& same, const mpz_class& prev) {
        return mpz_class(m * same + prev);
    });
}

mpz_class stirling_second(int n, int k) {
    return stirling_table(n, k, [](int, int j, const mpz_class& same, const mpz_class& prev) {
        return mpz_class(j * same + prev);
    });
}

// ---- JSON ----

nlohmann::json to_json(const LaurentQ& f) {
    nlohmann::json j;
    j["vars"] = *f.vars();
    j["terms"] = nlohmann::json::array();
    for (auto& [e, c] : f.terms()) {
        nlohmann::json t;
        std::vector<int> ex(e.begin(), e.begin() + f.nvars());
        t["exp"] = ex;
        t["num"] = c.get_num().get_str();
        t["den"] = c.get_den().get_str();
        j["terms"].push_back(t);
    }
    return j;
}

LaurentQ laurent_from_json(const nlohmann::json& j) {
    if (!j.contains("vars") || !j.contains("terms")) throw std::invalid_argument("Laurent JSON needs vars and terms");
    VarList v = make_vars(j.at("vars").get<std::vector<std::string>>());
    std::vector<LaurentQ::Term> terms;
    for (auto& t : j.at("terms")) {
        auto ex = t.at("exp").get<std::vector<int>>();
        if (ex.size() != v->size()) throw std::invalid_argument("exponent length does not match vars");
        Exp e{};
        for (size_t i = 0; i < ex.size(); ++i) e[i] = static_cast<int16_t>(ex[i]);
        Rational c(mpz_class(t.at("num").get<std::string>()), mpz_class(t.value("den", std::string("1"))));
        if (c.get_den() == 0) throw std::invalid_argument("zero denominator");
        c.canonicalize();
        terms.push_back({e, c});
    }
    LaurentQ f(v);
    f.set_terms_unchecked(std::move(terms));
    return f;
}

nlohmann::json cplx_json(cplx z) { return nlohmann::json::array({decimal_string(z.real()), decimal_string(z.imag())}); }

std::string decimal_string(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

}  // namespace kq
