#include "taut/virasoro.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace taut {

const std::vector<KunnethTerm>& kunneth() {
    static const std::vector<KunnethTerm> k = {
        {2, 0, 1}, {1, 1, 1}, {0, 2, 1}, {1, 2, Q(3, 2)}, {2, 1, Q(3, 2)}, {2, 2, 1},
    };
    return k;
}

Q rising(const Q& x, int n) {
    Q r = 1;
    for (int i = 0; i < n; ++i) r *= x + i;
    return r;
}

Q factorial(int n) { return rising(1, n); }

Polynomial apply_R(int n, const Polynomial& p, const ToppType& a) {
    if (n < -1) throw std::invalid_argument("R_n needs n >= -1");
    if (n == -1) return r_minus1(p, a);
    const TablePtr& t = p.table();
    return p.derive([&](int v) {
        if ((*t)[v].label == "u") return Polynomial(t);
        auto [k, j] = c_kj(v);
        Q c = rising(Q(k + j - 1), n + 1);
        return c_value(t, a, k + n, j) * c;
    });
}

Polynomial T_element(int n, const TablePtr& t, const ToppType& a) {
    static std::mutex mu;
    static std::map<std::tuple<const VariableTable*, int, int, int>, Polynomial> cache;
    auto key = std::make_tuple(t.get(), n, a.d, a.chi);
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Polynomial out(t);
    for (int x = 0; x <= n; ++x) {
        Q f = factorial(x) * factorial(n - x);
        for (auto& kt : kunneth()) {
            Q s = (kt.jl % 2 ? -1 : 1) * f * kt.coeff;
            out += realize(t, a, x, kt.jl) * realize(t, a, n - x, kt.jr) * s;
        }
    }
    std::lock_guard<std::mutex> g(mu);
    cache.emplace(key, out);
    return out;
}

Polynomial apply_L(int n, const Polynomial& p, const ToppType& a) {
    if (n == -1) return r_minus1(p, a);
    return apply_R(n, p, a) + T_element(n, p.table(), a) * p;
}

Polynomial apply_R_delta(int n, const Polynomial& p, const ToppType& a) {
    const TablePtr& t = p.table();
    Q s = factorial(n + 1) / a.d;
    return apply_R(n, p, a) - c_value(t, a, n + 1, 1) * r_minus1(p, a) * s;
}

Polynomial T_delta(int n, const TablePtr& t, const ToppType& a) {
    return T_element(n, t, a) - c_value(t, a, n, 1) * (factorial(n + 1) / a.d);
}

Polynomial apply_L_delta(int n, const Polynomial& p, const ToppType& a) {
    const TablePtr& t = p.table();
    Q s = factorial(n + 1) / a.d;
    return apply_R(n, p, a) + T_element(n, t, a) * p - r_minus1(c_value(t, a, n + 1, 1) * p, a) * s;
}

Polynomial apply_Lwt0(const Polynomial& p, const ToppType& a) {
    // sum_{n >= -1} (-1)^n/(n+1)! L_n L_{-1}^{n+1}
    Polynomial out(p.table());
    Polynomial cur = p;  // L_{-1}^{n+1} p
    for (int n = -1; !cur.is_zero(); ++n) {
        if (n >= 0) cur = r_minus1(cur, a);
        if (cur.is_zero()) break;
        Q s = Q(n % 2 == 0 ? 1 : -1) / factorial(n + 1);
        out += apply_L(n, cur, a) * s;
    }
    return out;
}

}  // namespace taut
