#include "taut/descendent.hpp"

#include <numeric>

namespace taut {

std::string kind_str(Kind k) { return k == Kind::Stack ? "stack" : "space"; }

Kind parse_kind(const std::string& s) {
    if (s == "stack") return Kind::Stack;
    if (s == "space") return Kind::Space;
    throw std::invalid_argument("kind must be stack or space: " + s);
}

int ToppType::gcd() const { return std::gcd(d, chi); }

Q ToppType::r() const { return Q(3, 2) - frac(chi, d); }

std::string ToppType::str() const { return "(" + std::to_string(d) + "," + std::to_string(chi) + ")"; }

std::string c_label(int k, int j) { return "c" + std::to_string(k) + "(" + std::to_string(j) + ")"; }

int c_index(int k, int j) {
    int n = c_degree(k, j);
    if (n < 1 || k < 0) return -1;
    return 3 * (n - 1) + (2 - j);
}

std::pair<int, int> c_kj(int index) {
    int n = index / 3 + 1;
    int j = 2 - index % 3;
    return {n + 1 - j, j};
}

int c11_index() { return c_index(1, 1); }

TablePtr c_table(int D) {
    std::vector<VarInfo> v;
    for (int n = 1; n <= D; ++n)
        for (int j = 2; j >= 0; --j) v.push_back({c_label(n + 1 - j, j), n, n + 1 - j});
    return std::make_shared<const VariableTable>(v);
}

TablePtr cu_table(int D) {
    std::vector<VarInfo> v = c_table(D)->vars();
    v.push_back({"u", 1, 1});
    return std::make_shared<const VariableTable>(v);
}

Q chern_pairing(const ToppType& a, int j, bool twisted) {
    switch (j) {
        case 2: return 0;
        case 1: return a.d;
        case 0: return twisted ? Q(0) : frac(2 * a.chi - 3 * a.d, 2);
    }
    throw std::invalid_argument("H^j needs j in 0..2");
}

Polynomial c_value(const TablePtr& t, const ToppType& a, int k, int j) {
    int n = c_degree(k, j);
    if (n < 0 || k < 0) return Polynomial(t);
    // c_k(j) = ch_{n}(H^j) of alpha*e^rho; in degree 0 it is the twisted pairing.
    if (n == 0) return Polynomial(t, chern_pairing(a, j, true));
    int v = c_index(k, j);
    if (v >= t->size()) throw std::out_of_range("class " + c_label(k, j) + " beyond the variable table");
    return Polynomial::var(t, v);
}

Polynomial realize(const TablePtr& t, const ToppType& a, int i, int j, Kind kind) {
    const Q r = a.r();
    Polynomial p(t);
    // ch_i(e^{-rho} H^j) on the twisted side
    switch (j) {
        case 2: p = c_value(t, a, i - 1, 2); break;
        case 1: p = c_value(t, a, i, 1) - c_value(t, a, i - 1, 2) * r; break;
        case 0:
            p = c_value(t, a, i + 1, 0) - c_value(t, a, i, 1) * r + c_value(t, a, i - 1, 2) * (r * r / 2);
            break;
        default: throw std::invalid_argument("H^j needs j in 0..2");
    }
    return kind == Kind::Space ? drop_c11(p) : p;
}

Polynomial realize_td(const TablePtr& t, const ToppType& a, int i, Kind kind) {
    return realize(t, a, i, 0, kind) + realize(t, a, i, 1, kind) * Q(3, 2) + realize(t, a, i, 2, kind);
}

Polynomial r_minus1(const Polynomial& p, const ToppType& a) {
    const TablePtr& t = p.table();
    return p.derive([&](int v) {
        if ((*t)[v].label == "u") return Polynomial(t);
        auto [k, j] = c_kj(v);
        return c_value(t, a, k - 1, j);
    });
}

Polynomial eta(const Polynomial& p, const ToppType& a) {
    const TablePtr& t = p.table();
    Polynomial x = Polynomial::var(t, c11_index(), Q(1, a.d));
    Polynomial out(t), cur = p, xp(t, 1);
    Q fact = 1;
    for (int j = 0; !cur.is_zero(); ++j) {
        if (j > 0) fact *= j;
        Q s = (j % 2 ? -1 : 1) / fact;
        out += xp * cur * s;
        cur = r_minus1(cur, a);
        xp = xp * x;
    }
    return out;
}

Polynomial drop_c11(const Polynomial& p) {
    const int c11 = c11_index();
    std::vector<Term> keep;
    for (auto& t : p.terms())
        if (c11 >= p.table()->size() || t.m.e[c11] == 0) keep.push_back(t);
    return Polynomial::from_terms(p.table(), std::move(keep));
}

Polynomial sign_transport(const Polynomial& p) {
    const TablePtr& t = p.table();
    std::vector<Term> out = p.terms();
    for (auto& tm : out) {
        int s = 0;
        for (int v = 0; v < t->size(); ++v)
            if (tm.m.e[v] && (*t)[v].label != "u") s += tm.m.e[v] * c_kj(v).first;
        if (s % 2) tm.c = -tm.c;
    }
    return Polynomial::from_terms(t, std::move(out));
}

Polynomial phi(const Polynomial& p, const ToppType& a) {
    const TablePtr& t = p.table();
    const int u = t->index("u");
    return p.substitute([&](int v) {
        if (v == u) return Polynomial::var(t, c11_index(), Q(1, a.d));
        if (v == c11_index()) throw std::invalid_argument("phi: wt0 side has no c_1(1)");
        return eta(Polynomial::var(t, v), a);
    });
}

Polynomial phi_tilde(const Polynomial& p, const ToppType& a) {
    const TablePtr& t = p.table();
    Polynomial u = Polynomial::var(t, t->index("u"));
    Polynomial out(t), cur = p, up(t, 1);
    Q fact = 1;
    for (int i = 0; !cur.is_zero(); ++i) {
        if (i > 0) fact *= i;
        out += up * drop_c11(cur) * Q(1 / fact);
        cur = r_minus1(cur, a);
        up = up * u;
    }
    return out;
}

std::string ch_label(int i, int j) { return "ch" + std::to_string(i) + "(H" + std::to_string(j) + ")"; }

int ch_index(int i, int j) { return 3 * (i - 1) + j; }

TablePtr ch_table(int D) {
    std::vector<VarInfo> v;
    for (int i = 1; i <= D; ++i)
        for (int j = 0; j <= 2; ++j) v.push_back({ch_label(i, j), i, i});
    return std::make_shared<const VariableTable>(v);
}

Polynomial f_rho_twist(const Polynomial& p, const Q& rho) {
    const TablePtr& t = p.table();
    return p.substitute([&](int v) {
        int i = v / 3 + 1, j = v % 3;
        Polynomial out(t);
        Q c = 1;
        for (int s = 0; j + s <= 2; ++s) {
            if (s > 0) c = c * rho / s;
            out += Polynomial::var(t, ch_index(i, j + s), c);
        }
        return out;
    });
}

Polynomial c_to_ch(const Polynomial& p, const TablePtr& chs, const ToppType& a) {
    const Q r = a.r();
    return p.substitute([&](int v) {
        auto [k, j] = c_kj(v);
        int i = c_degree(k, j);
        Polynomial raw = Polynomial::var(chs, ch_index(i, j));
        return f_rho_twist(raw, r);
    });
}

}  // namespace taut
