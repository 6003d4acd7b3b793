#include "taut/hrr.hpp"

#include "taut/virasoro.hpp"

namespace taut {

std::vector<Q> todd_kappa(int n) {
    // x / (1 - e^{-x}) = 1 / sum_k (-1)^k x^k / (k+1)!
    std::vector<Q> den(n + 1), f(n + 1), l(n + 1);
    for (int k = 0; k <= n; ++k) den[k] = Q(k % 2 ? -1 : 1) / factorial(k + 1);
    f[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Q s = 0;
        for (int j = 1; j <= k; ++j) s += den[j] * f[k - j];
        f[k] = -s;
    }
    for (int k = 1; k <= n; ++k) {
        Q s = 0;
        for (int j = 1; j < k; ++j) s += j * l[j] * f[k - j];
        l[k] = f[k] - s / k;
    }
    return l;
}

std::vector<Polynomial> tangent_character(Ring& r) {
    const ToppType& a = r.type();
    const int dim = a.dim_space();
    if (r.kind() != Kind::Space || r.dmax() < dim) throw std::invalid_argument("tangent character needs a space ring through its top degree");
    const TablePtr& t = r.table();
    std::vector<std::array<Polynomial, 3>> X(dim + 1);
    for (int i = 0; i <= dim; ++i)
        for (int j = 0; j <= 2; ++j) X[i][j] = r.reduce(realize(t, a, i, j, Kind::Space));
    std::vector<Polynomial> ch(dim + 1, Polynomial(t));
    ch[0] = Polynomial(t, 1);
    for (int m = 0; m <= dim; ++m)
        for (int i = 0; i <= m; ++i)
            for (auto& kt : kunneth()) {
                Q c = kt.coeff * ((i + 1 + kt.jl) % 2 ? -1 : 1);
                ch[m] += r.mul(X[i][kt.jl], X[m - i][kt.jr]) * c;
            }
    return ch;
}

std::vector<Polynomial> todd(Ring& r, const std::vector<Polynomial>& ch) {
    const TablePtr& t = r.table();
    const int n = std::min((int)ch.size() - 1, r.dmax());
    auto kappa = todd_kappa(n);
    std::vector<Polynomial> S(n + 1, Polynomial(t)), td(n + 1, Polynomial(t));
    for (int m = 1; m <= n; ++m) S[m] = ch[m] * (kappa[m] * factorial(m));
    td[0] = Polynomial(t, 1);
    for (int k = 1; k <= n; ++k) {
        Polynomial s(t);
        for (int j = 1; j <= k; ++j) s += r.mul(S[j], td[k - j]) * Q(j);
        td[k] = s * Q(1, k);
    }
    return td;
}

Integral::Integral(Ring& r) : r_(r), top_(r.type().dim_space()) {
    if (r.ideal().standard(top_).size() != 1) throw std::runtime_error(r.label() + ": top degree is not one-dimensional");
    td_ = todd(r, tangent_character(r));
    DenseVec v = r.ideal().nf(td_[top_]);
    if (v[0] == 0) throw std::runtime_error(r.label() + ": Todd class has no top part");
    scale_ = 1 / v[0];
    point_ = Polynomial::mono(r.table(), r.ideal().standard(top_)[0]) * v[0];
}

Q Integral::operator()(const Polynomial& p) const {
    Polynomial top = r_.nf(p.homogeneous_part(top_));
    if (top.is_zero()) return 0;
    return r_.ideal().nf(top)[0] * scale_;
}

Q euler_characteristic(const Integral& I, Ring& r, int m) {
    const int top = r.type().dim_space();
    const TablePtr& t = r.table();
    Polynomial xi = Polynomial::var(t, c_index(0, 2)), pw(t, 1);
    Q total = 0;
    for (int k = 0; k <= top; ++k) {
        if (k > 0) pw = r.mul(pw, xi);
        Q c = Q(1) / factorial(k);
        for (int i = 0; i < k; ++i) c *= m;
        total += c * I(r.mul(pw, I.todd_class()[top - k]));
    }
    if (total.get_den() != 1) throw std::domain_error(r.label() + ": Euler characteristic " + total.get_str() + " is not an integer");
    return total;
}

}  // namespace taut
