#include "taut/bps.hpp"

#include <cmath>
#include <sstream>

namespace taut {

Laurent Laurent::monomial(int e2, const Q& x) {
    Laurent l;
    if (x != 0) l.c[e2] = x;
    return l;
}

Laurent Laurent::from_integer_series(const std::vector<long>& h) {
    Laurent l;
    for (size_t k = 0; k < h.size(); ++k)
        if (h[k]) l.c[2 * (int)k] = Q(h[k]);
    return l;
}

Laurent Laurent::from_integer_series(const std::vector<int>& h) {
    return from_integer_series(std::vector<long>(h.begin(), h.end()));
}

Q Laurent::at(int e2) const {
    auto it = c.find(e2);
    return it == c.end() ? Q(0) : it->second;
}

int Laurent::low() const {
    if (c.empty()) throw std::logic_error("low exponent of the zero series");
    return c.begin()->first;
}

Laurent Laurent::truncated(int cut) const {
    Laurent l;
    for (auto& [e, x] : c)
        if (e <= cut) l.c.emplace(e, x);
    return l;
}

Laurent Laurent::shifted(int e2) const {
    Laurent l;
    for (auto& [e, x] : c) l.c.emplace(e + e2, x);
    return l;
}

Laurent Laurent::operator+(const Laurent& o) const {
    Laurent l = *this;
    for (auto& [e, x] : o.c) {
        Q& y = l.c[e];
        y += x;
        if (y == 0) l.c.erase(e);
    }
    return l;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + o * Q(-1); }

Laurent Laurent::operator*(const Q& x) const {
    Laurent l;
    if (x == 0) return l;
    for (auto& [e, y] : c) l.c.emplace(e, y * x);
    return l;
}

std::string Laurent::str() const {
    if (c.empty()) return "0";
    std::ostringstream s;
    bool first = true;
    for (auto& [e, x] : c) {
        if (!first) s << (x < 0 ? " - " : " + ");
        else if (x < 0) s << "-";
        first = false;
        Q a = abs(x);
        bool unit = a == 1 && e != 0;
        if (!unit) s << a.get_str();
        if (e != 0) {
            if (!unit) s << "*";
            s << "q";
            if (e != 2) s << "^" << (e % 2 ? std::to_string(e) + "/2" : std::to_string(e / 2));
        }
    }
    return s.str();
}

std::vector<Q> Laurent::integer_coeffs(int n) const {
    std::vector<Q> out(n + 1);
    for (auto& [e, x] : c) {
        if (e % 2) throw std::domain_error("half-integer exponent in " + str());
        if (e < 0) throw std::domain_error("negative exponent in " + str());
        if (e / 2 <= n) out[e / 2] = x;
    }
    return out;
}

Laurent mul(const Laurent& a, const Laurent& b, int cut) {
    Laurent l;
    if (a.is_zero() || b.is_zero()) return l;
    int bl = b.low();
    for (auto& [ea, xa] : a.c) {
        if (ea + bl > cut) break;
        for (auto& [eb, xb] : b.c) {
            if (ea + eb > cut) break;
            l.c[ea + eb] += xa * xb;
        }
    }
    for (auto it = l.c.begin(); it != l.c.end();) it = it->second == 0 ? l.c.erase(it) : std::next(it);
    return l;
}

Laurent adams(const Laurent& a, int n) {
    Laurent l;
    for (auto& [e, x] : a.c) l.c.emplace(e * n, x);
    return l;
}

Laurent geometric(int step2, int cut) {
    Laurent l;
    for (int e = 0; e <= cut; e += step2) l.c.emplace(e, 1);
    return l;
}

MonoidSeries pe(const MonoidSeries& f, int cut) {
    const int K = (int)f.size() - 1;
    if (K >= 0 && !f[0].is_zero()) throw std::invalid_argument("pe needs a series without constant term");
    MonoidSeries S(K + 1), G(K + 1);
    for (int k = 1; k <= K; ++k)
        for (int n = 1; n <= k; ++n)
            if (k % n == 0) S[k] = S[k] + adams(f[k / n], n).truncated(cut) * Q(1, n);
    G[0] = Laurent::monomial(0);
    for (int k = 1; k <= K; ++k) {
        Laurent s;
        for (int j = 1; j <= k; ++j) s = s + mul(S[j], G[k - j], cut) * Q(j);
        G[k] = s * Q(1, k);
    }
    return G;
}

namespace {

int moebius(int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
    }
    return n > 1 ? -m : m;
}

}  // namespace

MonoidSeries plog(const MonoidSeries& g, int cut) {
    const int K = (int)g.size() - 1;
    if (K < 0 || g[0] != Laurent::monomial(0)) throw std::invalid_argument("plog needs constant term 1");
    MonoidSeries L(K + 1), f(K + 1);
    for (int k = 1; k <= K; ++k) {
        Laurent s;
        for (int j = 1; j < k; ++j) s = s + mul(L[j], g[k - j], cut) * Q(j);
        L[k] = g[k].truncated(cut) - s * Q(1, k);
    }
    for (int k = 1; k <= K; ++k)
        for (int n = 1; n <= k; ++n)
            if (k % n == 0 && moebius(n)) f[k] = f[k] + adams(L[k / n], n).truncated(cut) * Q(moebius(n), n);
    return f;
}

Laurent shift_series(const Laurent& E, int dim) { return E.shifted(-dim) * Q(dim % 2 ? -1 : 1); }
Laurent unshift_series(const Laurent& Ebar, int dim) { return Ebar.shifted(dim) * Q(dim % 2 ? -1 : 1); }

namespace {

// Room above the cut so that negative exponents of later factors cannot pull dropped terms back.
int margin(const MonoidSeries& f) {
    const int K = (int)f.size() - 1;
    double L = 0;
    for (int k = 1; k <= K; ++k)
        if (!f[k].is_zero()) L = std::max(L, double(-f[k].low()) / k);
    return (int)std::ceil(K * L) + 2;
}

}  // namespace

MonoidSeries stack_series(const MonoidSeries& ie, int cut) {
    const int K = (int)ie.size() - 1;
    MonoidSeries F(K + 1);
    for (int k = 1; k <= K; ++k) {
        if (ie[k].is_zero()) throw std::invalid_argument("missing space series for ray point " + std::to_string(k));
        F[k] = ie[k].shifted(1) * Q(-1);
    }
    int m = margin(F) + 2;
    for (int k = 1; k <= K; ++k) F[k] = mul(F[k], geometric(2, cut + m + 2 - F[k].low()), cut + m);
    MonoidSeries G = pe(F, cut + m);
    for (auto& x : G) x = x.truncated(cut);
    return G;
}

MonoidSeries space_series(const MonoidSeries& stack, int cut) {
    const int K = (int)stack.size() - 1;
    MonoidSeries G = stack;
    G[0] = Laurent::monomial(0);
    int m = margin(G) + 4;
    MonoidSeries F = plog(G, cut + m);
    MonoidSeries out(K + 1);
    Laurent one_minus_q = Laurent::monomial(0) - Laurent::monomial(2);
    for (int k = 1; k <= K; ++k) out[k] = mul(F[k], one_minus_q, cut + m).shifted(-1).truncated(cut) * Q(-1);
    return out;
}

std::vector<long> stack_poincare(int d, int r, const std::vector<std::vector<int>>& space_hilbert, int n) {
    if (d % r) throw std::invalid_argument("degree not on the ray");
    const int K = d / r;
    if ((int)space_hilbert.size() < K) throw std::invalid_argument("missing space series for degree " + std::to_string(r * ((int)space_hilbert.size() + 1)));
    MonoidSeries ie(K + 1);
    for (int k = 1; k <= K; ++k) {
        int dk = k * r;
        ie[k] = shift_series(Laurent::from_integer_series(space_hilbert[k - 1]), dk * dk + 1);
    }
    int cut = 2 * n - d * d;
    MonoidSeries G = stack_series(ie, cut);
    Laurent E = unshift_series(G[K], d * d);
    std::vector<long> out;
    for (auto& x : E.integer_coeffs(n)) {
        if (x.get_den() != 1) throw std::domain_error("non-integral stack series coefficient " + x.get_str());
        out.push_back(x.get_num().get_si());
    }
    return out;
}

std::vector<long> structural_decompose(const std::vector<long>& E, int d, int m) {
    const int N = d * d + m * (m + 1) / 2;
    if ((int)E.size() <= N) throw std::invalid_argument("series too short: need q-degree " + std::to_string(N));
    std::vector<long> A = E;
    for (int j = 1; j <= m; ++j)
        for (int k = (int)A.size() - 1; k >= j; --k) A[k] -= A[k - j];
    if (A[0] != 1) throw std::runtime_error("constant term " + std::to_string(A[0]) + " != 1");
    for (int k = N + 1; k < (int)A.size(); ++k)
        if (A[k] != 0) throw std::runtime_error("coefficient of q^" + std::to_string(k) + " is " + std::to_string(A[k]) + ", expected degree " + std::to_string(N));
    long lead = m % 2 ? 1 : -1;
    if (A[N] != lead) throw std::runtime_error("leading coefficient " + std::to_string(A[N]) + " != " + std::to_string(lead));
    A.resize(N + 1);
    return A;
}

std::vector<long> free_stack_series(int d, int n) {
    std::vector<int> degs;
    for (int k = 1; k <= d; ++k)
        for (int i = 0; i < 3; ++i) degs.push_back(k);
    auto s = free_series(degs, n);
    return std::vector<long>(s.begin(), s.end());
}

}  // namespace taut
