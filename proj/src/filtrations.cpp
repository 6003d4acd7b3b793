#include "taut/filtrations.hpp"

#include <sstream>

#include "taut/descendent.hpp"

namespace taut {

int FiltrationTable::at(int k, int m) const {
    for (int kk = std::min(k, kmax); kk >= 0; --kk) {
        auto f = dims.find({kk, m});
        if (f != dims.end()) return f->second;
    }
    return 0;
}

bool FiltrationTable::graded_equal(const FiltrationTable& o) const {
    int M = std::min(mmax, o.mmax), K = std::max(kmax, o.kmax);
    for (int m = 0; m <= M; ++m)
        for (int k = 0; k <= K; ++k)
            if (graded(k, m) != o.graded(k, m)) return false;
    return true;
}

namespace {

int chern_weight(int v) { return c_kj(v).first; }

}  // namespace

FiltrationTable chern_filtration(Ring& r, int qmax) {
    if (qmax < 0) qmax = r.kind() == Kind::Space ? std::min(r.dmax(), r.type().dim_space()) : r.dmax();
    const TablePtr& t = r.table();
    Ideal& I = r.ideal();
    FiltrationTable out;
    out.mmax = 2 * qmax;
    std::vector<Polynomial> E(t->size());
    for (int v = 0; v < t->size() && t->deg(v) <= qmax; ++v) E[v] = r.reduce(Polynomial::var(t, v));
    // fresh[q][k]: basis vectors first appearing in C_k H^{2q}
    std::vector<std::vector<std::vector<Polynomial>>> fresh(qmax + 1);
    fresh[0] = {{Polynomial(t, 1)}};
    out.dims[{0, 0}] = r.hilbert(0);
    for (int q = 1; q <= qmax; ++q) {
        const int h = r.hilbert(q);
        Echelon ech((int)I.standard(q).size());
        for (int k = 0; ech.rank() < h; ++k) {
            fresh[q].emplace_back();
            for (int v = 0; v < t->size() && t->deg(v) <= q; ++v) {
                int w = chern_weight(v), dq = q - t->deg(v);
                if (w > k || k - w >= (int)fresh[dq].size()) continue;
                for (auto& x : fresh[dq][k - w]) {
                    Polynomial p = r.mul(E[v], x);
                    if (p.is_zero()) continue;
                    if (ech.insert(dense_to_sparse(I.nf(p)))) fresh[q][k].push_back(p);
                }
            }
            out.dims[{k, 2 * q}] = ech.rank();
            out.kmax = std::max(out.kmax, k);
            if (k > 4 * qmax + 8) throw std::logic_error(r.label() + ": Chern filtration does not exhaust degree " + std::to_string(q));
        }
        if (h == 0) out.dims[{0, 2 * q}] = 0;
    }
    return out;
}

namespace {

using Space = std::vector<DenseVec>;  // spanning rows

Space whole(int n) {
    Space out;
    for (int i = 0; i < n; ++i) {
        DenseVec e(n);
        e[i] = 1;
        out.push_back(e);
    }
    return out;
}

Space image(Ring& r, int q_src, const Polynomial& f, int q_dst) {
    Ideal& I = r.ideal();
    const size_t n = I.standard(q_dst).size();
    Space out;
    for (auto& m : I.standard(q_src)) {
        Polynomial p = r.mul(Polynomial::mono(r.table(), m), f);
        out.push_back(p.is_zero() ? DenseVec(n) : I.nf(p));
    }
    return out;
}

Space kernel(Ring& r, int q, const Polynomial& f, int q_dst, int dim) {
    Ideal& I = r.ideal();
    const int n = (int)I.standard(q).size();
    if (q_dst > dim) return whole(n);
    Space img = image(r, q, f, q_dst);
    const int rows = (int)I.standard(q_dst).size();
    std::vector<DenseVec> mat(rows, DenseVec(n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < rows; ++i) mat[i][j] = img[j][i];
    return kernel_basis(mat, n);
}

Space intersect(const Space& U, const Space& W, int n) {
    if (U.empty() || W.empty()) return {};
    const int a = (int)U.size(), b = (int)W.size();
    std::vector<DenseVec> mat(n, DenseVec(a + b));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < a; ++j) mat[i][j] = U[j][i];
        for (int j = 0; j < b; ++j) mat[i][a + j] = -W[j][i];
    }
    Space out;
    for (auto& k : kernel_basis(mat, a + b)) {
        DenseVec v(n);
        for (int j = 0; j < a; ++j)
            for (int i = 0; i < n; ++i) v[i] += k[j] * U[j][i];
        out.push_back(v);
    }
    return out;
}

}  // namespace

FiltrationTable perverse_filtration(Ring& r, const Polynomial& xi, int b, int dim) {
    Ideal& I = r.ideal();
    const TablePtr& t = r.table();
    FiltrationTable out;
    out.mmax = 2 * dim;
    std::vector<Polynomial> pw{Polynomial(t, 1)};
    for (int e = 1; e <= dim; ++e) pw.push_back(r.mul(pw.back(), xi));
    auto power = [&](int e) { return e <= dim ? pw[e] : Polynomial(t); };
    for (int q = 0; q <= dim; ++q) {
        const int m = 2 * q, n = (int)I.standard(q).size();
        for (int k = -1;; ++k) {
            Space sum;
            for (int i = 1; i - 1 <= q; ++i) {
                int e = b + k - m + i;
                if (e <= 0) continue;
                Space ker = kernel(r, q, power(e), q + e, dim);
                Space im = i == 1 ? whole(n) : image(r, q - (i - 1), power(i - 1), q);
                for (auto& v : intersect(ker, im, n)) sum.push_back(v);
            }
            int rank = dense_rank(sum);
            if (k == -1) {
                if (rank != 0) throw std::logic_error("perverse formula gives P_{-1} != 0 in degree " + std::to_string(m));
                continue;
            }
            out.dims[{k, m}] = rank;
            out.kmax = std::max(out.kmax, k);
            if (rank == n) break;
            if (k > 2 * dim + 2) throw std::logic_error("perverse filtration does not exhaust degree " + std::to_string(m));
        }
    }
    return out;
}

FiltrationTable perverse_filtration(Ring& r) {
    const ToppType& a = r.type();
    if (r.kind() != Kind::Space) throw std::invalid_argument("perverse filtration needs a space ring");
    return perverse_filtration(r, r.reduce(Polynomial::var(r.table(), c_index(0, 2))), a.b(), a.dim_space());
}

PCVerdict pc_check(Ring& r) {
    PCVerdict v;
    v.perverse = perverse_filtration(r);
    v.chern = chern_filtration(r, r.type().dim_space());
    int K = std::max(v.perverse.kmax, v.chern.kmax);
    for (int m = 0; m <= v.perverse.mmax && v.ok; m += 2)
        for (int k = 0; k <= K; ++k)
            if (v.perverse.at(k, m) != v.chern.at(k, m)) {
                v.ok = false;
                v.k = k;
                v.m = m;
                break;
            }
    return v;
}

bool vanishing_window_check(Ring& r, int lmax) {
    const ToppType& a = r.type();
    auto C = chern_filtration(r, std::min(r.dmax(), a.dim_space()));
    for (int l = 1; l <= lmax; ++l) {
        int q = a.b() + l;
        if (q > a.dim_space()) continue;
        if (C.at(2 * l - 1, 2 * q) != 0) return false;
    }
    return true;
}

Q Bivariate::at(int a, int b) const {
    auto it = c.find({a, b});
    return it == c.end() ? Q(0) : it->second;
}

void Bivariate::add(int a, int b, const Q& x) {
    if (x == 0) return;
    Q& y = c[{a, b}];
    y += x;
    if (y == 0) c.erase({a, b});
}

bool Bivariate::symmetric() const {
    for (auto& [e, x] : c) {
        if (at(-e.first, e.second) != x || at(e.first, -e.second) != x) return false;
    }
    return true;
}

std::string Bivariate::str() const {
    if (c.empty()) return "0";
    std::ostringstream s;
    bool first = true;
    for (auto& [e, x] : c) {
        if (!first) s << (x < 0 ? " - " : " + ");
        else if (x < 0) s << "-";
        first = false;
        Q a = abs(x);
        bool mono = e.first != 0 || e.second != 0;
        if (a != 1 || !mono) s << a.get_str() << (mono ? "*" : "");
        std::string sep;
        if (e.first) {
            s << "q" << (e.first != 1 ? "^" + std::to_string(e.first) : "");
            sep = "*";
        }
        if (e.second) s << sep << "t" << (e.second != 1 ? "^" + std::to_string(e.second) : "");
    }
    return s.str();
}

Bivariate omega(int d, const FiltrationTable& P) {
    ToppType a{d, 1};
    const int g = a.g(), b = a.b();
    Bivariate out;
    Q sign = (d * d + 1) % 2 ? -1 : 1;
    for (int m = 0; m <= P.mmax; ++m)
        for (int i = 0; i <= P.kmax; ++i) {
            int x = P.graded(i, m);
            if (x) out.add(i - g, m - i - b, sign * x);
        }
    if (!out.symmetric()) throw std::domain_error("Omega_" + std::to_string(d) + " is not symmetric: " + out.str());
    return out;
}

namespace {

void add_chi_product(Bivariate& B, int a, int b, const Q& x) {
    for (int i = -a; i <= a; i += 2)
        for (int j = -b; j <= b; j += 2) B.add(i, j, x);
}

}  // namespace

std::map<std::pair<int, int>, long> gv_extract(const Bivariate& omega) {
    if (!omega.symmetric()) throw std::domain_error("GV extraction needs a symmetric input");
    Bivariate rest = omega;
    std::map<std::pair<int, int>, long> N;
    while (!rest.is_zero()) {
        auto [e, x] = *rest.c.rbegin();
        auto [a, b] = e;
        if (a < 0 || b < 0) throw std::domain_error("GV peeling left " + rest.str());
        if (x.get_den() != 1) throw std::domain_error("non-integral GV residue " + x.get_str());
        long n = x.get_num().get_si() * ((a + b) % 2 ? -1 : 1);
        N[{a, b}] += n;
        add_chi_product(rest, a, b, -x);
    }
    return N;
}

Bivariate gv_reconstruct(const std::map<std::pair<int, int>, long>& N) {
    Bivariate out;
    for (auto& [e, n] : N) add_chi_product(out, e.first, e.second, Q(n) * ((e.first + e.second) % 2 ? -1 : 1));
    return out;
}

std::map<int, long> maulik_toda(const Bivariate& omega) {
    std::map<int, Q> p;
    for (auto& [e, x] : omega.c) {
        p[e.first] += x * (e.first % 2 ? -1 : 1);
        if (p[e.first] == 0) p.erase(e.first);
    }
    std::map<int, long> out;
    while (!p.empty()) {
        auto [G, x] = *p.rbegin();
        if (G < 0) throw std::domain_error("Maulik-Toda expansion does not terminate");
        if (x.get_den() != 1) throw std::domain_error("non-integral Maulik-Toda number " + x.get_str());
        out[G] = x.get_num().get_si();
        Q binom = 1;
        for (int s = 0; s <= 2 * G; ++s) {
            if (s > 0) binom = binom * (2 * G - s + 1) / s;
            Q& y = p[s - G];
            y -= x * binom;
            if (y == 0) p.erase(s - G);
        }
    }
    return out;
}

namespace {

Bivariate bmul(const Bivariate& A, const Bivariate& B, int cut) {
    Bivariate out;
    for (auto& [ea, xa] : A.c)
        for (auto& [eb, xb] : B.c)
            if (ea.first + eb.first <= cut) out.add(ea.first + eb.first, ea.second + eb.second, xa * xb);
    return out;
}

Bivariate badd(const Bivariate& A, const Bivariate& B, const Q& s = 1) {
    Bivariate out = A;
    for (auto& [e, x] : B.c) out.add(e.first, e.second, x * s);
    return out;
}

int qlow(const Bivariate& B) {
    int lo = 0;
    for (auto& [e, x] : B.c) lo = std::min(lo, e.first);
    return lo;
}

}  // namespace

std::vector<Bivariate> gv_pe(const std::vector<Bivariate>& omegas, int qcut, bool both_factors) {
    const int D = (int)omegas.size() - 1;
    int neg = 0;
    for (int d = 1; d <= D; ++d) neg = std::max(neg, -qlow(omegas[d]));
    const int cut = qcut + D * neg + 2;
    Bivariate pref;
    for (int k = 0; 1 + k <= cut; ++k)
        for (int l = 0; both_factors ? 1 + k + l <= cut : l == 0; ++l) pref.add(1 + k + l, k - l, -1);
    std::vector<Bivariate> F(D + 1), S(D + 1), G(D + 1);
    for (int d = 1; d <= D; ++d) F[d] = bmul(pref, omegas[d], cut);
    for (int k = 1; k <= D; ++k)
        for (int n = 1; n <= k; ++n) {
            if (k % n) continue;
            Bivariate ad;
            for (auto& [e, x] : F[k / n].c)
                if (e.first * n <= cut) ad.add(e.first * n, e.second * n, x);
            S[k] = badd(S[k], ad, Q(1, n));
        }
    G[0].add(0, 0, 1);
    for (int k = 1; k <= D; ++k) {
        Bivariate s;
        for (int j = 1; j <= k; ++j) s = badd(s, bmul(S[j], G[k - j], cut), Q(j));
        for (auto& [e, x] : s.c)
            if (e.first <= qcut) G[k].add(e.first, e.second, x / k);
    }
    return G;
}

std::vector<Bivariate> gvpt_rhs(const std::vector<Bivariate>& omegas, int qcut) { return gv_pe(omegas, qcut, true); }

FiltrationTable stacky_perverse_numbers(const std::vector<Bivariate>& omegas, int d, int qmax) {
    std::vector<Bivariate> om(omegas.begin(), omegas.begin() + d + 1);
    auto G = gv_pe(om, 2 * qmax + d + 2, false);
    const Bivariate& X = G[d];
    if (X.is_zero()) throw std::domain_error("empty Q^" + std::to_string(d) + " coefficient");
    auto [e0, x0] = *X.c.begin();
    Q s = x0 < 0 ? -1 : 1;
    std::map<std::pair<int, int>, long> gr;  // (i, m)
    int kmax = 0;
    for (auto& [e, x] : X.c) {
        int i = e.first - e0.first, j = e.second - e0.second;
        if (i + j > 2 * qmax) continue;
        Q y = x * s;
        if (y.get_den() != 1 || y < 0) throw std::domain_error("stacky perverse number " + y.get_str() + " at " + std::to_string(i) + "," + std::to_string(i + j));
        gr[{i, i + j}] = y.get_num().get_si();
        kmax = std::max(kmax, i);
    }
    FiltrationTable out;
    out.kmax = kmax;
    out.mmax = 2 * qmax;
    for (int m = 0; m <= 2 * qmax; ++m)
        for (int k = 0, acc = 0; k <= kmax; ++k) {
            auto it = gr.find({k, m});
            if (it != gr.end()) acc += (int)it->second;
            out.dims[{k, m}] = acc;
        }
    return out;
}

std::string gvpt_compare(const std::vector<Bivariate>& omegas, const std::string& pt_text, int qcut) {
    auto G = gvpt_rhs(omegas, qcut);
    std::istringstream in(pt_text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int d, n;
        std::string colon;
        if (!(ls >> d >> n >> colon) || colon != ":") throw std::invalid_argument("PT file line " + std::to_string(lineno) + ": expected 'd n :'");
        if (d < 0 || d >= (int)G.size() || n > qcut) continue;
        std::map<int, Q> want;
        std::string pair;
        while (ls >> pair) {
            auto slash = pair.find('/');
            if (slash == std::string::npos) throw std::invalid_argument("PT file line " + std::to_string(lineno) + ": bad pair " + pair);
            want[std::stoi(pair.substr(0, slash))] += qparse(pair.substr(slash + 1));
        }
        std::map<int, Q> have;
        for (auto& [e, x] : G[d].c)
            if (e.first == n) have[e.second] = x;
        for (auto it = want.begin(); it != want.end();) it = it->second == 0 ? want.erase(it) : std::next(it);
        if (have != want) return "Q^" + std::to_string(d) + " q^" + std::to_string(n) + " differs (line " + std::to_string(lineno) + ")";
    }
    return "";
}

}  // namespace taut
