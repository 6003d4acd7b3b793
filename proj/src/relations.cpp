#include "taut/relations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace taut {

std::string MRTwist::str() const {
    return std::string(sign > 0 ? "+" : "-") + ",k=" + std::to_string(k) + ",chi*=" + std::to_string(chi_star);
}

MRTwist mr_twist(const ToppType& a, int sign, int k) {
    int cs = sign * a.chi + k * a.d;
    if (cs < a.g())
        throw std::invalid_argument("Mumford twist needs sign*chi + k*d >= g: " + std::to_string(cs) + " < " +
                                    std::to_string(a.g()));
    return {sign, k, cs};
}

std::vector<MRTwist> mr_twists(const ToppType& a, int jmax) {
    std::vector<MRTwist> out;
    for (int sign : {1, -1}) {
        // smallest k with sign*chi + k*d >= g
        int k = (int)std::ceil(double(a.g() - sign * a.chi) / a.d);
        for (; sign * a.chi + k * a.d < jmax; ++k) out.push_back({sign, k, sign * a.chi + k * a.d});
    }
    std::stable_sort(out.begin(), out.end(), [](const MRTwist& x, const MRTwist& y) { return x.chi_star < y.chi_star; });
    return out;
}

Polynomial mr_generator(const TablePtr& t, const ToppType& a, const MRTwist& tw, int m, Kind kind) {
    ToppType star{a.d, tw.chi_star};
    Q c = factorial(m - 1) * (m % 2 ? 1 : -1);
    Polynomial x = realize_td(t, star, m, kind) * c;
    return tw.sign > 0 ? x : sign_transport(x);
}

std::vector<Polynomial> mr_classes(const TablePtr& t, const ToppType& a, const MRTwist& tw, int jmax, Kind kind) {
    std::vector<Polynomial> X(jmax + 1, Polynomial(t)), A(jmax + 1, Polynomial(t));
    A[0] = Polynomial(t, 1);
    for (int j = 1; j <= jmax; ++j) {
        X[j] = mr_generator(t, a, tw, j, kind);
        Polynomial s(t);
        for (int m = 1; m <= j; ++m) s += X[m] * A[j - m] * Q(m);
        A[j] = s * Q(1, j);
    }
    return A;
}

RelationBatch mumford_relations(const TablePtr& t, const ToppType& a, int sign, int k, int Dtarget, Kind kind) {
    MRTwist tw = mr_twist(a, sign, k);
    RelationBatch out{"MR", tw.str(), {}};
    if (Dtarget <= tw.chi_star) return out;
    auto A = mr_classes(t, a, tw, Dtarget, kind);
    for (int j = tw.chi_star + 1; j <= Dtarget; ++j)
        if (!A[j].is_zero()) out.rels.push_back(A[j]);
    return out;
}

RelationBatch primitive_mr(const TablePtr& t, const ToppType& a, int Dtarget, Kind kind) {
    RelationBatch out{"MR", "primitive", {}};
    for (auto& tw : mr_twists(a, Dtarget)) {
        auto A = mr_classes(t, a, tw, tw.chi_star + 1, kind);
        if (!A.back().is_zero()) out.rels.push_back(A.back());
    }
    return out;
}

namespace {

void partitions(int n, int parts, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (n == 0) out.push_back(cur);
        return;
    }
    for (int p = std::min(n - parts + 1, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions(n - p, parts - 1, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Polynomial> base_relations(const TablePtr& t, const ToppType& a, int n) {
    std::vector<std::vector<int>> ps;
    std::vector<int> cur;
    partitions(n, a.b() + 1, n, cur, ps);
    std::vector<Polynomial> out;
    for (auto& p : ps) {
        Monomial m;
        for (int i : p) {
            int v = c_index(i - 1, 2);
            if (v >= t->size()) throw std::out_of_range("base relation needs classes beyond the table");
            m.e[v] += 1;
            m.deg += i;
        }
        out.push_back(Polynomial::mono(t, m));
    }
    return out;
}

Polynomial primitive_br(const TablePtr& t, const ToppType& a) { return Polynomial::var(t, c_index(0, 2)).pow(a.b() + 1); }

Polynomial MRStream::at(Ring& r, int j) {
    const TablePtr& t = r.table();
    if (A_.empty()) {
        A_.push_back(Polynomial(t, 1));
        X_.push_back(Polynomial(t));
    }
    for (int i = (int)A_.size(); i <= j; ++i) {
        for (; final_ < i - 1; ++final_) {
            X_[final_ + 1] = r.reduce(X_[final_ + 1]);
            A_[final_ + 1] = r.reduce(A_[final_ + 1]);
        }
        X_.push_back(r.reduce_partial(mr_generator(t, r.type(), tw_, i, r.kind())));
        Polynomial s = X_[i] * Q(i);
        for (int m = 1; m < i; ++m) s += r.mul(X_[m], A_[i - m]) * Q(m);
        A_.push_back(s * Q(1, i));
    }
    return A_[j];
}

bool precedes(const ToppType& ap, const ToppType& a) {
    return ap.d < a.d || (ap.d == a.d && ap.gcd() < a.gcd());
}

bool gmr_window(const ToppType& a, const ToppType& ap) {
    // chi'/d' < chi/d < chi'/d' + 3, cleared of denominators
    long l = (long)ap.chi * a.d, m = (long)a.chi * ap.d;
    return l < m && m < l + 3L * a.d * ap.d;
}

std::vector<ToppType> gmr_partners(const ToppType& a, bool spaces_only, int max_dprime) {
    std::vector<ToppType> out;
    int top = max_dprime > 0 ? std::min(max_dprime, a.d) : a.d;
    for (int dp = 1; dp <= top; ++dp) {
        // chi' ranges over an open window of length 3d'
        int lo = (int)std::floor(double(a.chi) * dp / a.d) - 3 * dp - 1;
        int hi = (int)std::ceil(double(a.chi) * dp / a.d) + 1;
        for (int cp = lo; cp <= hi; ++cp) {
            ToppType ap{dp, cp};
            if (!gmr_window(a, ap) || !precedes(ap, a)) continue;
            if (spaces_only && ap.gcd() != 1) continue;
            out.push_back(ap);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const ToppType& x, const ToppType& y) {
        if (x.d != y.d) return x.d < y.d;
        return x.gcd() < y.gcd();
    });
    return out;
}

GMRStream::GMRStream(ToppType a, ToppType ap, Ring& right, bool sign_map)
    : a_(a), ap_(ap), right_(right), sign_map_(sign_map) {
    if (!gmr_window(a, ap)) throw std::invalid_argument("GMR needs chi'/d' < chi/d < chi'/d' + 3 for " + a.str() + ", " + ap.str());
    if (ap.d != right.type().d) throw std::invalid_argument("right ring does not match " + ap.str());
    qmax_ = right.top_degree();
    Ideal& I = right.ideal();
    XR_.resize(qmax_ + 1);
    for (int b = 0; b <= qmax_; ++b) {
        for (int jl = 0; jl <= 2; ++jl) {
            Polynomial acc(right.table());
            for (auto& kt : kunneth()) {
                if (kt.jl != jl) continue;
                Polynomial x = realize(right.table(), ap, b, kt.jr, right.kind());
                if (sign_map) x = sign_transport(x);
                acc += x * kt.coeff;
            }
            acc = right.reduce(acc);
            if (acc.is_zero()) continue;
            XR_[b][jl] = dense_to_sparse(I.nf(acc));
        }
    }
}

void GMRStream::finalize(Ring& left, int p) {
    for (; final_ < p; ++final_) {
        int q = final_ + 1;
        for (auto& x : XL_[q]) x = left.reduce(x);
        for (auto& row : cells_[q])
            for (auto& c : row) c = left.reduce(c);
    }
}

const std::vector<Polynomial>& GMRStream::cell(Ring& left, int p, int q) {
    const TablePtr& t = left.table();
    Ideal& R = right_.ideal();
    std::vector<std::vector<Monomial>> stdR(qmax_ + 1);
    for (int s = 0; s <= qmax_; ++s) stdR[s] = R.standard(s);
    while ((int)cells_.size() <= p) {
        const int pp = (int)cells_.size();
        if (pp > 0) finalize(left, pp - 1);
        std::array<Polynomial, 3> xl;
        for (int jl = 0; jl <= 2; ++jl) xl[jl] = left.reduce_partial(realize(t, a_, pp, jl, left.kind()));
        XL_.push_back(xl);
        std::vector<std::vector<Polynomial>> level(qmax_ + 1);
        for (int qq = 0; qq <= qmax_; ++qq) {
            const int nu = (int)stdR[qq].size();
            if (pp == 0 && qq == 0) {
                level[0] = {Polynomial(t, 1)};
                continue;
            }
            std::vector<Polynomial> out(nu, Polynomial(t));
            for (int a = 0; a <= pp; ++a) {
                for (int jl = 0; jl <= 2; ++jl) {
                    if (XL_[a][jl].is_zero()) continue;
                    // W[u] = sum_b (-1)^{b+jl} (a+b)! (XR[b][jl] * e_s)[u] C[pp-a][qq-b][s]
                    std::vector<std::vector<Term>> W(nu);
                    for (int b = 0; b <= qq; ++b) {
                        if (a + b == 0 || XR_[b][jl].empty()) continue;
                        const auto& src = a == 0 ? level : cells_[pp - a];
                        const auto& cs = src[qq - b];
                        Q w = factorial(a + b) * ((b + jl) % 2 ? -1 : 1);
                        for (size_t s = 0; s < cs.size(); ++s) {
                            if (cs[s].is_zero()) continue;
                            SparseRow prod;
                            for (auto& [tt, x] : XR_[b][jl]) {
                                Monomial m = mono_mul(stdR[b][tt], stdR[qq - b][s]);
                                prod = sparse_axpy(prod, x, R.nf_mono(m));
                            }
                            for (auto& [u, y] : prod)
                                for (auto& tm : cs[s].terms()) W[u].push_back({tm.m, tm.c * y * w});
                        }
                    }
                    for (int u = 0; u < nu; ++u) {
                        if (W[u].empty()) continue;
                        Polynomial wu = Polynomial::from_terms(t, std::move(W[u]));
                        if (wu.is_zero()) continue;
                        if (a == 0 || a == pp)
                            out[u] += XL_[a][jl] * wu;
                        else
                            out[u] += left.mul(XL_[a][jl], wu);
                    }
                }
            }
            for (auto& o : out) o = o * Q(1, pp + qq);
            level[qq] = std::move(out);
        }
        cells_.push_back(std::move(level));
    }
    return cells_[p][q];
}

std::vector<Polynomial> GMRStream::relations(Ring& left, int n, bool primitive) {
    std::vector<Polynomial> out;
    const int dd = rank();
    for (int q = 0; q <= qmax_; ++q) {
        int j = n + q;
        if (j <= dd) continue;
        if (primitive && !(j == dd + 1 || (j == dd + 2 && 2 * q == dd + 2))) continue;
        for (auto& c : cell(left, n, q))
            if (!c.is_zero()) out.push_back(c);
    }
    return out;
}

Q falling(const Q& a, int m) {
    Q r = 1;
    for (int i = 0; i < m; ++i) r *= a - i;
    return r;
}

bool falling_factorial_identity(const Q& a, const Q& b, int m) {
    Q rhs = 0, binom = 1;
    for (int l = 0; l <= m; ++l) {
        if (l > 0) binom = binom * (m - l + 1) / l;
        rhs += (l % 2 ? -1 : 1) * binom * falling(a + b - l, m - l) * falling(b, l);
    }
    return rhs == falling(a, m);
}

namespace {

// Free c-ring of both factors: left classes use the c_table layout, right ones follow with a prime.
struct Doubled {
    int D;
    TablePtr ct, t;
    ToppType a, ap;

    Doubled(const ToppType& a_, const ToppType& ap_, int D_) : D(D_), ct(c_table(D_)), a(a_), ap(ap_) {
        std::vector<VarInfo> v = ct->vars();
        for (auto x : ct->vars()) {
            x.label += "'";
            v.push_back(x);
        }
        t = std::make_shared<const VariableTable>(v);
    }

    int width() const { return ct->size(); }

    Polynomial embed(const Polynomial& p, bool right) const {
        std::vector<Term> out;
        for (auto& tm : p.terms()) {
            Monomial m;
            bool keep = true;
            for (int v = 0; v < p.table()->size(); ++v) {
                if (!tm.m.e[v]) continue;
                if (v >= width()) {
                    keep = false;
                    break;
                }
                m.e[v + (right ? width() : 0)] = tm.m.e[v];
            }
            if (!keep) continue;
            m.deg = tm.m.deg;
            out.push_back({m, tm.c});
        }
        return Polynomial::from_terms(t, std::move(out));
    }

    Polynomial ch(int i, int j, bool right) const {
        if (i > D) return Polynomial(t);
        return embed(realize(ct, right ? ap : a, i, j), right);
    }

    // R_n on one side, dropping classes beyond the table
    Polynomial R(int n, const Polynomial& p, bool right) const {
        const ToppType& x = right ? ap : a;
        return p.derive([&](int v) {
            bool is_right = v >= width();
            if (is_right != right) return Polynomial(t);
            auto [k, j] = c_kj(is_right ? v - width() : v);
            if (c_degree(k + n, j) > D) return Polynomial(t);
            Q c = n == -1 ? Q(1) : rising(Q(k + j - 1), n + 1);
            return embed(c_value(ct, x, k + n, j), right) * c;
        });
    }

    std::vector<Polynomial> C() const {
        std::vector<Polynomial> out(D + 1, Polynomial(t));
        out[0] = Polynomial(t, 1);
        for (int N = 1; N <= D; ++N) {
            Polynomial s(t);
            for (int a_ = 0; a_ <= N; ++a_)
                for (int b = 0; a_ + b <= N; ++b) {
                    if (a_ + b == 0) continue;
                    Q w = factorial(a_ + b);
                    for (auto& kt : kunneth()) {
                        Q sg = (b + kt.jl) % 2 ? -1 : 1;
                        s += ch(a_, kt.jl, false) * ch(b, kt.jr, true) * out[N - a_ - b] * (w * sg * kt.coeff);
                    }
                }
            out[N] = s * Q(1, N);
        }
        return out;
    }
};

Q binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

}  // namespace

QuadraticCheck quadratic_identity_check(const ToppType& a, const ToppType& ap, int n, int Dmax) {
    Doubled dd(a, ap, Dmax + 1);
    auto C = dd.C();
    const TablePtr& t = dd.t;
    Polynomial Csum(t);
    for (auto& c : C) Csum += c;
    Polynomial lhs = dd.R(n, Csum, false);
    for (int k = -1; k <= n; ++k) lhs += dd.R(k, Csum, true) * binom(n + 1, k + 1);
    Polynomial mult(t);
    for (int x = 0; x <= n; ++x)
        for (int b = 0; x + b <= n; ++b) {
            Q w = factorial(x) * factorial(n - x) / factorial(n - x - b);
            for (auto& kt : kunneth()) {
                Q sg = (kt.jl + 1) % 2 ? -1 : 1;
                mult += dd.ch(x, kt.jl, false) * dd.ch(b, kt.jr, true) * (w * sg * kt.coeff);
            }
        }
    Polynomial rhs = mult * Csum;
    QuadraticCheck out{true, 0, ""};
    for (int M = 0; M <= Dmax; ++M) {
        Polynomial diff = lhs.homogeneous_part(M) - rhs.homogeneous_part(M);
        out.terms_checked += (int)lhs.homogeneous_part(M).size();
        if (!diff.is_zero() && out.ok) {
            out.ok = false;
            out.residual = "degree " + std::to_string(M) + ": " + diff.str();
        }
    }
    return out;
}

QuadraticCheck r_minus1_identity_check(const ToppType& a, const ToppType& ap, int Dmax) {
    Doubled dd(a, ap, Dmax);
    auto C = dd.C();
    QuadraticCheck out{true, 0, ""};
    const int rk = a.d * ap.d;
    for (int j = 1; j <= Dmax; ++j) {
        Polynomial right = dd.R(-1, C[j], true) + C[j - 1] * Q(j - 1 - rk);
        Polynomial left = dd.R(-1, C[j], false) - C[j - 1] * Q(j - 1 - rk);
        out.terms_checked += (int)C[j].size();
        for (auto* r : {&right, &left})
            if (!r->is_zero() && out.ok) {
                out.ok = false;
                out.residual = "j=" + std::to_string(j) + ": " + r->str();
            }
    }
    return out;
}

}  // namespace taut
