#include "taut/ideal.hpp"

#include <algorithm>

namespace taut {

Ideal::Ideal(TablePtr t, std::vector<int> vars, int dmax)
    : t_(std::move(t)), vars_(std::move(vars)), dmax_(dmax), caches_(dmax + 1) {
    std::sort(vars_.begin(), vars_.end());
    for (int v : vars_) var_mask_.e[v] = 1;
}

void Ideal::check_vars(const Polynomial& p) const {
    for (auto& tm : p.terms())
        for (int i = 0; i < kMaxVars; ++i)
            if (tm.m.e[i] && !var_mask_.e[i])
                throw std::invalid_argument("polynomial uses a variable outside the ring: " + (*t_)[i].label);
}

Ideal::DegCache& Ideal::cache(int D) {
    if (D < 0 || D > dmax_) throw std::out_of_range("degree " + std::to_string(D) + " beyond truncation " + std::to_string(dmax_));
    return caches_[D];
}

void Ideal::invalidate_from(int D) {
    for (int k = std::max(D, 0); k <= dmax_; ++k) {
        caches_[k].std_valid = false;
        caches_[k].std.clear();
        caches_[k].index.clear();
        caches_[k].nf.clear();
    }
}

const std::vector<Monomial>& Ideal::standard(int D) {
    DegCache& c = cache(D);
    if (c.std_valid) return c.std;
    std::vector<Monomial> out;
    if (D == 0) {
        out.push_back(Monomial{});
    } else {
        std::set<Monomial, MonoGreater> lms;
        auto it = lm_by_deg_.find(D);
        if (it != lm_by_deg_.end())
            for (int k : it->second)
                if (active_[k]) lms.insert(gb_[k].lead().m);
        for (int v : vars_) {
            int d = t_->deg(v);
            if (d > D) continue;
            const auto& lower = standard(D - d);
            for (const Monomial& s : lower) {
                int maxv = -1;
                for (int i = kMaxVars - 1; i >= 0; --i)
                    if (s.e[i]) {
                        maxv = i;
                        break;
                    }
                if (maxv > v) continue;
                Monomial m = s;
                m.e[v] += 1;
                m.deg += d;
                bool ok = true;
                for (int u : vars_) {
                    if (!m.e[u] || u == v) continue;
                    Monomial q = m;
                    q.e[u] -= 1;
                    q.deg -= t_->deg(u);
                    if (std_index(q.deg, q) < 0) {
                        ok = false;
                        break;
                    }
                }
                if (ok && !lms.count(m)) out.push_back(m);
            }
        }
        std::sort(out.begin(), out.end(), MonoGreater());
    }
    DegCache& c2 = cache(D);
    c2.std = std::move(out);
    c2.index.clear();
    for (int i = 0; i < (int)c2.std.size(); ++i) c2.index.emplace(c2.std[i], i);
    c2.std_valid = true;
    return c2.std;
}

int Ideal::std_index(int D, const Monomial& m) {
    standard(D);
    auto& idx = caches_[D].index;
    auto it = idx.find(m);
    return it == idx.end() ? -1 : it->second;
}

const SparseRow& Ideal::nf_mono(const Monomial& m) {
    int D = m.deg;
    DegCache& c = cache(D);
    standard(D);
    auto hit = c.nf.find(m);
    if (hit != c.nf.end()) return hit->second;
    int si = std_index(D, m);
    if (si >= 0) return c.nf.emplace(m, SparseRow{{si, Q(1)}}).first->second;

    int n = (int)c.std.size();
    DenseVec acc(n);
    bool done = false;
    for (int v : vars_) {
        if (!m.e[v]) continue;
        Monomial q = m;
        q.e[v] -= 1;
        q.deg -= t_->deg(v);
        if (std_index(q.deg, q) >= 0) continue;
        SparseRow low = nf_mono(q);  // copy: the recursion below may touch other caches
        const auto& lstd = caches_[q.deg].std;
        for (auto& [s, x] : low) {
            Monomial w = lstd[s];
            w.e[v] += 1;
            w.deg += t_->deg(v);
            const SparseRow& r = nf_mono(w);
            for (auto& [k, y] : r) acc[k] += x * y;
        }
        done = true;
        break;
    }
    if (!done) {
        const Polynomial* g = nullptr;
        auto it = lm_by_deg_.find(D);
        if (it != lm_by_deg_.end())
            for (int k : it->second)
                if (active_[k] && gb_[k].lead().m == m) g = &gb_[k];
        if (!g) throw std::logic_error("normal form: monomial neither standard nor reducible");
        const auto terms = g->terms();
        for (size_t i = 1; i < terms.size(); ++i) {
            const SparseRow& r = nf_mono(terms[i].m);
            for (auto& [k, y] : r) acc[k] -= terms[i].c * y;
        }
    }
    return c.nf.emplace(m, dense_to_sparse(acc)).first->second;
}

SparseRow Ideal::nf_terms(const std::vector<Term>& terms, const Monomial& mult, int D) {
    standard(D);
    DenseVec acc(caches_[D].std.size());
    for (auto& tm : terms) {
        Monomial m = mono_mul(tm.m, mult);
        if (m.deg != D) throw std::invalid_argument("normal form of an inhomogeneous polynomial");
        const SparseRow& r = nf_mono(m);
        for (auto& [k, y] : r) acc[k] += tm.c * y;
    }
    return dense_to_sparse(acc);
}

void Ideal::insert_element(Polynomial g) {
    g = g.monic();
    int k = (int)gb_.size();
    const Monomial lm = g.lead().m;
    int D = lm.deg;
    gb_.push_back(std::move(g));
    active_.push_back(1);

    // Gebauer-Moeller update.
    std::vector<Pair> C, Dl;
    for (int i = 0; i < k; ++i)
        if (active_[i]) C.push_back({i, k, mono_lcm(*t_, gb_[i].lead().m, lm)});
    for (size_t a = 0; a < C.size(); ++a) {
        const Pair& p = C[a];
        bool keep = mono_coprime(gb_[p.i].lead().m, lm);
        if (!keep) {
            keep = true;
            for (size_t b = a + 1; b < C.size() && keep; ++b)
                if (mono_divides(C[b].lcm, p.lcm)) keep = false;
            for (size_t b = 0; b < Dl.size() && keep; ++b)
                if (mono_divides(Dl[b].lcm, p.lcm)) keep = false;
        }
        if (keep) Dl.push_back(p);
    }
    for (auto& [deg, vec] : pairs_) {
        std::vector<Pair> kept;
        for (auto& p : vec) {
            if (mono_divides(lm, p.lcm) && mono_lcm(*t_, gb_[p.i].lead().m, lm) != p.lcm &&
                mono_lcm(*t_, gb_[p.j].lead().m, lm) != p.lcm)
                continue;
            kept.push_back(p);
        }
        vec = std::move(kept);
    }
    for (auto& p : Dl) {
        if (mono_coprime(gb_[p.i].lead().m, lm)) continue;
        if (p.lcm.deg > dmax_) continue;
        pairs_[p.lcm.deg].push_back(p);
    }
    for (auto& [deg, idx] : lm_by_deg_)
        for (int i : idx)
            if (active_[i] && mono_divides(lm, gb_[i].lead().m) && i != k) active_[i] = 0;
    lm_by_deg_[D].push_back(k);
    ++version_;
    invalidate_from(D);
}

void Ideal::process_degree(int D) {
    std::vector<SparseRow> rows;
    auto pit = pending_.find(D);
    if (pit != pending_.end()) {
        for (auto& p : pit->second) {
            SparseRow r = nf_terms(p.terms(), Monomial{}, D);
            if (!r.empty()) rows.push_back(std::move(r));
        }
        pending_.erase(pit);
    }
    auto qit = pairs_.find(D);
    if (qit != pairs_.end()) {
        std::vector<Pair> ps = std::move(qit->second);
        pairs_.erase(qit);
        for (auto& p : ps) {
            const Polynomial& gi = gb_[p.i];
            const Polynomial& gj = gb_[p.j];
            Monomial ui = mono_div(p.lcm, gi.lead().m), uj = mono_div(p.lcm, gj.lead().m);
            std::vector<Term> a(gi.terms().begin() + 1, gi.terms().end());
            std::vector<Term> b(gj.terms().begin() + 1, gj.terms().end());
            SparseRow ra = nf_terms(a, ui, D);
            SparseRow rb = nf_terms(b, uj, D);
            SparseRow r = sparse_axpy(ra, Q(-1), rb);
            if (!r.empty()) rows.push_back(std::move(r));
        }
    }
    if (!rows.empty()) {
        const std::vector<Monomial> stdD = standard(D);
        Echelon e((int)stdD.size());
        for (auto& r : rows) e.insert(std::move(r));
        e.fully_reduce();
        std::vector<Polynomial> fresh;
        for (auto& r : e.rows()) {
            std::vector<Term> terms;
            for (auto& [k, x] : r) terms.push_back({stdD[k], x});
            fresh.push_back(Polynomial::from_terms(t_, std::move(terms)));
        }
        for (auto& g : fresh) insert_element(std::move(g));
    }
    complete_ = D;
}

bool Ideal::add(const Polynomial& p) {
    if (p.is_zero()) return false;
    if (!p.homogeneous()) throw std::invalid_argument("ideal generator must be homogeneous");
    check_vars(p);
    int D = p.degree();
    if (D > dmax_) throw std::out_of_range("generator degree beyond truncation");
    if (D <= complete_) {
        if (contains(p)) return false;
        complete_ = D - 1;
    }
    gens_.push_back(p);
    pending_[D].push_back(p);
    return true;
}

void Ideal::complete(int D) {
    if (D > dmax_) throw std::out_of_range("completion beyond truncation");
    while (complete_ < D) process_degree(complete_ + 1);
}

bool Ideal::contains(const Polynomial& p) {
    if (p.is_zero()) return true;
    DenseVec v = nf(p);
    return std::all_of(v.begin(), v.end(), [](const Q& x) { return sgn(x) == 0; });
}

DenseVec Ideal::nf(const Polynomial& p) {
    check_vars(p);
    if (p.is_zero()) return {};
    if (!p.homogeneous()) throw std::invalid_argument("normal form of an inhomogeneous polynomial");
    int D = p.degree();
    if (D > dmax_) throw std::out_of_range("normal form beyond truncation");
    complete(D);
    DenseVec acc(standard(D).size());
    for (auto& tm : p.terms()) {
        const SparseRow& r = nf_mono(tm.m);
        for (auto& [k, y] : r) acc[k] += tm.c * y;
    }
    return acc;
}

Polynomial Ideal::to_poly(int D, const DenseVec& v) {
    const auto& st = standard(D);
    std::vector<Term> terms;
    for (size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) terms.push_back({st[i], v[i]});
    return Polynomial::from_terms(t_, std::move(terms));
}

Polynomial Ideal::to_poly(int D, const SparseRow& v) {
    const auto& st = standard(D);
    std::vector<Term> terms;
    for (auto& [i, x] : v) terms.push_back({st[i], x});
    return Polynomial::from_terms(t_, std::move(terms));
}

Polynomial Ideal::nf_poly(const Polynomial& p) {
    if (p.is_zero()) return Polynomial(t_);
    return to_poly(p.degree(), nf(p));
}

DenseVec Ideal::mul_var(int v, int D, const DenseVec& x) {
    int E = D + t_->deg(v);
    complete(E);
    const std::vector<Monomial> st = standard(D);
    DenseVec acc(standard(E).size());
    for (size_t s = 0; s < x.size(); ++s) {
        if (sgn(x[s]) == 0) continue;
        Monomial w = st[s];
        w.e[v] += 1;
        w.deg += t_->deg(v);
        const SparseRow& r = nf_mono(w);
        for (auto& [k, y] : r) acc[k] += x[s] * y;
    }
    return acc;
}

int Ideal::hilbert(int D) {
    complete(D);
    return (int)standard(D).size();
}

std::vector<int> Ideal::hilbert_function(int D) {
    std::vector<int> h;
    for (int k = 0; k <= D; ++k) h.push_back(hilbert(k));
    return h;
}

int Ideal::slice_rank(int D) {
    std::vector<int> degs;
    for (int v : vars_) degs.push_back(t_->deg(v));
    return (int)free_series(degs, D)[D] - hilbert(D);
}

SliceBasis Ideal::slice(int D) {
    complete(D);
    SliceBasis out;
    for (const Monomial& m : monomials_of_degree(*t_, D, vars_)) {
        if (std_index(D, m) >= 0) continue;
        Polynomial p = Polynomial::mono(t_, m) - to_poly(D, nf_mono(m));
        out.basis.push_back(std::move(p));
    }
    out.rank = (int)out.basis.size();
    return out;
}

std::vector<Polynomial> Ideal::basis_elements() const {
    std::vector<Polynomial> out;
    for (size_t i = 0; i < gb_.size(); ++i)
        if (active_[i]) out.push_back(gb_[i]);
    return out;
}

}  // namespace taut
