#include "taut/ring.hpp"

#include <algorithm>

namespace taut {

namespace {

std::map<int, Polynomial> split_degrees(const Polynomial& p) {
    std::map<int, std::vector<Term>> by;
    for (auto& tm : p.terms()) by[tm.m.deg].push_back(tm);
    std::map<int, Polynomial> out;
    for (auto& [D, ts] : by) out.emplace(D, Polynomial::from_terms(p.table(), std::move(ts)));
    return out;
}

}  // namespace

std::vector<int> Ring::default_gens(const ToppType& a, Kind kind, int dmax) {
    auto t = c_table(std::max(dmax, 1));
    std::vector<int> g;
    if (kind == Kind::Space && a.d <= 2) return {c_index(0, 2)};
    int top = kind == Kind::Stack ? a.d : a.d - 2;
    for (int v = 0; v < t->size(); ++v) {
        if (t->deg(v) > std::min(top, dmax)) continue;
        if (kind == Kind::Space && v == c11_index()) continue;
        g.push_back(v);
    }
    return g;
}

Ring::Ring(ToppType a, Kind kind, int dmax) : Ring(a, kind, dmax, default_gens(a, kind, dmax)) {}

Ring::Ring(ToppType a, Kind kind, int dmax, std::vector<int> gens)
    : a_(a), kind_(kind), dmax_(dmax), t_(c_table(std::max(dmax, 1))), gens_(std::move(gens)) {
    if (a.d < 1) throw std::invalid_argument("degree d must be positive");
    std::sort(gens_.begin(), gens_.end());
    is_gen_.assign(t_->size(), 0);
    for (int v : gens_) is_gen_[v] = 1;
    ideal_ = Ideal(t_, gens_, dmax_);
    if (kind_ == Kind::Space && c11_index() < t_->size()) elim_.emplace(c11_index(), Polynomial(t_));
}

std::string Ring::label() const { return kind_str(kind_) + a_.str(); }

void Ring::set_elim(int v, const Polynomial& e) {
    if (is_gen_[v]) throw std::logic_error("cannot eliminate generator " + (*t_)[v].label);
    elim_[v] = e;
}

std::vector<int> Ring::unknowns(int n) const {
    std::vector<int> out;
    for (int v = 0; v < t_->size(); ++v)
        if (t_->deg(v) == n && !is_gen_[v] && !elim_.count(v)) out.push_back(v);
    return out;
}

const Polynomial& Ring::reduce_mono(const Monomial& m) {
    auto it = mono_cache_.find(m);
    if (it != mono_cache_.end()) return it->second;
    int pick = -1;
    for (int v = 0; v < t_->size() && pick < 0; ++v)
        if (m.e[v] && !is_gen_[v]) pick = v;
    Polynomial r(t_);
    if (pick < 0) {
        r = Polynomial::mono(t_, m);
    } else {
        auto e = elim_.find(pick);
        if (e == elim_.end()) throw std::logic_error("no expression for " + (*t_)[pick].label);
        Monomial rest = m;
        rest.e[pick] -= 1;
        rest.deg -= t_->deg(pick);
        Polynomial head = reduce_mono(rest);
        r = mul(head, e->second);
    }
    return mono_cache_.emplace(m, std::move(r)).first->second;
}

Polynomial Ring::reduce(const Polynomial& p) {
    Polynomial acc(t_);
    std::vector<Term> direct;
    for (auto& tm : p.terms()) {
        bool plain = true;
        for (int v = 0; v < t_->size() && plain; ++v)
            if (tm.m.e[v] && !is_gen_[v]) plain = false;
        if (plain)
            direct.push_back(tm);
        else
            acc += reduce_mono(tm.m) * tm.c;
    }
    acc += Polynomial::from_terms(t_, std::move(direct));
    Polynomial out(t_);
    for (auto& [D, part] : split_degrees(acc)) out += ideal_.nf_poly(part);
    return out;
}

Polynomial Ring::reduce_partial(const Polynomial& p) {
    std::vector<Term> keep, rest;
    for (auto& tm : p.terms()) {
        bool linear_unknown = false;
        if (tm.m.total() == 1) {
            int v = 0;
            while (!tm.m.e[v]) ++v;
            linear_unknown = !is_gen_[v] && !elim_.count(v);
        }
        (linear_unknown ? keep : rest).push_back(tm);
    }
    return Polynomial::from_terms(t_, std::move(keep)) + reduce(Polynomial::from_terms(t_, std::move(rest)));
}

Polynomial Ring::mul(const Polynomial& a, const Polynomial& b) {
    Polynomial prod = a * b;
    Polynomial out(t_);
    for (auto& [D, part] : split_degrees(prod)) {
        if (D > dmax_) throw std::out_of_range(label() + ": product degree " + std::to_string(D) + " beyond truncation");
        out += ideal_.nf_poly(part);
    }
    return out;
}

int Ring::add_relations(const std::vector<Polynomial>& rels) {
    std::map<int, std::vector<Polynomial>> by;
    for (auto& r : rels)
        for (auto& [D, part] : split_degrees(r)) by[D].push_back(part);
    int added = 0;
    for (auto& [D, ps] : by) {
        if (D > dmax_) continue;
        ideal_.complete(D);
        Echelon e((int)ideal_.standard(D).size());
        std::vector<Polynomial> fresh;
        for (auto& p : ps) {
            DenseVec v = ideal_.nf(p);
            SparseRow row = dense_to_sparse(v);
            if (e.insert(row)) fresh.push_back(ideal_.to_poly(D, row));
        }
        for (auto& f : fresh) added += ideal_.add(f);
    }
    return added;
}

int Ring::top_degree() {
    for (int D = dmax_; D >= 0; --D)
        if (hilbert(D) > 0) return D;
    return -1;
}

}  // namespace taut
