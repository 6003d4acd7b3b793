#include "taut/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace taut {

std::string qstr(const Q& q) { return q.get_str(); }

Q qparse(const std::string& s) {
    Q q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

VariableTable::VariableTable(std::vector<VarInfo> vars) : vars_(std::move(vars)) {
    if ((int)vars_.size() > kMaxVars) throw std::invalid_argument("too many variables");
    for (int i = 0; i < (int)vars_.size(); ++i) {
        if (vars_[i].deg < 1) throw std::invalid_argument("variable degree must be >= 1");
        if (!by_label_.emplace(vars_[i].label, i).second)
            throw std::invalid_argument("duplicate label " + vars_[i].label);
    }
}

int VariableTable::find(const std::string& label) const {
    auto it = by_label_.find(label);
    return it == by_label_.end() ? -1 : it->second;
}

int VariableTable::index(const std::string& label) const {
    int i = find(label);
    if (i < 0) throw std::out_of_range("unknown variable " + label);
    return i;
}

int Monomial::total() const {
    int s = 0;
    for (auto x : e) s += x;
    return s;
}

size_t MonoHash::operator()(const Monomial& m) const {
    uint64_t h = 1469598103934665603ULL ^ m.deg;
    const uint64_t* p = reinterpret_cast<const uint64_t*>(m.e.data());
    for (int i = 0; i < kMaxVars / 8; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
        h ^= h >> 29;
    }
    return h;
}

Monomial mono_var(const VariableTable& t, int v, int power) {
    Monomial m;
    m.e[v] = (uint8_t)power;
    m.deg = (uint16_t)(t.deg(v) * power);
    return m;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) {
        int s = a.e[i] + b.e[i];
        if (s > 255) throw std::overflow_error("exponent overflow");
        m.e[i] = (uint8_t)s;
    }
    m.deg = a.deg + b.deg;
    return m;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
    if (a.deg > b.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.e[i] = b.e[i] - a.e[i];
    m.deg = b.deg - a.deg;
    return m;
}

Monomial mono_lcm(const VariableTable& t, const Monomial& a, const Monomial& b) {
    Monomial m;
    int deg = 0;
    for (int i = 0; i < kMaxVars; ++i) {
        m.e[i] = std::max(a.e[i], b.e[i]);
        if (m.e[i]) deg += m.e[i] * t.deg(i);
    }
    m.deg = (uint16_t)deg;
    return m;
}

bool mono_coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

int mono_weight(const Monomial& m, const std::function<int(int)>& w) {
    int s = 0;
    for (int i = 0; i < kMaxVars; ++i)
        if (m.e[i]) s += m.e[i] * w(i);
    return s;
}

std::string mono_str(const VariableTable& t, const Monomial& m) {
    if (m.is_one()) return "1";
    std::string s;
    for (int i = 0; i < t.size(); ++i) {
        if (!m.e[i]) continue;
        if (!s.empty()) s += '*';
        s += t[i].label;
        if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
    }
    return s;
}

Polynomial::Polynomial(TablePtr t, const Q& constant) : t_(std::move(t)) {
    if (sgn(constant) != 0) terms_.push_back({Monomial{}, constant});
}

Polynomial Polynomial::var(TablePtr t, int v, const Q& c) {
    Monomial m = mono_var(*t, v);
    return mono(std::move(t), m, c);
}

Polynomial Polynomial::mono(TablePtr t, const Monomial& m, const Q& c) {
    Polynomial p(std::move(t));
    if (sgn(c) != 0) p.terms_.push_back({m, c});
    return p;
}

Polynomial Polynomial::from_terms(TablePtr t, std::vector<Term> terms) {
    Polynomial p(std::move(t));
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return mono_greater(a.m, b.m); });
    for (auto& tm : terms) {
        if (!p.terms_.empty() && p.terms_.back().m == tm.m) {
            p.terms_.back().c += tm.c;
            continue;
        }
        if (!p.terms_.empty() && sgn(p.terms_.back().c) == 0) p.terms_.pop_back();
        p.terms_.push_back(std::move(tm));
    }
    if (!p.terms_.empty() && sgn(p.terms_.back().c) == 0) p.terms_.pop_back();
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (auto& t : terms_) d = std::max<int>(d, t.m.deg);
    return d;
}

bool Polynomial::homogeneous() const {
    for (auto& t : terms_)
        if (t.m.deg != terms_.front().m.deg) return false;
    return true;
}

Q Polynomial::coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& a, const Monomial& b) { return mono_greater(a.m, b); });
    if (it != terms_.end() && it->m == m) return it->c;
    return 0;
}

Q Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
    return 0;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r(t_ ? t_ : o.t_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && mono_greater(terms_[i].m, o.terms_[j].m))) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || mono_greater(o.terms_[j].m, terms_[i].m)) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Q c = terms_[i].c + o.terms_[j].c;
            if (sgn(c) != 0) r.terms_.push_back({terms_[i].m, c});
            ++i, ++j;
        }
    }
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Q& c) const {
    if (sgn(c) == 0) return Polynomial(t_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.c *= c;
    return r;
}

Polynomial Polynomial::mul_mono(const Monomial& m, const Q& c) const {
    Polynomial r(t_);
    if (sgn(c) == 0) return r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({mono_mul(t.m, m), t.c * c});
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    TablePtr t = t_ ? t_ : o.t_;
    if (is_zero() || o.is_zero()) return Polynomial(t);
    if (o.size() == 1) return mul_mono(o.lead().m, o.lead().c);
    if (size() == 1) return o.mul_mono(lead().m, lead().c);
    std::unordered_map<Monomial, Q, MonoHash> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (auto& a : terms_)
        for (auto& b : o.terms_) acc[mono_mul(a.m, b.m)] += a.c * b.c;
    std::vector<Term> v;
    v.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (sgn(c) != 0) v.push_back({m, c});
    return from_terms(t, std::move(v));
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

Polynomial Polynomial::homogeneous_part(int D) const {
    Polynomial r(t_);
    for (auto& t : terms_)
        if (t.m.deg == D) r.terms_.push_back(t);
    return r;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return *this * Q(1 / lead().c);
}

Polynomial Polynomial::pow(int n) const {
    Polynomial r(t_, 1), b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

Polynomial Polynomial::derive(const std::function<Polynomial(int)>& on_var) const {
    std::unordered_map<int, Polynomial> img;
    std::vector<Term> out;
    for (auto& t : terms_) {
        for (int v = 0; v < kMaxVars; ++v) {
            if (!t.m.e[v]) continue;
            auto it = img.find(v);
            if (it == img.end()) it = img.emplace(v, on_var(v)).first;
            if (it->second.is_zero()) continue;
            Monomial rest = t.m;
            rest.e[v] -= 1;
            rest.deg -= t_->deg(v);
            Q c = t.c * t.m.e[v];
            for (auto& s : it->second.terms_) out.push_back({mono_mul(rest, s.m), c * s.c});
        }
    }
    return from_terms(t_, std::move(out));
}

Polynomial Polynomial::substitute(const std::function<Polynomial(int)>& on_var) const {
    std::unordered_map<int, std::vector<Polynomial>> powers;
    TablePtr target;
    Polynomial result;
    bool init = false;
    for (auto& t : terms_) {
        Polynomial p;
        bool first = true;
        for (int v = 0; v < kMaxVars; ++v) {
            if (!t.m.e[v]) continue;
            auto& pw = powers[v];
            if (pw.empty()) pw.push_back(on_var(v));
            while ((int)pw.size() < t.m.e[v]) pw.push_back(pw.back() * pw.front());
            const Polynomial& f = pw[t.m.e[v] - 1];
            if (!target) target = f.table();
            p = first ? f : p * f;
            first = false;
        }
        if (first) {
            if (!target) target = t_;
            p = Polynomial(target, t.c);
        } else {
            p = p * t.c;
        }
        if (!init) {
            result = p;
            init = true;
        } else {
            result += p;
        }
    }
    if (!init) return Polynomial(t_);
    return result;
}

Polynomial Polynomial::rename(TablePtr to) const {
    std::vector<Term> v;
    for (auto& t : terms_) {
        Monomial m;
        for (int i = 0; i < kMaxVars; ++i) {
            if (!t.m.e[i]) continue;
            int j = to->index((*t_)[i].label);
            m.e[j] = t.m.e[i];
            m.deg += t.m.e[i] * to->deg(j);
        }
        v.push_back({m, t.c});
    }
    return from_terms(std::move(to), std::move(v));
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& t : terms_) {
        Q c = t.c;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        first = false;
        if (t.m.is_one()) {
            s += qstr(c);
        } else {
            if (c != 1) s += qstr(c) + "*";
            s += mono_str(*t_, t.m);
        }
    }
    return s;
}

Polynomial Polynomial::parse(TablePtr t, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace((unsigned char)ch)) s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial text");
    std::vector<Term> terms;
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string body = s.substr(i, j - i);
        if (body.empty()) throw std::invalid_argument("bad polynomial text: " + text);
        Term tm{Monomial{}, Q(sign)};
        std::stringstream ss(body);
        std::string f;
        while (std::getline(ss, f, '*')) {
            if (f.empty()) throw std::invalid_argument("bad factor in: " + text);
            if (std::isdigit((unsigned char)f[0])) {
                tm.c *= qparse(f);
                continue;
            }
            int e = 1;
            auto caret = f.find('^');
            if (caret != std::string::npos) {
                e = std::stoi(f.substr(caret + 1));
                f = f.substr(0, caret);
            }
            int v = t->index(f);
            tm.m = mono_mul(tm.m, mono_var(*t, v, e));
        }
        terms.push_back(tm);
        i = j;
    }
    return from_terms(std::move(t), std::move(terms));
}

static void enum_rec(const VariableTable& t, const std::vector<int>& vars, size_t pos, int left,
                     Monomial& cur, std::vector<Monomial>& out) {
    if (left == 0) {
        out.push_back(cur);
        return;
    }
    if (pos == vars.size()) return;
    int v = vars[pos];
    int d = t.deg(v);
    for (int e = left / d; e >= 0; --e) {
        cur.e[v] = (uint8_t)e;
        cur.deg += e * d;
        enum_rec(t, vars, pos + 1, left - e * d, cur, out);
        cur.deg -= e * d;
    }
    cur.e[v] = 0;
}

std::vector<Monomial> monomials_of_degree(const VariableTable& t, int D, const std::vector<int>& vars) {
    if (D < 0) throw std::invalid_argument("negative degree");
    std::vector<Monomial> out;
    Monomial cur;
    enum_rec(t, vars, 0, D, cur, out);
    std::sort(out.begin(), out.end(), MonoGreater());
    return out;
}

std::vector<Monomial> monomials_of_degree(const VariableTable& t, int D) {
    std::vector<int> vars(t.size());
    for (int i = 0; i < t.size(); ++i) vars[i] = i;
    return monomials_of_degree(t, D, vars);
}

std::vector<long long> free_series(const std::vector<int>& degrees, int D) {
    std::vector<long long> s(D + 1, 0);
    s[0] = 1;
    for (int d : degrees)
        for (int k = d; k <= D; ++k) s[k] += s[k - d];
    return s;
}

}  // namespace taut
