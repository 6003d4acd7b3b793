#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace taut {

using Q = mpq_class;

// Canonical n/d; mpq_class(n, d) leaves the fraction unreduced.
inline Q frac(long n, long d) { return Q(n) / d; }
std::string qstr(const Q& q);
Q qparse(const std::string& s);

constexpr int kMaxVars = 64;

struct VarInfo {
    std::string label;
    int deg;
    int chern;
};

class VariableTable {
public:
    VariableTable() = default;
    explicit VariableTable(std::vector<VarInfo> vars);

    int size() const { return (int)vars_.size(); }
    const VarInfo& operator[](int i) const { return vars_[i]; }
    int deg(int i) const { return vars_[i].deg; }
    int find(const std::string& label) const;  // -1 if absent
    int index(const std::string& label) const;
    const std::vector<VarInfo>& vars() const { return vars_; }

private:
    std::vector<VarInfo> vars_;
    std::unordered_map<std::string, int> by_label_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

// Grevlex over the table order; the first variable is the smallest.
struct Monomial {
    std::array<uint8_t, kMaxVars> e{};
    uint16_t deg = 0;

    bool is_one() const { return deg == 0; }
    bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
    int total() const;
};

// true when a > b
inline bool mono_greater(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg > b.deg;
    for (int i = 0; i < kMaxVars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
}
inline int mono_cmp(const Monomial& a, const Monomial& b) {
    if (a == b) return 0;
    return mono_greater(a, b) ? 1 : -1;
}

struct MonoGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_greater(a, b); }
};

struct MonoHash {
    size_t operator()(const Monomial& m) const;
};

Monomial mono_var(const VariableTable& t, int v, int power = 1);
Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial mono_div(const Monomial& b, const Monomial& a);   // b / a, requires a | b
Monomial mono_lcm(const VariableTable& t, const Monomial& a, const Monomial& b);
bool mono_coprime(const Monomial& a, const Monomial& b);
int mono_weight(const Monomial& m, const std::function<int(int)>& w);
std::string mono_str(const VariableTable& t, const Monomial& m);

struct Term {
    Monomial m;
    Q c;
};

// Terms sorted strictly descending, no zero coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(TablePtr t) : t_(std::move(t)) {}
    Polynomial(TablePtr t, const Q& constant);
    static Polynomial var(TablePtr t, int v, const Q& c = 1);
    static Polynomial mono(TablePtr t, const Monomial& m, const Q& c = 1);
    static Polynomial from_terms(TablePtr t, std::vector<Term> terms);  // sorts and merges
    static Polynomial parse(TablePtr t, const std::string& s);

    const TablePtr& table() const { return t_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const Term& lead() const { return terms_.front(); }
    int degree() const;  // max degree, -1 for zero
    bool homogeneous() const;
    Q coeff(const Monomial& m) const;
    Q constant_term() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Q& c) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial mul_mono(const Monomial& m, const Q& c) const;
    Polynomial homogeneous_part(int D) const;
    Polynomial monic() const;
    Polynomial pow(int n) const;

    // Derivation defined by its values on variables (missing entries act as 0).
    Polynomial derive(const std::function<Polynomial(int)>& on_var) const;
    // Algebra homomorphism defined by its values on variables.
    Polynomial substitute(const std::function<Polynomial(int)>& on_var) const;
    Polynomial rename(TablePtr to) const;  // same labels, other table

    std::string str() const;

    std::vector<Term>& mutable_terms() { return terms_; }

private:
    TablePtr t_;
    std::vector<Term> terms_;
};

std::vector<Monomial> monomials_of_degree(const VariableTable& t, int D,
                                          const std::vector<int>& vars);
std::vector<Monomial> monomials_of_degree(const VariableTable& t, int D);
// Coefficients of prod 1/(1-q^deg) through D, by series expansion.
std::vector<long long> free_series(const std::vector<int>& degrees, int D);

}  // namespace taut
