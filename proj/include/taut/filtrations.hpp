#pragma once

#include <map>

#include "taut/bps.hpp"
#include "taut/ring.hpp"

namespace taut {

// dims[{k, m}] = dim F_k H^m, m the cohomological degree (twice the q-degree).
struct FiltrationTable {
    std::map<std::pair<int, int>, int> dims;
    int kmax = 0;  // F_kmax is everything
    int mmax = 0;

    int at(int k, int m) const;
    int graded(int k, int m) const { return at(k, m) - at(k - 1, m); }
    bool graded_equal(const FiltrationTable& o) const;
};

// C_k spanned by monomials in the c_k(j) of Chern weight sum k_i <= k, through degree mmax/2.
FiltrationTable chern_filtration(Ring& r, int qmax = -1);

// Subspaces as echelon rows in standard-monomial coordinates, and the formula
// P_k H^m = sum_{i>=1} ker(xi^{b+k-m+i}) cap im(xi^{i-1}).
// Works on any graded ring whose top degree is dim; xi is a reduced element of degree 1.
FiltrationTable perverse_filtration(Ring& r, const Polynomial& xi, int b, int dim);
FiltrationTable perverse_filtration(Ring& r);  // xi = c_0(2), b = d(d+3)/2

struct PCVerdict {
    bool ok = true;
    int k = 0, m = 0;  // first mismatch
    FiltrationTable perverse, chern;
};
PCVerdict pc_check(Ring& r);
// C_{2l-1} cap H^{2(b+l)} = 0 for 1 <= l <= lmax.
bool vanishing_window_check(Ring& r, int lmax);

// Laurent polynomial in (q, t), integer exponents.
struct Bivariate {
    std::map<std::pair<int, int>, Q> c;

    Q at(int a, int b) const;
    void add(int a, int b, const Q& x);
    bool is_zero() const { return c.empty(); }
    bool symmetric() const;  // under q -> 1/q and t -> 1/t separately
    bool operator==(const Bivariate& o) const { return c == o.c; }
    std::string str() const;
};

Bivariate omega(int d, const FiltrationTable& perverse);

// N[{2jL, 2jR}]
std::map<std::pair<int, int>, long> gv_extract(const Bivariate& omega);
Bivariate gv_reconstruct(const std::map<std::pair<int, int>, long>& N);
// n_{g,d} from Omega(-q, 1) = sum_g n_g (q^{1/2} + q^{-1/2})^{2g}
std::map<int, long> maulik_toda(const Bivariate& omega);

// Coefficients of Q^0..Q^D in PE(pref * sum_d Omega_d Q^d), q-exponents truncated at qcut.
// With both_factors the prefactor is -q/((1-qt)(1-q/t)), otherwise -q/(1-qt).
std::vector<Bivariate> gv_pe(const std::vector<Bivariate>& omegas, int qcut, bool both_factors);
std::vector<Bivariate> gvpt_rhs(const std::vector<Bivariate>& omegas, int qcut);

// Q^d coefficient of the one-factor identity, re-centered so the class 1 sits at (0,0):
// dims[{i, i+j}] of gr_i (cumulative table returned).
FiltrationTable stacky_perverse_numbers(const std::vector<Bivariate>& omegas, int d, int qmax);

// Refined PT data: lines "d n : e1/c1 e2/c2 ...", t-exponent/coefficient pairs.
// Compares Q^d q^n coefficients of gvpt_rhs; returns a description of the first mismatch or "".
std::string gvpt_compare(const std::vector<Bivariate>& omegas, const std::string& pt_text, int qcut);

}  // namespace taut
