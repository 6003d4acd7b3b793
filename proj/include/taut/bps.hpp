#pragma once

#include <map>
#include <vector>

#include "taut/poly.hpp"

namespace taut {

// Truncated Laurent series in q^{1/2}; keys are doubled exponents.
struct Laurent {
    std::map<int, Q> c;

    static Laurent monomial(int e2, const Q& x = 1);
    // sum_k h[k] q^k
    static Laurent from_integer_series(const std::vector<long>& h);
    static Laurent from_integer_series(const std::vector<int>& h);

    Q at(int e2) const;
    bool is_zero() const { return c.empty(); }
    int low() const;  // smallest doubled exponent; throws if zero
    Laurent truncated(int cut) const;
    Laurent shifted(int e2) const;
    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Q& x) const;
    bool operator==(const Laurent& o) const { return c == o.c; }
    std::string str() const;
    // coefficients of q^0..q^n; throws on half-integer exponents
    std::vector<Q> integer_coeffs(int n) const;
};

Laurent mul(const Laurent& a, const Laurent& b, int cut);
Laurent adams(const Laurent& a, int n);  // q^{1/2} -> q^{n/2}
Laurent geometric(int step2, int cut);    // 1/(1 - q^{step2/2})

// Series over the ray Z_{>=0} of a fixed slope: entry k is the coefficient of e^{k * primitive}.
using MonoidSeries = std::vector<Laurent>;

MonoidSeries pe(const MonoidSeries& f, int cut);
MonoidSeries plog(const MonoidSeries& g, int cut);

// Shifted series: (-q^{1/2})^{-dim} E.
Laurent shift_series(const Laurent& E, int dim);
Laurent unshift_series(const Laurent& Ebar, int dim);

// Stack side of the integrality identity along a ray. ie[k] is the shifted intersection
// Poincare series of the good moduli space of the k-th point (ie[0] ignored).
// Returns the shifted stack series, entries 1..K, exact below the doubled cut.
MonoidSeries stack_series(const MonoidSeries& ie, int cut);
// Inverse direction.
MonoidSeries space_series(const MonoidSeries& stack, int cut);

// Unshifted stack Poincare series of the degree-d point on slope p/r, q^0..q^n, from
// Hilbert functions of spaces in degrees r, 2r, .., d (given in that order).
std::vector<long> stack_poincare(int d, int r, const std::vector<std::vector<int>>& space_hilbert, int n);

// A = E * prod_{j=1}^m (1 - q^j): a polynomial with constant term 1, degree
// N = d^2 + m(m+1)/2 and leading coefficient (-1)^{m-1}; throws naming the failed check.
std::vector<long> structural_decompose(const std::vector<long>& E, int d, int m);

// Coefficients of prod_i 1/(1-q^{deg_i}) for 3 generators in each degree 1..d.
std::vector<long> free_stack_series(int d, int n);

}  // namespace taut
