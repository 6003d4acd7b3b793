#pragma once

#include <string>

#include "taut/poly.hpp"

namespace taut {

enum class Kind { Stack, Space };

std::string kind_str(Kind k);
Kind parse_kind(const std::string& s);

struct ToppType {
    int d = 1;
    int chi = 0;

    int g() const { return (d - 1) * (d - 2) / 2; }
    int b() const { return d * (d + 3) / 2; }
    int dim_stack() const { return d * d; }
    int dim_space() const { return d * d + 1; }
    int dim(Kind k) const { return k == Kind::Stack ? dim_stack() : dim_space(); }
    Q slope() const { return frac(chi, d); }
    int gcd() const;
    // coefficient of H in the twist rho = (3/2 - chi/d) H
    Q r() const;
    std::string str() const;
    bool operator==(const ToppType& o) const { return d == o.d && chi == o.chi; }
};

// c_k(j) with q-degree n = k+j-1 >= 1; per degree the order is c_{n-1}(2), c_n(1), c_{n+1}(0).
TablePtr c_table(int D);
int c_index(int k, int j);  // position in c_table, -1 if the class has degree <= 0
std::string c_label(int k, int j);
inline int c_degree(int k, int j) { return k + j - 1; }
std::pair<int, int> c_kj(int index);  // inverse of c_index
int c11_index();

// The c-table plus a formal variable u of degree 1 (for the wt0[u] isomorphism).
TablePtr cu_table(int D);

// Integral of ch(alpha) * H^j, optionally for alpha twisted by e^rho.
Q chern_pairing(const ToppType& a, int j, bool twisted = false);

// c_k(j) as an element of the c-ring: the variable, or the boundary constant in degree <= 0.
Polynomial c_value(const TablePtr& t, const ToppType& a, int k, int j);

// Realization of ch_i(H^j) in c-coordinates of alpha. Space kind sets c_1(1) to 0.
Polynomial realize(const TablePtr& t, const ToppType& a, int i, int j, Kind kind = Kind::Stack);
// ch_i(td P^2) = ch_i(1) + 3/2 ch_i(H) + ch_i(H^2)
Polynomial realize_td(const TablePtr& t, const ToppType& a, int i, Kind kind = Kind::Stack);

Polynomial r_minus1(const Polynomial& p, const ToppType& a);
// sum_j (-1)^j/j! (c_1(1)/d)^j R_{-1}^j
Polynomial eta(const Polynomial& p, const ToppType& a);
Polynomial drop_c11(const Polynomial& p);
// duality transport: c_k(j) -> (-1)^k c_k(j)
Polynomial sign_transport(const Polynomial& p);

// wt0[u] <-> D_alpha, both on cu_table.
Polynomial phi(const Polynomial& p, const ToppType& a);
Polynomial phi_tilde(const Polynomial& p, const ToppType& a);

// Raw descendent symbols ch_i(H^j), i >= 1, degree i.
TablePtr ch_table(int D);
int ch_index(int i, int j);
// F_rho on raw symbols: ch_i(H^j) -> sum_t rho^t/t! ch_i(H^{j+t})
Polynomial f_rho_twist(const Polynomial& p, const Q& rho);
// c-polynomial -> raw symbols of D_alpha, via c_k(j) = F_rho(ch_{k+j-1}(H^j)).
Polynomial c_to_ch(const Polynomial& p, const TablePtr& chs, const ToppType& a);

}  // namespace taut
