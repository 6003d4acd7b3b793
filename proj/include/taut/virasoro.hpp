#pragma once

#include "taut/descendent.hpp"

namespace taut {

// Kunneth decomposition of the diagonal pushforward of td(P^2): coeff * H^jl (x) H^jr.
struct KunnethTerm {
    int jl, jr;
    Q coeff;
};
const std::vector<KunnethTerm>& kunneth();

Q rising(const Q& x, int n);  // x(x+1)...(x+n-1)
Q factorial(int n);

// R_n, n >= -1, as a derivation on c-coordinates.
Polynomial apply_R(int n, const Polynomial& p, const ToppType& a);
// T_n realized in c-coordinates (stack side, c_1(1) kept).
Polynomial T_element(int n, const TablePtr& t, const ToppType& a);
Polynomial apply_L(int n, const Polynomial& p, const ToppType& a);
Polynomial apply_R_delta(int n, const Polynomial& p, const ToppType& a);
Polynomial T_delta(int n, const TablePtr& t, const ToppType& a);
Polynomial apply_L_delta(int n, const Polynomial& p, const ToppType& a);
Polynomial apply_Lwt0(const Polynomial& p, const ToppType& a);

}  // namespace taut
