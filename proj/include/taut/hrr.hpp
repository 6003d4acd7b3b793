#pragma once

#include "taut/ring.hpp"

namespace taut {

// kappa_m with log(x / (1 - e^{-x})) = sum_{m>=1} kappa_m x^m.
std::vector<Q> todd_kappa(int n);

// ch_m(T_M), m = 0..dim, as reduced elements of a complete space ring.
std::vector<Polynomial> tangent_character(Ring& r);
// exp(sum_m kappa_m m! ch_m), graded by degree, truncated at the ring's dmax.
std::vector<Polynomial> todd(Ring& r, const std::vector<Polynomial>& ch);

// Integration on a Gorenstein space ring, normalized by the integral of the Todd class.
class Integral {
public:
    explicit Integral(Ring& r);
    Q operator()(const Polynomial& reduced) const;
    const Polynomial& point_class() const { return point_; }
    const std::vector<Polynomial>& todd_class() const { return td_; }

private:
    Ring& r_;
    int top_;
    Q scale_;  // integral of the top standard monomial
    Polynomial point_;
    std::vector<Polynomial> td_;
};

// chi(M, m c_0(2)) = integral of e^{m c_0(2)} td(M); throws if not an integer.
Q euler_characteristic(const Integral& I, Ring& r, int m);

}  // namespace taut
