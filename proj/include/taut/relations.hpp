#pragma once

#include "taut/ring.hpp"
#include "taut/virasoro.hpp"

namespace taut {

// Admissible twist for Mumford relations: chi* = sign*chi + k*d >= g.
struct MRTwist {
    int sign;
    int k;
    int chi_star;
    std::string str() const;
};

// Twists with chi* < jmax (those contributing relations up to degree jmax).
std::vector<MRTwist> mr_twists(const ToppType& a, int jmax);
MRTwist mr_twist(const ToppType& a, int sign, int k);  // throws if not admissible

// (-1)^{m-1}(m-1)! ch_m(td) realized at chi* and transported to the c-coordinates of a.
Polynomial mr_generator(const TablePtr& t, const ToppType& a, const MRTwist& tw, int m, Kind kind);
// A_0..A_jmax of the exponential, in the free c-ring.
std::vector<Polynomial> mr_classes(const TablePtr& t, const ToppType& a, const MRTwist& tw, int jmax, Kind kind);

struct RelationBatch {
    std::string family;  // MR, GMR, BR
    std::string tag;
    std::vector<Polynomial> rels;
};

RelationBatch mumford_relations(const TablePtr& t, const ToppType& a, int sign, int k, int Dtarget,
                                Kind kind = Kind::Stack);
RelationBatch primitive_mr(const TablePtr& t, const ToppType& a, int Dtarget, Kind kind = Kind::Stack);

// Products of b+1 classes ch_i(H^2) = c_{i-1}(2) of total degree n.
std::vector<Polynomial> base_relations(const TablePtr& t, const ToppType& a, int n);
Polynomial primitive_br(const TablePtr& t, const ToppType& a);

// MR classes A_j reduced in a ring, degree by degree. at(j) may be called once every
// variable of degree < j has an expression; unknowns of degree j stay linear.
class MRStream {
public:
    MRStream(MRTwist tw) : tw_(tw) {}
    const MRTwist& twist() const { return tw_; }
    Polynomial at(Ring& r, int j);

private:
    MRTwist tw_;
    std::vector<Polynomial> A_, X_;
    int final_ = 0;  // A_i, X_i fully reduced for i <= final_
};

// The slope window chi'/d' < chi/d < chi'/d' + 3 together with (d',chi') < (d,chi).
bool gmr_window(const ToppType& a, const ToppType& ap);
bool precedes(const ToppType& ap, const ToppType& a);
// Partners in the order used for injection; spaces_only keeps gcd(d',chi') = 1.
std::vector<ToppType> gmr_partners(const ToppType& a, bool spaces_only = true, int max_dprime = 0);

// The class C in D_alpha (x) H*(right ring), as left polynomials indexed by the standard
// monomials of the right ring. The right ring is the registry representative of ap,
// reached by the identity or by the sign map when sign_map is set.
class GMRStream {
public:
    GMRStream(ToppType a, ToppType ap, Ring& right, bool sign_map);
    const ToppType& partner() const { return ap_; }
    int qmax() const { return qmax_; }
    int rank() const { return a_.d * ap_.d; }
    const std::vector<Polynomial>& cell(Ring& left, int p, int q);
    // All GMR relations of left degree n (or only the primitive ones).
    std::vector<Polynomial> relations(Ring& left, int n, bool primitive);

private:
    void finalize(Ring& left, int p);

    ToppType a_, ap_;
    Ring& right_;
    bool sign_map_;
    int qmax_;
    std::vector<std::vector<int>> dimR_;
    // XR_[b][jl]: sum over Kunneth terms with that jl of coeff * ch_b(gamma^R), over std(b)
    std::vector<std::array<SparseRow, 3>> XR_;
    std::vector<std::array<Polynomial, 3>> XL_;
    std::vector<std::vector<std::vector<Polynomial>>> cells_;  // [p][q][s]
    int final_ = 0;
};

// Appendix identities.
Q falling(const Q& a, int m);
bool falling_factorial_identity(const Q& a, const Q& b, int m);

struct QuadraticCheck {
    bool ok;
    int terms_checked;
    std::string residual;  // first nonzero residual, empty if ok
};
// partial_n(C) against the closed form, through total degree Dmax in a doubled free c-ring.
QuadraticCheck quadratic_identity_check(const ToppType& a, const ToppType& ap, int n, int Dmax);
// (id (x) R_{-1}) C_j = -(j - 1 - d d') C_{j-1} and the same for R_{-1} (x) id with opposite sign.
QuadraticCheck r_minus1_identity_check(const ToppType& a, const ToppType& ap, int Dmax);

}  // namespace taut
