#pragma once

#include <map>
#include <set>

#include "taut/linalg.hpp"

namespace taut {

// Homogeneous ideal in a weighted polynomial ring, computed degree by degree up to dmax.
// Internally a degree-truncated reduced basis (leading monomials tracked per degree, pair
// selection by the Gebauer-Moeller rules, each degree finished by one exact echelon pass).
// The public view is the per-degree echelon slice and the standard monomial basis.
class Ideal {
public:
    Ideal() = default;
    Ideal(TablePtr t, std::vector<int> vars, int dmax);

    const TablePtr& table() const { return t_; }
    const std::vector<int>& vars() const { return vars_; }
    int dmax() const { return dmax_; }
    int version() const { return version_; }

    // Queue a homogeneous generator. Returns false if it already lies in the ideal
    // (checked only when its degree is already complete).
    bool add(const Polynomial& p);
    bool contains(const Polynomial& p);
    void complete(int D);
    int complete_through() const { return complete_; }

    const std::vector<Monomial>& standard(int D);
    int std_index(int D, const Monomial& m);  // -1 if not standard
    int hilbert(int D);
    std::vector<int> hilbert_function(int D);
    int slice_rank(int D);

    // Normal forms in coordinates of standard(D).
    const SparseRow& nf_mono(const Monomial& m);
    DenseVec nf(const Polynomial& p);
    Polynomial nf_poly(const Polynomial& p);
    Polynomial to_poly(int D, const DenseVec& v);
    Polynomial to_poly(int D, const SparseRow& v);
    DenseVec mul_var(int v, int D, const DenseVec& x);  // x in degree D

    SliceBasis slice(int D);
    const std::vector<Polynomial>& generators() const { return gens_; }
    std::vector<Polynomial> basis_elements() const;  // active truncated basis

private:
    struct Pair {
        int i, j;
        Monomial lcm;
    };
    struct DegCache {
        bool std_valid = false;
        std::vector<Monomial> std;
        std::unordered_map<Monomial, int, MonoHash> index;
        std::unordered_map<Monomial, SparseRow, MonoHash> nf;
    };

    void check_vars(const Polynomial& p) const;
    void process_degree(int D);
    void insert_element(Polynomial g);
    void invalidate_from(int D);
    DegCache& cache(int D);
    SparseRow nf_terms(const std::vector<Term>& terms, const Monomial& mult, int D);

    TablePtr t_;
    std::vector<int> vars_;
    Monomial var_mask_;
    int dmax_ = 0;
    int complete_ = -1;
    int version_ = 0;
    std::vector<Polynomial> gens_;
    std::vector<Polynomial> gb_;
    std::vector<char> active_;
    std::map<int, std::vector<int>> lm_by_deg_;  // active element indices by LM degree
    std::map<int, std::vector<Pair>> pairs_;
    std::map<int, std::vector<Polynomial>> pending_;
    std::vector<DegCache> caches_;
};

}  // namespace taut
