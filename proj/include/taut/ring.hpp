#pragma once

#include <map>

#include "taut/descendent.hpp"
#include "taut/ideal.hpp"

namespace taut {

// Graded quotient Q[gens]/I together with expressions E_v of every other c-variable in terms
// of the generators. Elements are carried as polynomials in the generators in normal form.
class Ring {
public:
    Ring(ToppType a, Kind kind, int dmax);
    Ring(ToppType a, Kind kind, int dmax, std::vector<int> gens);

    static std::vector<int> default_gens(const ToppType& a, Kind kind, int dmax);

    const ToppType& type() const { return a_; }
    Kind kind() const { return kind_; }
    int dmax() const { return dmax_; }
    const TablePtr& table() const { return t_; }
    const std::vector<int>& gens() const { return gens_; }
    bool is_gen(int v) const { return is_gen_[v]; }
    Ideal& ideal() { return ideal_; }
    const Ideal& ideal() const { return ideal_; }
    std::string label() const;

    bool eliminated(int v) const { return elim_.count(v) > 0; }
    const Polynomial& elim(int v) const { return elim_.at(v); }
    const std::map<int, Polynomial>& elims() const { return elim_; }
    void set_elim(int v, const Polynomial& e);
    // non-generators of degree n still lacking an expression
    std::vector<int> unknowns(int n) const;

    // Full reduction: every variable must be a generator or eliminated.
    Polynomial reduce(const Polynomial& p);
    // Keeps un-eliminated variables that occur as whole (linear) monomials.
    Polynomial reduce_partial(const Polynomial& p);
    Polynomial mul(const Polynomial& a, const Polynomial& b);  // of reduced elements
    Polynomial nf(const Polynomial& p) { return ideal_.nf_poly(p); }

    // Adds reduced relations; returns how many enlarged the ideal.
    int add_relations(const std::vector<Polynomial>& rels);
    int hilbert(int D) { return ideal_.hilbert(D); }
    std::vector<int> hilbert_function(int D) { return ideal_.hilbert_function(D); }
    int top_degree();  // largest D <= dmax with nonzero quotient

private:
    const Polynomial& reduce_mono(const Monomial& m);

    ToppType a_;
    Kind kind_;
    int dmax_;
    TablePtr t_;
    std::vector<int> gens_;
    std::vector<char> is_gen_;
    Ideal ideal_;
    std::map<int, Polynomial> elim_;
    std::unordered_map<Monomial, Polynomial, MonoHash> mono_cache_;
    int cache_version_ = -1;
};

}  // namespace taut
