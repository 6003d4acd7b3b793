#include <doctest.h>

#include <random>

#include "taut/ideal.hpp"

using namespace taut;

namespace {

TablePtr table(std::vector<std::pair<std::string, int>> v) {
    std::vector<VarInfo> vars;
    for (auto& [l, d] : v) vars.push_back({l, d, 0});
    return std::make_shared<const VariableTable>(vars);
}

TablePtr m20() {
    return table({{"c0(2)", 1}, {"c1(1)", 1}, {"c2(0)", 1}, {"c1(2)", 2}, {"c2(1)", 2}, {"c3(0)", 2}});
}

std::vector<int> all(const TablePtr& t) {
    std::vector<int> v(t->size());
    for (int i = 0; i < t->size(); ++i) v[i] = i;
    return v;
}

Q rq(std::mt19937& rng) {
    int n = (int)(rng() % 9) - 4;
    int d = 1 + (int)(rng() % 3);
    return Q(n) / d;
}

Polynomial P(const TablePtr& t, const std::string& s) { return Polynomial::parse(t, s); }

}  // namespace

TEST_CASE("rational arithmetic stays in lowest terms") {
    Q a(2, 4);
    a.canonicalize();
    CHECK(qstr(a) == "1/2");
    CHECK(qstr(qparse("6/-4")) == "-3/2");
    CHECK(qstr(Q(1, 3) + Q(1, 6)) == "1/2");
}

TEST_CASE("monomials_of_degree counts") {
    auto t = table({{"x", 1}, {"y", 1}, {"z", 2}});
    CHECK(monomials_of_degree(*t, 0).size() == 1);
    auto d2 = monomials_of_degree(*t, 2);
    REQUIRE(d2.size() == 4);
    CHECK(mono_str(*t, d2[0]) == "z");  // single high variable outranks products
    auto f = m20();
    std::vector<size_t> want = {1, 3, 9, 19, 39, 69, 119};
    for (int D = 0; D <= 6; ++D) CHECK(monomials_of_degree(*f, D).size() == want[D]);
}

TEST_CASE("monomial count equals product series on random tables") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + rng() % 6;
        std::vector<std::pair<std::string, int>> v;
        std::vector<int> degs;
        for (int i = 0; i < n; ++i) {
            int d = 1 + rng() % 3;
            v.push_back({"v" + std::to_string(i), d});
            degs.push_back(d);
        }
        auto t = table(v);
        auto s = free_series(degs, 9);
        for (int D = 0; D <= 9; ++D) CHECK((long long)monomials_of_degree(*t, D).size() == s[D]);
    }
}

TEST_CASE("canonical text form") {
    auto t = m20();
    auto r1 = P(t, "c2(0) - 1/8*c0(2)");
    CHECK(r1.str() == "c2(0) - 1/8*c0(2)");
    CHECK(P(t, "-1/8*c0(2) + c2(0)") == r1);
    CHECK(P(t, "2*c3(0) - 1/4*c1(2)").str() == "2*c3(0) - 1/4*c1(2)");
    auto q = P(t, "c0(2)^2*c2(0) - 3*c1(1)*c0(2)^2 + 7/3");
    CHECK(P(t, q.str()) == q);
    CHECK((r1 * r1).str() == "c2(0)^2 - 1/4*c0(2)*c2(0) + 1/64*c0(2)^2");
}

TEST_CASE("rref examples") {
    auto t = table({{"x", 1}, {"y", 1}});
    auto b = rref({P(t, "x - 2*y"), P(t, "2*x - 4*y")}, 1);
    CHECK(b.rank == 1);
    CHECK(b.basis[0] == P(t, "y - 1/2*x"));
    CHECK(rref({}, 1).rank == 0);
    CHECK_THROWS(rref({P(t, "x^2 - y")}, 2));

    auto f = m20();
    auto r1 = P(f, "c2(0) - 1/8*c0(2)");
    std::vector<Polynomial> rows;
    for (auto& m : monomials_of_degree(*f, 1)) rows.push_back(r1.mul_mono(m, 1));
    auto s = rref(rows, 2);
    CHECK(s.rank == 3);
    Ideal I(f, all(f), 6);
    I.add(r1);
    CHECK(I.slice_rank(2) == 3);
}

TEST_CASE("rref is a projection and preserves span") {
    auto t = table({{"x", 1}, {"y", 1}, {"z", 1}, {"w", 2}});
    std::mt19937 rng(3);
    auto mons = monomials_of_degree(*t, 2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Polynomial> rows;
        for (int r = 0; r < 5; ++r) {
            std::vector<Term> terms;
            for (auto& m : mons)
                if (rng() % 2) terms.push_back({m, rq(rng)});
            rows.push_back(Polynomial::from_terms(t, terms));
        }
        auto a = rref(rows, 2);
        auto b = rref(a.basis, 2);
        CHECK(a.rank == b.rank);
        for (int i = 0; i < a.rank; ++i) CHECK(a.basis[i] == b.basis[i]);
        for (auto& r : rows) {
            auto big = a.basis;
            big.push_back(r);
            CHECK(rref(big, 2).rank == a.rank);
        }
        for (int i = 1; i < a.rank; ++i) CHECK(mono_greater(a.basis[i - 1].lead().m, a.basis[i].lead().m));
    }
}

TEST_CASE("ideal slices and normal forms") {
    auto h = table({{"h", 1}});
    Ideal Ih(h, all(h), 5);
    Ih.add(P(h, "h^3"));
    CHECK(Ih.slice(3).rank == 1);

    auto ab = table({{"a", 1}, {"b", 1}});
    Ideal I(ab, all(ab), 6);
    I.add(P(ab, "a^3 + 3*a^2*b + 3*a*b^2 + b^3"));
    CHECK(I.slice(4).rank == 2);
    CHECK(I.hilbert_function(5) == std::vector<int>{1, 2, 3, 3, 3, 3});

    auto t = table({{"c0(2)", 1}, {"c2(0)", 1}});
    Ideal J(t, all(t), 4);
    J.add(P(t, "c0(2) - 2*c2(0)"));
    // c2(0) leads: index 0 is the smallest variable
    CHECK(J.nf_poly(P(t, "c2(0)")) == P(t, "1/2*c0(2)"));
    CHECK(J.nf_poly(P(t, "c0(2)")) == P(t, "c0(2)"));
    CHECK(J.nf_poly(Polynomial(t)).is_zero());

    auto c = table({{"c0(2)", 1}});
    Ideal K(c, all(c), 5);
    K.add(P(c, "c0(2)^3"));
    CHECK(K.nf_poly(P(c, "c0(2)^3")).is_zero());
    CHECK(K.hilbert_function(4) == std::vector<int>{1, 1, 1, 0, 0});
}

TEST_CASE("hilbert functions of the free ring and after r1") {
    auto f = m20();
    Ideal F(f, all(f), 6);
    CHECK(F.hilbert_function(6) == std::vector<int>{1, 3, 9, 19, 39, 69, 119});
    Ideal I(f, all(f), 6);
    I.add(P(f, "c2(0) - 1/8*c0(2)"));
    CHECK(I.hilbert_function(6) == std::vector<int>{1, 2, 6, 10, 20, 30, 50});
    I.add(P(f, "-1/4*c1(2) + 2*c3(0)"));
    CHECK(I.hilbert_function(6) == std::vector<int>{1, 2, 5, 8, 14, 20, 30});
}

TEST_CASE("normal form is linear, idempotent, and differs by ideal elements") {
    auto f = m20();
    Ideal I(f, all(f), 7);
    I.add(P(f, "c2(0) - 1/8*c0(2)"));
    I.add(P(f, "-1/4*c1(2) + 2*c3(0)"));
    I.add(P(f, "c1(1)*c2(0)^4 - 2*c2(0)^3*c3(0)"));
    std::mt19937 rng(11);
    for (int D = 3; D <= 7; ++D) {
        auto mons = monomials_of_degree(*f, D);
        auto slice = I.slice(D);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Term> ta, tb;
            for (auto& m : mons) {
                if (rng() % 3 == 0) ta.push_back({m, rq(rng)});
                if (rng() % 3 == 0) tb.push_back({m, rq(rng)});
            }
            auto a = Polynomial::from_terms(f, ta), b = Polynomial::from_terms(f, tb);
            auto na = I.nf_poly(a), nb = I.nf_poly(b);
            CHECK(I.nf_poly(a + b * Q(3)) == na + nb * Q(3));
            CHECK(I.nf_poly(na) == na);
            CHECK(I.contains(a - na));
            auto rows = slice.basis;
            rows.push_back(a - na);
            if (!(a - na).is_zero()) CHECK(rref(rows, D).rank == slice.rank);
        }
        // slice closed under multiplication by variables from the previous degree
        for (auto& g : I.slice(D - 1).basis)
            for (int v = 0; v < 3; ++v) CHECK(I.contains(g * Polynomial::var(f, v)));
    }
}

TEST_CASE("out of order generators and idempotence") {
    auto f = m20();
    Ideal I(f, all(f), 6);
    I.add(P(f, "c1(1)*c2(0)^4 - 2*c2(0)^3*c3(0)"));
    auto h1 = I.hilbert_function(6);
    I.add(P(f, "c2(0) - 1/8*c0(2)"));
    I.add(P(f, "-1/4*c1(2) + 2*c3(0)"));
    auto h2 = I.hilbert_function(6);
    Ideal J(f, all(f), 6);
    J.add(P(f, "c2(0) - 1/8*c0(2)"));
    J.add(P(f, "-1/4*c1(2) + 2*c3(0)"));
    J.add(P(f, "c1(1)*c2(0)^4 - 2*c2(0)^3*c3(0)"));
    CHECK(J.hilbert_function(6) == h2);
    CHECK(h1 != h2);
    for (int D = 0; D <= 6; ++D) {
        auto a = I.slice(D), b = J.slice(D);
        REQUIRE(a.rank == b.rank);
        for (int i = 0; i < a.rank; ++i) CHECK(a.basis[i] == b.basis[i]);
        for (auto& g : a.basis) CHECK(!I.add(g));
    }
}

TEST_CASE("printed rank two relations give the printed hilbert function") {
    auto f = m20();
    Ideal I(f, all(f), 8);
    I.add(P(f, "c2(0) - 1/8*c0(2)"));
    I.add(P(f, "-1/4*c1(2) + 2*c3(0)"));
    I.add(P(f, "c1(1)*c2(0)^4 - 2*c2(0)^3*c3(0)"));
    I.add(P(f, "c1(1)^2*c2(0)^3 + 16*c2(0)^5 + 2*c2(0)^3*c2(1) - 6*c1(1)*c2(0)^2*c3(0) + 6*c2(0)*c3(0)^2"));
    CHECK(I.hilbert_function(6) == std::vector<int>{1, 2, 5, 8, 14, 18, 26});
}
