#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "taut/filtrations.hpp"

using namespace taut;

namespace {

Ring& m32() {
    static std::unique_ptr<Ring> r = [] {
        BuildOptions o;
        BuildReport rep;
        return build_ring({3, 2}, Kind::Space, fixtures::small_registry(), o, rep);
    }();
    return *r;
}

std::vector<Bivariate> omegas(int D) {
    std::vector<Bivariate> om(D + 1);
    for (int d = 1; d <= D; ++d) om[d] = omega(d, perverse_filtration(fixtures::ring(d, d == 1 ? 0 : 1, Kind::Space)));
    return om;
}

}  // namespace

TEST_CASE("perverse oracle A: identity map") {
    auto& r = fixtures::ring(1, 0, Kind::Space);
    auto P = perverse_filtration(r, r.reduce(Polynomial::parse(r.table(), "c0(2)")), 2, 2);
    for (int m = 0; m <= 4; m += 2) {
        CHECK(P.at(-1, m) == 0);
        CHECK(P.at(0, m) == 1);
    }
}

TEST_CASE("perverse oracle B: P^1 x P^2 over P^2") {
    Ring r({2, 0}, Kind::Stack, 4, {c_index(0, 2), c_index(1, 1)});
    r.add_relations({Polynomial::parse(r.table(), "c1(1)^2"), Polynomial::parse(r.table(), "c0(2)^3")});
    REQUIRE(r.hilbert_function(4) == std::vector<int>{1, 2, 2, 1, 0});
    auto P = perverse_filtration(r, Polynomial::parse(r.table(), "c0(2)"), 2, 3);
    for (int j = 0; j <= 2; ++j) {
        CHECK(P.graded(0, 2 * j) == 1);
        CHECK(P.graded(2, 2 + 2 * j) == 1);
        CHECK(P.graded(1, 2 * j) == 0);
        CHECK(P.graded(1, 2 + 2 * j) == 0);
    }
    CHECK(P.graded(2, 0) == 0);
    CHECK(P.graded(0, 6) == 0);
}

TEST_CASE("chern filtration of small spaces") {
    auto& m10 = fixtures::ring(1, 0, Kind::Space);
    auto C = chern_filtration(m10);
    for (int m = 0; m <= 4; m += 2) CHECK(C.at(0, m) == 1);
    auto& m21 = fixtures::ring(2, 1, Kind::Space);
    auto C2 = chern_filtration(m21);
    for (int m = 0; m <= 10; m += 2) CHECK(C2.graded(0, m) == 1);
    auto P2 = perverse_filtration(m21);
    for (int m = 0; m <= 10; m += 2) CHECK(P2.graded(0, m) == 1);
}

TEST_CASE("P = C for spaces of degree at most three") {
    for (Ring* r : {&fixtures::ring(1, 0, Kind::Space), &fixtures::ring(2, 1, Kind::Space),
                    &fixtures::ring(3, 1, Kind::Space), &m32()}) {
        auto v = pc_check(*r);
        CHECK_MESSAGE(v.ok, r->label() << " first mismatch at k=" << v.k << " m=" << v.m);
        CHECK(vanishing_window_check(*r, 2));
    }
    auto a = chern_filtration(fixtures::ring(3, 1, Kind::Space));
    auto b = chern_filtration(m32());
    CHECK(a.graded_equal(b));
}

TEST_CASE("filtration tables are monotone and exhaustive") {
    auto& r = fixtures::ring(3, 1, Kind::Space);
    auto P = perverse_filtration(r);
    auto h = r.hilbert_function(10);
    for (int q = 0; q <= 10; ++q) {
        for (int k = 0; k <= P.kmax; ++k) CHECK(P.at(k, 2 * q) >= P.at(k - 1, 2 * q));
        CHECK(P.at(P.kmax, 2 * q) == h[q]);
    }
}

TEST_CASE("omega tables") {
    auto om = omegas(3);
    Bivariate o1;
    o1.add(0, -2, 1);
    o1.add(0, 0, 1);
    o1.add(0, 2, 1);
    CHECK(om[1] == o1);
    Bivariate o2;
    for (int j = -5; j <= 5; j += 2) o2.add(0, j, -1);
    CHECK(om[2] == o2);
    for (int d = 1; d <= 3; ++d) CHECK(om[d].symmetric());

    auto n1 = gv_extract(om[1]);
    CHECK(n1 == std::map<std::pair<int, int>, long>{{{0, 2}, 1}});
    auto n2 = gv_extract(om[2]);
    CHECK(n2 == std::map<std::pair<int, int>, long>{{{0, 5}, 1}});
    auto n3 = gv_extract(om[3]);
    CHECK(n3 == std::map<std::pair<int, int>, long>{{{0, 6}, 1}, {{1, 9}, 1}});
    for (int d = 1; d <= 3; ++d) CHECK(gv_reconstruct(gv_extract(om[d])) == om[d]);

    CHECK(maulik_toda(om[1]) == std::map<int, long>{{0, 3}});
    CHECK(maulik_toda(om[2]) == std::map<int, long>{{0, -6}});
    CHECK(maulik_toda(om[3]) == std::map<int, long>{{0, 27}, {1, -10}});
}

TEST_CASE("omega rejects asymmetric input") {
    FiltrationTable P;
    P.kmax = 0;
    P.mmax = 4;
    P.dims[{0, 0}] = 1;
    P.dims[{0, 2}] = 1;
    P.dims[{0, 4}] = 0;
    CHECK_THROWS(omega(1, P));
}

TEST_CASE("gv/pt generating function") {
    auto om = omegas(2);
    const int qcut = 8;
    auto rhs = gvpt_rhs(om, qcut);
    Bivariate one;
    one.add(0, 0, 1);
    CHECK(rhs[0] == one);
    // -q Omega_1 / ((1 - qt)(1 - q/t))
    Bivariate q1;
    for (int a = 0; 1 + a <= qcut; ++a)
        for (int b = 0; 1 + a + b <= qcut; ++b)
            for (auto& [e, x] : om[1].c) q1.add(1 + a + b + e.first, a - b + e.second, -x);
    CHECK(rhs[1] == q1);

    // the rhs regenerates its own PT file
    std::ostringstream pt;
    for (int d = 1; d <= 2; ++d)
        for (int n = 1; n <= 4; ++n) {
            pt << d << " " << n << " :";
            for (auto& [e, x] : rhs[d].c)
                if (e.first == n) pt << " " << e.second << "/" << x.get_str();
            pt << "\n";
        }
    CHECK(gvpt_compare(om, pt.str(), qcut) == "");
    CHECK(gvpt_compare(om, "1 1 : 0/5\n", qcut) != "");
}

TEST_CASE("stacky perverse numbers match the chern filtration of stacks") {
    auto om = omegas(2);
    for (int d = 1; d <= 2; ++d) {
        auto& st = fixtures::ring(d, 0, Kind::Stack);
        int qmax = std::min(st.dmax(), 8);
        auto S = stacky_perverse_numbers(om, d, qmax);
        auto C = chern_filtration(st, qmax);
        CHECK(S.graded_equal(C));
    }
}
