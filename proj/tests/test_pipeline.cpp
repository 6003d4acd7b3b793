#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "fixtures.hpp"

using namespace taut;

namespace {

// Coefficients of N(q) / prod (1 - q^e) through dmax.
std::vector<long> rational_series(const std::vector<long>& num, const std::vector<int>& den, int dmax) {
    std::vector<long> s(dmax + 1, 0);
    for (size_t i = 0; i < num.size() && (int)i <= dmax; ++i) s[i] = num[i];
    for (int e : den)
        for (int i = e; i <= dmax; ++i) s[i] += s[i - e];
    return s;
}

std::vector<long> as_long(const std::vector<int>& v) { return {v.begin(), v.end()}; }

Polynomial in_gens(Ring& r, const Polynomial& p) {
    return p.substitute([&](int v) { return r.is_gen(v) ? Polynomial::var(r.table(), v) : r.elim(v); });
}

}  // namespace

TEST_CASE("M_{1,0} builds to Q[h]/h^3") {
    auto& r = fixtures::ring(1, 0, Kind::Space);
    CHECK(r.hilbert_function(3) == std::vector<int>{1, 1, 1, 0});
    CHECK(r.reduce(Polynomial::parse(r.table(), "c0(2)^3")).is_zero());
    CHECK(is_gorenstein(r));
}

TEST_CASE("M_{2,1} and M_{3,1}") {
    auto& m21 = fixtures::ring(2, 1, Kind::Space);
    CHECK(m21.hilbert_function(6) == std::vector<int>{1, 1, 1, 1, 1, 1, 0});
    auto& m31 = fixtures::ring(3, 1, Kind::Space);
    CHECK(m31.hilbert_function(10) == std::vector<int>{1, 2, 3, 3, 3, 3, 3, 3, 3, 2, 1});
    CHECK(is_gorenstein(m31));
    CHECK(virasoro_defects(m31, 3).empty());
}

TEST_CASE("registry canonical representatives") {
    CHECK(Registry::canonical(3, 2) == std::pair<int, bool>{1, true});
    CHECK(Registry::canonical(3, 4) == std::pair<int, bool>{1, false});
    CHECK(Registry::canonical(4, 2) == std::pair<int, bool>{2, false});
    CHECK(Registry::canonical(2, -3) == std::pair<int, bool>{1, false});
    auto lk = fixtures::small_registry().lookup({3, 2}, Kind::Space);
    REQUIRE(lk.ring);
    CHECK(lk.sign_map);
    CHECK_FALSE(fixtures::small_registry().lookup({4, 1}, Kind::Space).ring);
}

TEST_CASE("missing GMR partner is reported") {
    Registry empty;
    BuildOptions o;
    BuildReport rep;
    CHECK_THROWS_WITH_AS(build_ring({2, 1}, Kind::Space, empty, o, rep), doctest::Contains("first"),
                         std::runtime_error);
}

TEST_CASE("stack M_{1,0} descends to the space") {
    auto& st = fixtures::ring(1, 0, Kind::Stack);
    auto sp = descend_to_space(st);
    CHECK(sp->hilbert_function(3) == std::vector<int>{1, 1, 1, 0});
    CHECK(same_ideal(*sp, fixtures::ring(1, 0, Kind::Space)));
    auto sh = trimmed_shape(st);
    CHECK(sh.generators == 2);
    CHECK(sh.relations == std::map<int, int>{{3, 1}});
}

TEST_CASE("stack M_{2,0} golden run") {
    auto& reg = fixtures::small_registry();
    auto& r = fixtures::ring(2, 0, Kind::Stack);
    const int D = 14;
    auto expect = rational_series({1, 1, 2, 2, 3, 1, 0, -1}, {1, 2}, D);
    CHECK(as_long(r.hilbert_function(D)) == expect);
    CHECK(*target_series({2, 0}, Kind::Stack, reg, D) == expect);

    // the printed relations generate the same ideal slice by slice
    const auto& t = r.table();
    std::vector<Polynomial> printed;
    for (auto s : {"c2(0) - 1/8*c0(2)", "-1/4*c1(2) + 2*c3(0)", "c1(1)*c2(0)^4 - 2*c2(0)^3*c3(0)",
                   "c1(1)^2*c2(0)^3 + 16*c2(0)^5 + 2*c2(0)^3*c2(1) - 6*c1(1)*c2(0)^2*c3(0) + 6*c2(0)*c3(0)^2"})
        printed.push_back(Polynomial::parse(t, s));
    printed.push_back(in_gens(r, apply_L(1, printed[2], {2, 0})));
    printed.push_back(in_gens(r, apply_L(1, printed[3], {2, 0})));
    Ideal P(t, r.gens(), D);
    for (auto& p : printed) P.add(p);
    for (int q = 0; q <= D; ++q) CHECK(P.slice_rank(q) == r.ideal().slice_rank(q));
    for (auto& p : printed) CHECK(r.ideal().contains(p));
    for (auto& g : r.ideal().generators()) CHECK(P.contains(g));

    auto sh = trimmed_shape(r);
    CHECK(sh.generators == 4);
    CHECK(sh.relations == std::map<int, int>{{5, 2}, {6, 2}});
    CHECK(sh.total() == 4);
    CHECK(virasoro_defects(r, 2).empty());
}

TEST_CASE("stack M_{2,0} trace") {
    auto& reg = fixtures::small_registry();
    BuildOptions o;
    o.dmax = 8;
    o.target = target_series({2, 0}, Kind::Stack, reg, o.dmax);
    BuildReport rep;
    auto r = build_ring({2, 0}, Kind::Stack, reg, o, rep);
    CHECK(rep.status == BuildStatus::Complete);
    CHECK(as_long(rep.hilbert) == *o.target);
    bool vir2 = false, vir6 = false;
    for (auto& s : rep.trace) {
        if (s.degree == 1) CHECK(s.hilbert >= 2);
        if (s.degree == 2 && s.family == "Virasoro" && s.relations > 0) vir2 = true;
        if (s.degree == 6 && s.family == "Virasoro" && s.relations == 2) vir6 = true;
    }
    CHECK(vir2);
    CHECK(vir6);
}

TEST_CASE("falling below the target is an error") {
    auto& reg = fixtures::small_registry();
    BuildOptions o;
    o.dmax = 3;
    o.target = std::vector<long>{1, 2, 6, 9};  // Virasoro at degree 3 already forces 8
    BuildReport rep;
    CHECK_THROWS(build_ring({2, 0}, Kind::Stack, reg, o, rep));
}

TEST_CASE("an unreachable target leaves the build incomplete") {
    auto& reg = fixtures::small_registry();
    BuildOptions o;
    o.dmax = 3;
    o.target = std::vector<long>{1, 2, 5, 7};
    o.virasoro = o.gmr = o.br = false;
    BuildReport rep;
    build_ring({2, 0}, Kind::Stack, reg, o, rep);
    CHECK(rep.status == BuildStatus::Incomplete);
    CHECK(rep.stuck_degree >= 2);
    CHECK_FALSE(rep.reason.empty());
}

TEST_CASE("primitive relations and Virasoro give the same M_{3,1}") {
    auto& reg = fixtures::small_registry();
    BuildOptions o;
    o.primitive_only = true;
    BuildReport rep;
    auto r = build_ring({3, 1}, Kind::Space, reg, o, rep);
    CHECK(same_ideal(*r, fixtures::ring(3, 1, Kind::Space)));
}

TEST_CASE("Poincare duality completion agrees with the full build") {
    auto& reg = fixtures::small_registry();
    BuildOptions o;
    o.gmr_max_dprime = 1;
    o.virasoro = o.br = false;
    o.pd_complete = true;
    BuildReport rep;
    auto r = build_ring({3, 1}, Kind::Space, reg, o, rep);
    CHECK(r->hilbert_function(10) == std::vector<int>{1, 2, 3, 3, 3, 3, 3, 3, 3, 2, 1});
    CHECK(same_ideal(*r, fixtures::ring(3, 1, Kind::Space)));
    CHECK(pd_complete(*r) == 0);
}

TEST_CASE("Poincare duality completion removes the kernel of the pairing") {
    Ring r({1, 0}, Kind::Space, 2, {c_index(0, 2), c_index(2, 0)});
    r.add_relations({Polynomial::parse(r.table(), "c0(2)^2"), Polynomial::parse(r.table(), "c0(2)*c2(0)")});
    CHECK(r.hilbert_function(2) == std::vector<int>{1, 2, 1});
    CHECK_FALSE(is_gorenstein(r));
    CHECK(pd_complete(r) == 1);
    CHECK(r.hilbert_function(2) == std::vector<int>{1, 1, 1});
    CHECK(r.ideal().contains(Polynomial::parse(r.table(), "c0(2)")));
    CHECK(is_gorenstein(r));
}

TEST_CASE("virasoro closure of r1 contains r2") {
    Ring r({2, 0}, Kind::Stack, 2);
    auto r1 = Polynomial::parse(r.table(), "c2(0) - 1/8*c0(2)");
    auto r2 = Polynomial::parse(r.table(), "-1/4*c1(2) + 2*c3(0)");
    r.add_relations({r1});
    auto cl = virasoro_closure(r, {r1}, 2);
    REQUIRE(cl.size() == 1);
    CHECK(cl[0].monic() == r.nf(r2).monic());
}

TEST_CASE("registry round trip and tamper detection") {
    auto& reg = fixtures::small_registry();
    auto dir = std::filesystem::temp_directory_path();
    auto path = (dir / "taut_registry_test.json").string();
    reg.save(path);
    auto back = Registry::load(path);
    REQUIRE(back.rings().size() == reg.rings().size());
    for (auto* r : reg.rings()) {
        auto lk = back.lookup(r->type(), r->kind());
        REQUIRE(lk.ring);
        CHECK(lk.ring->hilbert_function(r->dmax()) == const_cast<Ring*>(r)->hilbert_function(r->dmax()));
        CHECK(same_ideal(*lk.ring, *const_cast<Ring*>(r)));
    }

    nlohmann::json doc;
    {
        std::ifstream f(path);
        doc = nlohmann::json::parse(f);
    }
    auto& ranks = doc["rings"][0]["slice_ranks"];
    ranks[ranks.size() - 1] = ranks[ranks.size() - 1].get<int>() + 1;
    auto bad = (dir / "taut_registry_bad.json").string();
    std::ofstream(bad) << doc.dump();
    CHECK_THROWS(Registry::load(bad));
    std::remove(path.c_str());
    std::remove(bad.c_str());
}
