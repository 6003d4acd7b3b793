#include "taut/pipeline.hpp"

#include <fstream>
#include <json.hpp>
#include <numeric>
#include <sstream>

namespace taut {

using json = nlohmann::json;

namespace {

constexpr const char* kSchema = "taut-registry/1";

Polynomial virasoro_op(Ring& r, int n, const Polynomial& p, bool use_ln) {
    const ToppType& a = r.type();
    if (r.kind() == Kind::Space) return use_ln ? apply_L_delta(n, p, a) : apply_R_delta(n, p, a);
    return use_ln ? apply_L(n, p, a) : apply_R(n, p, a);
}

Monomial var_mono(const TablePtr& t, int v) {
    Monomial m;
    m.e[v] = 1;
    m.deg = t->deg(v);
    return m;
}

// Row reduction of relations with linear unknowns against the unknowns of one degree.
class Eliminator {
public:
    Eliminator(Ring& r, std::vector<int> unknowns) : r_(r), unknowns_(std::move(unknowns)) {
        for (int v : unknowns_) mono_.emplace(v, var_mono(r.table(), v));
    }

    // Returns true if the row pivoted a new unknown.
    bool add(Polynomial row) {
        for (auto& [v, pr] : piv_) {
            Q c = row.coeff(mono_.at(v));
            if (c != 0) row -= pr * c;
        }
        for (int v : unknowns_) {
            if (piv_.count(v)) continue;
            Q c = row.coeff(mono_.at(v));
            if (c == 0) continue;
            row = row * (1 / c);
            for (auto& [w, pr] : piv_) {
                Q x = pr.coeff(mono_.at(v));
                if (x != 0) pr -= row * x;
            }
            piv_.emplace(v, std::move(row));
            return true;
        }
        if (!row.is_zero()) residual_.push_back(std::move(row));
        return false;
    }

    bool done() const { return piv_.size() == unknowns_.size(); }
    std::vector<Polynomial> take_residual() { return std::exchange(residual_, {}); }

    void commit() {
        for (auto& [v, pr] : piv_) r_.set_elim(v, r_.reduce(Polynomial::mono(r_.table(), mono_.at(v)) - pr));
    }

private:
    Ring& r_;
    std::vector<int> unknowns_;
    std::map<int, Monomial> mono_;
    std::map<int, Polynomial> piv_;
    std::vector<Polynomial> residual_;
};

struct Partner {
    ToppType ap;
    std::unique_ptr<GMRStream> stream;
};

}  // namespace

std::pair<int, bool> Registry::canonical(int d, int chi) {
    int m = ((chi % d) + d) % d;
    int n = (d - m) % d;
    return m <= n ? std::pair{m, false} : std::pair{n, true};
}

std::string Registry::key(int d, int chi, Kind kind) {
    return kind_str(kind) + "(" + std::to_string(d) + "," + std::to_string(canonical(d, chi).first) + ")";
}

Registry::Lookup Registry::lookup(const ToppType& a, Kind kind) const {
    auto it = rings_.find(key(a.d, a.chi, kind));
    if (it == rings_.end()) return {};
    auto [c0, neg] = canonical(a.d, a.chi);
    const ToppType& st = it->second->type();
    auto [s0, sneg] = canonical(st.d, st.chi);
    return {it->second.get(), neg != sneg && 2 * c0 % a.d != 0};
}

Ring& Registry::insert(std::unique_ptr<Ring> r) {
    std::string k = key(r->type().d, r->type().chi, r->kind());
    auto& slot = rings_[k];
    slot = std::move(r);
    return *slot;
}

std::vector<const Ring*> Registry::rings() const {
    std::vector<const Ring*> out;
    for (auto& [k, r] : rings_) out.push_back(r.get());
    return out;
}

void Registry::save(const std::string& path) const {
    json doc;
    doc["schema"] = kSchema;
    doc["rings"] = json::array();
    for (auto& [k, rp] : rings_) {
        Ring& r = *rp;
        const TablePtr& t = r.table();
        json j;
        j["key"] = k;
        j["d"] = r.type().d;
        j["chi"] = r.type().chi;
        j["kind"] = kind_str(r.kind());
        j["dmax"] = r.dmax();
        std::vector<std::string> vars, gens;
        for (int v = 0; v < t->size(); ++v) vars.push_back((*t)[v].label);
        for (int v : r.gens()) gens.push_back((*t)[v].label);
        j["variables"] = vars;
        j["generators"] = gens;
        json el = json::object();
        for (auto& [v, e] : r.elims()) el[(*t)[v].label] = e.str();
        j["eliminations"] = el;
        std::vector<std::string> rels;
        for (auto& g : r.ideal().generators()) rels.push_back(g.str());
        j["relations"] = rels;
        std::vector<int> ranks;
        for (int D = 0; D <= r.dmax(); ++D) ranks.push_back(r.ideal().slice_rank(D));
        j["slice_ranks"] = ranks;
        j["hilbert"] = r.hilbert_function(r.dmax());
        doc["rings"].push_back(j);
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << doc.dump(1) << "\n";
}

Registry Registry::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    json doc = json::parse(f);
    if (doc.value("schema", "") != kSchema) throw std::runtime_error("registry schema mismatch in " + path);
    Registry reg;
    for (auto& j : doc["rings"]) {
        ToppType a{j["d"].get<int>(), j["chi"].get<int>()};
        Kind kind = parse_kind(j["kind"].get<std::string>());
        int dmax = j["dmax"].get<int>();
        TablePtr t = c_table(std::max(dmax, 1));
        std::map<std::string, int> idx;
        for (int v = 0; v < t->size(); ++v) idx[(*t)[v].label] = v;
        if (j["variables"].size() != (size_t)t->size()) throw std::runtime_error("variable table mismatch for " + a.str());
        std::vector<int> gens;
        for (auto& g : j["generators"]) gens.push_back(idx.at(g.get<std::string>()));
        auto r = std::make_unique<Ring>(a, kind, dmax, gens);
        std::vector<Polynomial> rels;
        for (auto& s : j["relations"]) rels.push_back(Polynomial::parse(r->table(), s.get<std::string>()));
        r->add_relations(rels);
        for (auto& [lab, s] : j["eliminations"].items()) r->set_elim(idx.at(lab), Polynomial::parse(r->table(), s.get<std::string>()));
        auto ranks = j["slice_ranks"].get<std::vector<int>>();
        for (int D = 0; D <= dmax; ++D)
            if (r->ideal().slice_rank(D) != ranks.at(D))
                throw std::runtime_error("registry entry " + r->label() + " fails rank check in degree " + std::to_string(D));
        reg.insert(std::move(r));
    }
    return reg;
}

int default_dmax(const ToppType& a, Kind kind) {
    if (kind == Kind::Space) return a.dim_space() + 1;
    switch (a.d) {
        case 1: return 6;
        case 2: return 14;
        case 3: return 12;
        default: return a.dim_stack() + 4;
    }
}

std::optional<std::vector<long>> target_series(const ToppType& a, Kind kind, const Registry& reg, int dmax) {
    if (kind == Kind::Space) return std::nullopt;
    const int r = a.d / a.gcd();
    std::vector<std::vector<int>> hs;
    for (int dk = r; dk <= a.d; dk += r) {
        auto lk = reg.lookup({dk, 1}, Kind::Space);
        if (!lk.ring) throw std::runtime_error("build space(" + std::to_string(dk) + ",1) first (needed for the target of stack" + a.str() + ")");
        hs.push_back(lk.ring->hilbert_function(lk.ring->dmax()));
    }
    return stack_poincare(a.d, r, hs, dmax);
}

Ring& ensure_ring(const ToppType& a, Kind kind, Registry& reg, const BuildOptions& opt, BuildReport* rep) {
    if (a.d < 1) throw std::invalid_argument("degree d must be positive, got " + a.str());
    if (kind == Kind::Space && a.gcd() != 1) throw std::invalid_argument("space rings need gcd(d,chi) = 1, got " + a.str());
    auto [c0, neg] = Registry::canonical(a.d, a.chi);
    ToppType rep_type{a.d, c0};
    if (auto lk = reg.lookup(rep_type, kind); lk.ring) return *lk.ring;
    if (opt.log) opt.log("building " + kind_str(kind) + rep_type.str());

    BuildOptions dep;
    dep.log = opt.log;
    for (auto& ap : gmr_partners(rep_type, opt.gmr_spaces_only, opt.gmr_max_dprime))
        ensure_ring(ap, ap.gcd() == 1 ? Kind::Space : Kind::Stack, reg, dep);
    BuildOptions o = opt;
    if (kind == Kind::Stack) {
        const int r = a.d / a.gcd();
        for (int dk = r; dk <= a.d; dk += r) ensure_ring({dk, 1}, Kind::Space, reg, dep);
        if (o.dmax <= 0) o.dmax = default_dmax(rep_type, kind);
        if (!o.target) o.target = target_series(rep_type, kind, reg, o.dmax);
    }
    BuildReport local;
    auto ring = build_ring(rep_type, kind, reg, o, rep ? *rep : local);
    return reg.insert(std::move(ring));
}

std::vector<Polynomial> virasoro_closure(Ring& r, const std::vector<Polynomial>& gens, int Dtarget, bool use_ln) {
    std::vector<Polynomial> out;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        for (int n = 1; g.degree() + n <= Dtarget; ++n) {
            Polynomial x = r.reduce(virasoro_op(r, n, g, use_ln));
            if (!x.is_zero()) out.push_back(std::move(x));
        }
    }
    return out;
}

std::unique_ptr<Ring> build_ring(const ToppType& a, Kind kind, const Registry& reg, const BuildOptions& opt,
                                 BuildReport& rep) {
    if (a.d < 1) throw std::invalid_argument("degree d must be positive, got " + a.str());
    if (kind == Kind::Space && a.gcd() != 1) throw std::invalid_argument("space rings need gcd(d,chi) = 1, got " + a.str());
    const int dmax = opt.dmax > 0 ? opt.dmax : default_dmax(a, kind);
    if (opt.target && (int)opt.target->size() <= dmax) throw std::invalid_argument("target series shorter than dmax");
    auto log = [&](const std::string& s) {
        if (opt.log) opt.log(s);
    };
    auto ring = std::make_unique<Ring>(a, kind, dmax);
    Ring& r = *ring;
    rep = BuildReport{};

    std::vector<MRStream> mr;
    if (opt.mr)
        for (auto& tw : mr_twists(a, dmax)) mr.emplace_back(tw);

    std::vector<Partner> partners;
    if (opt.gmr) {
        for (auto& ap : gmr_partners(a, opt.gmr_spaces_only, opt.gmr_max_dprime)) {
            Kind pk = ap.gcd() == 1 ? Kind::Space : Kind::Stack;
            auto lk = reg.lookup(ap, pk);
            if (!lk.ring)
                throw std::runtime_error("build " + kind_str(pk) + ap.str() + " first (needed for relations of " + r.label() + ")");
            partners.push_back({ap, std::make_unique<GMRStream>(a, ap, *lk.ring, lk.sign_map)});
        }
    }

    for (int n = 1; n <= dmax; ++n) {
        Eliminator el(r, r.unknowns(n));
        auto satisfied = [&] {
            if (!el.done()) return false;
            if (opt.exhaust || !opt.target) return false;
            return r.hilbert(n) == (*opt.target)[n];
        };
        auto run = [&](const std::string& family, const std::vector<Polynomial>& rows) {
            int piv = 0;
            for (auto& row : rows) piv += el.add(r.reduce_partial(row));
            int added = r.add_relations(el.take_residual());
            int h = r.hilbert(n);
            if (!rows.empty()) {
                rep.trace.push_back({n, family, (int)rows.size(), piv, added, h});
                log(r.label() + " q=" + std::to_string(n) + " " + family + ": rows " + std::to_string(rows.size()) +
                    ", pivots " + std::to_string(piv) + ", relations " + std::to_string(added) + ", h " + std::to_string(h));
            }
        };
        std::vector<std::function<std::vector<Polynomial>()>> families;
        std::vector<std::string> names;
        if (opt.virasoro) {
            names.push_back("Virasoro");
            families.push_back([&] {
                std::vector<Polynomial> rows;
                for (auto& g : r.ideal().generators())
                    if (g.degree() < n) rows.push_back(virasoro_op(r, n - g.degree(), g, opt.use_ln));
                for (auto& [v, e] : r.elims()) {
                    int e_deg = r.table()->deg(v);
                    if (e_deg >= n || (kind == Kind::Space && v == c11_index())) continue;
                    rows.push_back(virasoro_op(r, n - e_deg, Polynomial::mono(r.table(), var_mono(r.table(), v)) - e, opt.use_ln));
                }
                return rows;
            });
        }
        const bool full = !opt.primitive_only;
        if (opt.mr) {
            names.push_back("PrimMR");
            families.push_back([&] {
                std::vector<Polynomial> rows;
                for (auto& s : mr)
                    if (s.twist().chi_star + 1 == n) rows.push_back(s.at(r, n));
                return rows;
            });
            if (full) names.push_back("MR");
            if (full) families.push_back([&] {
                std::vector<Polynomial> rows;
                for (auto& s : mr)
                    if (s.twist().chi_star + 1 < n) rows.push_back(s.at(r, n));
                return rows;
            });
        }
        if (opt.gmr) {
            names.push_back("PrimGMR");
            families.push_back([&] {
                std::vector<Polynomial> rows;
                for (auto& p : partners)
                    for (auto& x : p.stream->relations(r, n, true)) rows.push_back(x);
                return rows;
            });
            if (full) names.push_back("GMR");
            if (full) families.push_back([&] {
                std::vector<Polynomial> rows;
                for (auto& p : partners)
                    for (auto& x : p.stream->relations(r, n, false)) rows.push_back(x);
                return rows;
            });
        }
        if (opt.br && n >= a.b() + 1) {
            names.push_back("BR");
            families.push_back([&] { return base_relations(r.table(), a, n); });
        }
        for (size_t f = 0; f < families.size() && !satisfied(); ++f) run(names[f], families[f]());
        if (!el.done()) {
            rep.status = BuildStatus::Incomplete;
            rep.stuck_degree = n;
            rep.reason = "classes of degree " + std::to_string(n) + " not expressed in the generators";
            log(r.label() + ": " + rep.reason);
            break;
        }
        el.commit();
        if (opt.target) {
            long h = r.hilbert(n), want = (*opt.target)[n];
            if (h < want)
                throw std::logic_error(r.label() + ": quotient smaller than the target in degree " + std::to_string(n) + " (" +
                                       std::to_string(h) + " < " + std::to_string(want) + ")");
            if (h > want && rep.status == BuildStatus::Complete) {
                rep.status = BuildStatus::Incomplete;
                rep.stuck_degree = n;
                rep.reason = "geometric relations stop short in degree " + std::to_string(n) + " (" + std::to_string(h) +
                             " > " + std::to_string(want) + ")";
                log(r.label() + ": " + rep.reason);
            }
        }
    }

    if (kind == Kind::Space && rep.status == BuildStatus::Complete) {
        if (opt.pd_complete) {
            int added = pd_complete(r);
            rep.trace.push_back({r.top_degree(), "PD", added, 0, added, 1});
            log(r.label() + " PD: relations " + std::to_string(added));
        }
        rep.gorenstein = is_gorenstein(r);
        if (!rep.gorenstein) {
            rep.status = BuildStatus::Incomplete;
            rep.reason = "quotient is not Gorenstein of dimension " + std::to_string(a.dim_space());
        }
    }
    rep.hilbert = r.hilbert_function(dmax);
    return ring;
}

std::vector<std::string> virasoro_defects(Ring& r, int nmax) {
    std::vector<std::string> out;
    std::vector<std::pair<std::string, Polynomial>> rels;
    for (auto& g : r.ideal().generators()) rels.push_back({g.str(), g});
    for (auto& [v, e] : r.elims()) {
        if (r.kind() == Kind::Space && v == c11_index()) continue;
        rels.push_back({(*r.table())[v].label + " - E", Polynomial::mono(r.table(), var_mono(r.table(), v)) - e});
    }
    for (auto& [name, g] : rels)
        for (int n = 1; n <= nmax && g.degree() + n <= r.dmax(); ++n)
            if (!r.reduce(virasoro_op(r, n, g, false)).is_zero()) out.push_back("R_" + std::to_string(n) + "(" + name + ")");
    return out;
}

bool same_ideal(Ring& a, Ring& b) {
    int D = std::min(a.dmax(), b.dmax());
    for (auto* p : {&a, &b}) {
        Ring& other = p == &a ? b : a;
        for (auto& g : p->ideal().generators())
            if (g.degree() <= D && !other.reduce(g).is_zero()) return false;
    }
    for (int k = 0; k <= D; ++k)
        if (a.hilbert(k) != b.hilbert(k)) return false;
    return true;
}

namespace {

// Degree-D classes pairing to zero with every class of degree top - D.
std::vector<DenseVec> pairing_kernel(Ideal& I, int D, int top) {
    const auto lo = I.standard(D), hi = I.standard(top - D);
    if (lo.empty()) return {};
    std::vector<DenseVec> mat(hi.size(), DenseVec(lo.size()));
    for (size_t i = 0; i < lo.size(); ++i)
        for (size_t j = 0; j < hi.size(); ++j) {
            const SparseRow& x = I.nf_mono(mono_mul(lo[i], hi[j]));
            mat[j][i] = x.empty() ? Q(0) : x[0].second;
        }
    return kernel_basis(mat, (int)lo.size());
}

}  // namespace

bool is_gorenstein(Ring& r) {
    int dim = r.type().dim_space();
    if (r.dmax() < dim) return false;
    auto h = r.hilbert_function(r.dmax());
    if (h[dim] != 1) return false;
    for (int D = dim + 1; D <= r.dmax(); ++D)
        if (h[D] != 0) return false;
    for (int D = 0; D <= dim; ++D)
        if (h[D] != h[dim - D] || !pairing_kernel(r.ideal(), D, dim).empty()) return false;
    return true;
}

int pd_complete(Ring& r) {
    int top = r.type().dim_space();
    Ideal& I = r.ideal();
    if (r.dmax() < top || r.hilbert(top) != 1)
        throw std::runtime_error(r.label() + ": top degree is not one-dimensional, more relations needed first");
    int total = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (int D = 0; D <= top; ++D) {
            auto ker = pairing_kernel(I, D, top);
            if (ker.empty()) continue;
            std::vector<Polynomial> rels;
            for (auto& k : ker) rels.push_back(I.to_poly(D, k));
            int added = r.add_relations(rels);
            total += added;
            if (added) changed = true;
        }
    }
    return total;
}

std::unique_ptr<Ring> descend_to_space(Ring& stack) {
    const ToppType& a = stack.type();
    if (stack.kind() != Kind::Stack) throw std::invalid_argument("descend_to_space needs a stack ring");
    if (a.gcd() != 1) throw std::invalid_argument("descend_to_space needs gcd(d,chi) = 1, got " + a.str());
    std::vector<int> gens;
    for (int v : stack.gens())
        if (v != c11_index()) gens.push_back(v);
    auto sp = std::make_unique<Ring>(a, Kind::Space, stack.dmax(), gens);
    std::vector<Polynomial> rels;
    for (auto& g : stack.ideal().generators()) rels.push_back(drop_c11(g));
    sp->add_relations(rels);
    for (auto& [v, e] : stack.elims())
        if (v != c11_index()) sp->set_elim(v, sp->reduce(drop_c11(e)));
    return sp;
}

int TrimmedShape::total() const {
    int s = 0;
    for (auto& [q, c] : relations) s += c;
    return s;
}

TrimmedShape trimmed_shape(Ring& r) {
    const TablePtr& t = r.table();
    TrimmedShape out;
    std::map<int, int> lambda;
    int maxgen = 0;
    for (int v : r.gens()) maxgen = std::max(maxgen, t->deg(v));
    for (int D = 1; D <= maxgen; ++D) {
        std::vector<int> lin;
        for (int v : r.gens())
            if (t->deg(v) == D) lin.push_back(v);
        if (lin.empty()) continue;
        std::vector<DenseVec> rows;
        for (auto& p : r.ideal().slice(D).basis) {
            DenseVec x;
            for (int v : lin) x.push_back(p.coeff(var_mono(t, v)));
            rows.push_back(x);
        }
        lambda[D] = dense_rank(rows);
    }
    out.generators = (int)r.gens().size();
    for (auto& [D, l] : lambda) out.generators -= l;
    // minimal generators via the ideal of lower-degree relations
    Ideal lower(t, r.gens(), r.dmax());
    std::map<int, std::vector<Polynomial>> by;
    for (auto& g : r.ideal().generators()) by[g.degree()].push_back(g);
    for (int D = 1; D <= r.dmax(); ++D) {
        int before = lower.hilbert(D);
        int mu = before - r.hilbert(D);
        for (auto& g : by[D]) lower.add(g);
        int net = mu - (lambda.count(D) ? lambda[D] : 0);
        if (net > 0) out.relations[D] = net;
    }
    return out;
}

}  // namespace taut
