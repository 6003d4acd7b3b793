#include "fixtures.hpp"

namespace fixtures {

using namespace taut;

Registry& small_registry() {
    static Registry reg = [] {
        Registry r;
        for (auto a : std::vector<ToppType>{{1, 0}, {2, 1}, {3, 1}}) {
            BuildOptions o;
            BuildReport rep;
            r.insert(build_ring(a, Kind::Space, r, o, rep));
        }
        for (auto a : std::vector<ToppType>{{1, 0}, {2, 0}}) {
            BuildOptions o;
            o.dmax = default_dmax(a, Kind::Stack);
            o.target = target_series(a, Kind::Stack, r, o.dmax);
            BuildReport rep;
            r.insert(build_ring(a, Kind::Stack, r, o, rep));
        }
        return r;
    }();
    return reg;
}

Ring& ring(int d, int chi, Kind kind) {
    auto lk = small_registry().lookup({d, chi}, kind);
    if (!lk.ring) throw std::runtime_error("fixture ring missing");
    return *lk.ring;
}

}  // namespace fixtures
