#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <vector>

#include "tpl/state.hpp"
#include "tpl/state_io.hpp"
#include "tpl/universe.hpp"

using namespace tpl;

namespace {

Universe u0() { return Universe::default_u0(); }

Location loc(const Universe& u, const std::string& obj, const std::string& field) {
    return Location{*u.object_index(obj), *u.field_index(field)};
}

PermMask mask_of(const Universe& u, std::initializer_list<std::pair<const char*, Perm>> entries) {
    PermMask m;
    for (const auto& [name, p] : entries) {
        std::string s(name);
        auto dot = s.find('.');
        m.set(loc(u, s.substr(0, dot), s.substr(dot + 1)), p);
    }
    return m;
}

// All grid masks of the universe, by odometer over locations.
std::vector<PermMask> all_masks(const Universe& u) {
    std::vector<PermMask> out;
    int n = u.num_locations();
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    while (true) {
        PermMask m;
        for (int i = 0; i < n; ++i)
            if (digits[static_cast<std::size_t>(i)] > 0)
                m.set(u.location_at(i), u.grid_perm(digits[static_cast<std::size_t>(i)]));
        out.push_back(m);
        int i = 0;
        while (i < n) {
            if (++digits[static_cast<std::size_t>(i)] <= u.denom()) break;
            digits[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == n) break;
    }
    return out;
}

Perm half() { return Rational(1, 2); }
Perm full() { return perm_full(); }

}  // namespace

TEST_CASE("rational arithmetic is exact and reduced") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) + Rational(1, 2) == Rational(1, 1));
    CHECK(Rational(1, 1) - Rational(1, 2) == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational::min(Rational(1, 2), Rational(1, 3)) == Rational(1, 3));
    CHECK(Rational::max(Rational(1, 2), Rational(1, 3)) == Rational(1, 2));
    CHECK(parse_perm("1/2") == Rational(1, 2));
    CHECK(parse_perm("1") == Rational(1, 1));
    CHECK(Rational(3, 6).str() == "1/2");
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("universe invariants and file round trip") {
    Universe u = u0();
    CHECK(u.num_objects() == 2);
    CHECK(u.num_fields() == 2);
    CHECK(u.num_values() == 7);
    CHECK(u.contains_value(Value::null()));
    CHECK(u.contains_value(Value::object(0)));
    CHECK(u.contains_value(Value::object(1)));

    std::istringstream in(
        "# a comment\n"
        "objects = o1 o2\n"
        "fields  = f g\n"
        "values  = null 0 1 3 5\n"
        "denominator = 2\n");
    Universe v = parse_universe(in);
    CHECK(v.num_values() == 7);  // o1 o2 appended
    CHECK(v.denom() == 2);
    std::istringstream again(render_universe(v));
    Universe w = parse_universe(again);
    CHECK(w.num_values() == v.num_values());
    CHECK(w.objects() == v.objects());
    CHECK(w.fields() == v.fields());
}

TEST_CASE("universe grid helpers") {
    Universe u = u0();
    CHECK(u.on_grid(half()));
    CHECK(u.on_grid(perm_zero()));
    CHECK_FALSE(u.on_grid(Rational(1, 3)));
    CHECK(u.grid_floor(Rational(2, 3)) == 1);  // 1/2 <= 2/3 < 1
}

TEST_CASE("mask_combine follows the pointwise sum with compatibility") {
    Universe u = u0();
    auto m1 = mask_of(u, {{"o1.f", half()}});
    auto m2 = mask_of(u, {{"o1.f", half()}});
    auto r = mask_combine(m1, m2, u);
    REQUIRE(r.has_value());
    CHECK(r.value() == mask_of(u, {{"o1.f", full()}}));

    auto bad = mask_combine(mask_of(u, {{"o1.f", full()}}), m2, u);
    REQUIRE(!bad.has_value());
    CHECK(bad.error().kind == MaskError::Kind::Incompatible);
    CHECK(bad.error().where == loc(u, "o1", "f"));
}

TEST_CASE("mask_combine has the empty mask as unit, exhaustively") {
    Universe u = u0();
    for (const auto& m : all_masks(u)) {
        auto r = mask_combine(m, PermMask{}, u);
        REQUIRE(r.has_value());
        CHECK(r.value() == m);
    }
}

TEST_CASE("mask_combine is commutative and associative where defined") {
    Universe u = u0();
    auto masks = all_masks(u);
    for (const auto& a : masks) {
        for (const auto& b : masks) {
            auto ab = mask_combine(a, b, u);
            auto ba = mask_combine(b, a, u);
            CHECK(ab.has_value() == ba.has_value());
            if (ab.has_value()) CHECK(ab.value() == ba.value());
        }
    }
    // associativity on a representative slice (all pairs against two fixed
    // third masks keeps this under a second)
    std::vector<PermMask> thirds = {mask_of(u, {{"o1.f", half()}}),
                                    mask_of(u, {{"o2.g", full()}})};
    for (const auto& a : masks) {
        for (const auto& b : masks) {
            for (const auto& c : thirds) {
                auto bc = mask_combine(b, c, u);
                auto ab = mask_combine(a, b, u);
                bool left_defined = ab.has_value() && mask_combine(ab.value(), c, u).has_value();
                bool right_defined = bc.has_value() && mask_combine(a, bc.value(), u).has_value();
                CHECK(left_defined == right_defined);
                if (left_defined)
                    CHECK(mask_combine(ab.value(), c, u).value() ==
                          mask_combine(a, bc.value(), u).value());
            }
        }
    }
}

TEST_CASE("mask_subtract examples and inverse law") {
    Universe u = u0();
    auto r = mask_subtract(mask_of(u, {{"o1.f", full()}}), mask_of(u, {{"o1.f", half()}}), u);
    REQUIRE(r.has_value());
    CHECK(r.value() == mask_of(u, {{"o1.f", half()}}));

    auto bad = mask_subtract(mask_of(u, {{"o1.f", half()}}), mask_of(u, {{"o1.f", full()}}), u);
    REQUIRE(!bad.has_value());
    CHECK(bad.error().kind == MaskError::Kind::NotSubmask);
    CHECK(bad.error().where == loc(u, "o1", "f"));

    for (const auto& p1 : all_masks(u)) {
        auto id = mask_subtract(p1, PermMask{}, u);
        REQUIRE(id.has_value());
        CHECK(id.value() == p1);
        for (const auto& p2 : all_masks(u)) {
            if (!mask_leq(p2, p1)) continue;
            auto diff = mask_subtract(p1, p2, u);
            REQUIRE(diff.has_value());
            auto back = mask_combine(diff.value(), p2, u);
            REQUIRE(back.has_value());
            CHECK(back.value() == p1);
        }
    }
}

TEST_CASE("glb and lub are pointwise min and max") {
    Universe u = u0();
    CHECK(mask_glb(mask_of(u, {{"o1.f", half()}}), mask_of(u, {{"o1.f", full()}})) ==
          mask_of(u, {{"o1.f", half()}}));
    CHECK(mask_lub(mask_of(u, {{"o1.f", half()}}), mask_of(u, {{"o2.g", full()}})) ==
          mask_of(u, {{"o1.f", half()}, {"o2.g", full()}}));
    for (const auto& m : all_masks(u)) {
        CHECK(mask_glb(m, m) == m);
        CHECK(mask_lub(m, m) == m);
    }
}

TEST_CASE("rds lists non-zero locations and distributes over combine") {
    Universe u = u0();
    CHECK(rds(PermMask{}).empty());
    auto m = mask_of(u, {{"o1.f", half()}, {"o2.f", full()}});
    auto locs = rds(m);
    REQUIRE(locs.size() == 2);
    CHECK(locs[0] == loc(u, "o1", "f"));
    CHECK(locs[1] == loc(u, "o2", "f"));

    for (const auto& p1 : all_masks(u)) {
        for (const auto& p2 : all_masks(u)) {
            auto r = mask_combine(p1, p2, u);
            if (!r.has_value()) continue;
            std::set<Location> want;
            for (auto l : rds(p1)) want.insert(l);
            for (auto l : rds(p2)) want.insert(l);
            auto got = rds(r.value());
            CHECK(std::set<Location>(got.begin(), got.end()) == want);
        }
    }
}

TEST_CASE("restrict yields the readable sub-heap") {
    Universe u = u0();
    TotalHeap h(u);
    h.set(u, loc(u, "o1", "f"), Value::integer(5));

    CHECK(restrict_heap(h, PermMask{}, u).empty());

    auto ph = restrict_heap(h, mask_of(u, {{"o1.f", half()}}), u);
    REQUIRE(ph.defined_at(loc(u, "o1", "f")));
    CHECK(ph.at(loc(u, "o1", "f")).first == Value::integer(5));
    CHECK(ph.at(loc(u, "o1", "f")).second == half());

    for (const auto& m : all_masks(u)) {
        auto r = restrict_heap(h, m, u);
        for (const auto& [l, cell] : r.cells()) CHECK(cell.second > perm_zero());
        CHECK(r.cells().size() == rds(m).size());
    }
}

TEST_CASE("heaps_agree basics") {
    Universe u = u0();
    TotalHeap h1(u), h2(u);
    h1.set(u, loc(u, "o1", "f"), Value::integer(5));
    h2.set(u, loc(u, "o1", "f"), Value::integer(0));
    CHECK(heaps_agree(h1, h1, {loc(u, "o1", "f"), loc(u, "o2", "g")}, u));
    CHECK(heaps_agree(h1, h2, {}, u));
    CHECK_FALSE(heaps_agree(h1, h2, {loc(u, "o1", "f")}, u));
}

TEST_CASE("cond_merge selects per location") {
    Universe u = u0();
    TotalHeap h1(u), h2(u);
    h1.set(u, loc(u, "o1", "f"), Value::integer(5));
    h2.set(u, loc(u, "o1", "f"), Value::integer(3));
    h2.set(u, loc(u, "o2", "g"), Value::integer(1));

    CHECK(cond_merge({}, h1, h2, u) == h2);
    std::vector<Location> all;
    for (int i = 0; i < u.num_locations(); ++i) all.push_back(u.location_at(i));
    CHECK(cond_merge(all, h1, h2, u) == h1);

    auto merged = cond_merge({loc(u, "o1", "f")}, h1, h2, u);
    CHECK(merged.at(u, loc(u, "o1", "f")) == Value::integer(5));
    CHECK(merged.at(u, loc(u, "o2", "g")) == Value::integer(1));
}

TEST_CASE("partial_combine adds permissions and rejects clashes") {
    Universe u = u0();
    Location l = loc(u, "o1", "f");
    PartialHeap h1, h2, h3;
    h1.set(l, Value::integer(5), half());
    h2.set(l, Value::integer(5), half());
    h3.set(l, Value::integer(0), half());

    auto ok = partial_combine(h1, h2);
    REQUIRE(ok.has_value());
    CHECK(ok.value().at(l).second == full());

    auto clash = partial_combine(h1, h3);
    REQUIRE(!clash.has_value());
    CHECK(clash.error().kind == PartialHeapError::Kind::ValueClash);
    CHECK(clash.error().where == l);

    PartialHeap fullh;
    fullh.set(l, Value::integer(5), full());
    auto overflow = partial_combine(fullh, h1);
    REQUIRE(!overflow.has_value());
    CHECK(overflow.error().kind == PartialHeapError::Kind::PermOverflow);

    auto unit = partial_combine(h1, PartialHeap{});
    REQUIRE(unit.has_value());
    CHECK(unit.value() == h1);
    auto comm = partial_combine(h2, h1);
    REQUIRE(comm.has_value());
    CHECK(comm.value() == ok.value());
}

TEST_CASE("restrict distributes over mask combination") {
    Universe u = u0();
    std::vector<TotalHeap> heaps;
    {
        TotalHeap h(u);
        heaps.push_back(h);
        h.set(u, loc(u, "o1", "f"), Value::integer(5));
        h.set(u, loc(u, "o2", "g"), Value::object(0));
        heaps.push_back(h);
        h.set(u, loc(u, "o1", "g"), Value::integer(3));
        h.set(u, loc(u, "o2", "f"), Value::null());
        heaps.push_back(h);
    }
    auto masks = all_masks(u);
    for (const auto& h : heaps) {
        for (const auto& p1 : masks) {
            for (const auto& p2 : masks) {
                auto combined = mask_combine(p1, p2, u);
                if (!combined.has_value()) continue;
                auto lhs = restrict_heap(h, combined.value(), u);
                auto rhs = partial_combine(restrict_heap(h, p1, u), restrict_heap(h, p2, u));
                REQUIRE(rhs.has_value());
                CHECK(lhs == rhs.value());
            }
        }
    }
}

TEST_CASE("state literal parsing") {
    Universe u = u0();
    State s = parse_state_literal(
        "heap: o1.f=5 o1.g=null o2.f=0 o2.g=0 ; mask: o1.f=1/2 ; env: x=o1 y=o2", u);
    CHECK(s.heap.at(u, loc(u, "o1", "f")) == Value::integer(5));
    CHECK(s.heap.at(u, loc(u, "o1", "g")) == Value::null());
    CHECK(s.mask.at(loc(u, "o1", "f")) == half());
    CHECK(s.mask.at(loc(u, "o2", "f")) == perm_zero());
    CHECK(s.env.at("x") == Value::object(0));
    CHECK(s.env.at("y") == Value::object(1));

    // unlisted heap cells default to the first universe value (null in U0)
    State t = parse_state_literal("heap: ; mask: ; env: x=o1", u);
    CHECK(t.heap.at(u, loc(u, "o2", "g")) == Value::null());

    CHECK_THROWS(parse_state_literal("heap: o1.h=5 ; mask: ; env:", u));
    CHECK_THROWS(parse_state_literal("heap: ; mask: o1.f=3/2 ; env:", u));
}
