#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <set>

#include "hnpcount/norm_principle.hpp"

using namespace hnpcount;

namespace {

const FinAbGroup V4 = FinAbGroup::from_factors({2, 2});
const FinAbGroup Z24 = FinAbGroup::from_factors({2, 4});

GExtension biquadratic_13_17() {
    GExtension q;
    q.target = V4;
    LocalHomBlock b13, b17;
    b13.block = unit_block(13, 1);
    b13.images = {V4.e_gen(1)};
    b17.block = unit_block(17, 1);
    b17.images = {V4.e_gen(2)};
    q.locals = {b13, b17};
    finalize_extension(q);
    return q;
}

} // namespace

TEST_CASE("knot image examples") {
    auto w4 = exterior_square(V4);

    // cyclic target: wedge square trivial, image trivial
    auto z4 = FinAbGroup::from_factors({4});
    auto wz4 = exterior_square(z4);
    auto e5 = homs(5, z4, true, true)[0];
    auto rep = knot_image(z4, wz4, e5, 50);
    CHECK(rep.image.order() == 1);
    CHECK(wz4.group.is_trivial());

    // Q(sqrt 13, sqrt 17): all decomposition groups cyclic (13, 17 mutual QRs)
    auto q = biquadratic_13_17();
    auto rep2 = knot_image(V4, w4, q, 100);
    CHECK(rep2.image.order() == 1);
    CHECK(rep2.contributing_places.empty());

    // Q(i, sqrt 2): decomposition at 2 is everything
    auto e8 = homs(8, V4, true, true)[0];
    auto rep3 = knot_image(V4, w4, e8, 100);
    CHECK(rep3.image.order() == 2);
    CHECK(rep3.contributing_places == std::vector<i64>{2});
}

TEST_CASE("hnp and wa") {
    auto w4 = exterior_square(V4);
    auto z4 = FinAbGroup::from_factors({4});
    auto wz4 = exterior_square(z4);

    // Hasse norm theorem: cyclic groups always satisfy HNP
    for (auto& e : enumerate(z4, 2000)) {
        CHECK(hnp_holds(z4, wz4, e));
        CHECK(wa_holds(z4, wz4, e));
    }

    auto q = biquadratic_13_17();
    CHECK_FALSE(hnp_holds(V4, w4, q));
    CHECK(wa_holds(V4, w4, q));

    auto e8 = homs(8, V4, true, true)[0];
    CHECK(hnp_holds(V4, w4, e8));
    CHECK_FALSE(wa_holds(V4, w4, e8));
}

TEST_CASE("V4 dichotomy and unramified-cyclic audit, small bound") {
    auto w4 = exterior_square(V4);
    for (auto& e : enumerate(V4, 20000)) {
        bool h = hnp_holds(V4, w4, e);
        bool wa = wa_holds(V4, w4, e);
        CHECK(h != wa);
    }
    // audit mode checks unramified decomposition groups are wedge-trivial
    for (auto& e : enumerate(V4, 2000)) knot_image(V4, w4, e, 100);
}

TEST_CASE("wa implies lambda at every admissible (i, j)") {
    auto S24 = default_S(Z24);
    auto w = exterior_square(Z24);
    for (auto& e : enumerate(Z24, 4000000)) {
        if (!wa_holds(Z24, w, e)) continue;
        for (auto& s : e.local_symbols) {
            if (S24.count(s.p)) continue;
            CHECK(lambda_v_test(e, s.p, 1, 2, S24));  // a_1 <= a_2
        }
    }
    auto SV = default_S(V4);
    auto wv = exterior_square(V4);
    for (auto& e : enumerate(V4, 20000)) {
        if (!wa_holds(V4, wv, e)) continue;
        for (auto& s : e.local_symbols) {
            if (SV.count(s.p)) continue;
            CHECK(lambda_v_test(e, s.p, 1, 2, SV));
            CHECK(lambda_v_test(e, s.p, 2, 1, SV));
        }
    }
}

TEST_CASE("density scan vs brute-force oracle") {
    auto S = default_S(V4);
    // oracle: exhaustive modulus scan counts
    i64 B = 1000;
    i64 total = 0;
    for (i64 m = 1; m <= B; ++m)
        for (auto& e : homs(m, V4, true, true))
            if (e.discriminant <= B) ++total;
    auto rows = density_scan(V4, {100, B}, 1, 2, S, 2);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].bound == 100);
    CHECK(rows[0].total == 0);  // smallest biquadratic discriminant is 144
    CHECK(rows[1].total == total);
    CHECK(rows[1].total > 0);
    for (auto& r : rows) {
        CHECK(r.hnp_fail <= r.total);
        CHECK(r.wa_hold <= r.total);
        CHECK(r.lambda_hold <= r.total);
        if (r.total > 0) {
            CHECK(r.hnp_fail_ratio.to_double() >= 0.0);
            CHECK(r.hnp_fail_ratio.to_double() <= 1.0);
            CHECK(r.wa_hold_ratio == Rat(r.wa_hold, r.total));
        }
    }
    // V4 dichotomy at the row level: hnp_fail == wa_hold counts
    CHECK(rows[1].hnp_fail == rows[1].wa_hold);

    // deterministic across worker counts
    auto rows1 = density_scan(V4, {100, B}, 1, 2, S, 1);
    auto rows4 = density_scan(V4, {100, B}, 1, 2, S, 4);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows1[i].total == rows4[i].total);
        CHECK(rows1[i].hnp_fail == rows4[i].hnp_fail);
        CHECK(rows1[i].lambda_hold == rows4[i].lambda_hold);
    }
}

TEST_CASE("biquadratic totals match the discriminant-triple oracle") {
    // independent oracle: a biquadratic field is an unordered pair of distinct
    // fundamental discriminants together with the discriminant of the product
    // character; its discriminant is |d1 d2 d3| and it carries 6 surjections
    auto fundamental = [](i64 d) {
        if (d == 0 || d == 1) return false;
        i64 s = sqfree_kernel(d);
        if (s == d) return (d - 1) % 4 == 0;
        return d == 4 * s && (((s % 4) + 4) % 4 == 2 || ((s % 4) + 4) % 4 == 3);
    };
    auto product_disc = [&](i64 d1, i64 d2) {
        i64 m = sqfree_kernel(d1 * d2);
        return (m - 1) % 4 == 0 ? m : 4 * m;
    };
    for (i64 B : {150LL, 10000LL, 1000000LL, 100000000LL}) {
        std::set<std::array<i64, 3>> fields;
        // every field is caught through its two members of smallest absolute
        // value a1 <= a2, which satisfy a1^3 <= B and a1 a2^2 <= B
        for (i64 a1 = 3; a1 * a1 * a1 <= B; ++a1) {
            for (i64 a2 = a1; a1 * a2 * a2 <= B; ++a2) {
                for (i64 d1 : {a1, -a1}) {
                    if (!fundamental(d1)) continue;
                    for (i64 d2 : {a2, -a2}) {
                        if (d2 == d1 || !fundamental(d2)) continue;
                        i64 d3 = product_disc(d1, d2);
                        i128 prod = static_cast<i128>(std::abs(d1)) * std::abs(d2) * std::abs(d3);
                        if (prod > B) continue;
                        std::array<i64, 3> key{d1, d2, d3};
                        std::sort(key.begin(), key.end());
                        fields.insert(key);
                    }
                }
            }
        }
        auto rows = density_scan(parse_group_spec("C2xC2"), {B}, 1, 2, {2}, 2);
        CHECK(rows[0].total == static_cast<i64>(fields.size()) * 6);
    }
}

TEST_CASE("density scan refuses cyclic Q-Sylow groups") {
    CHECK_THROWS_AS(density_scan(FinAbGroup::from_factors({4}), {100}, 1, 2, {}, 1),
                    std::invalid_argument);
}

TEST_CASE("trend helper") {
    CHECK(trend_non_increasing({3, 2, 1}, {true, true, true}));
    CHECK(trend_non_increasing({3, 2, 2.1}, {true, true, true}));      // one small inversion
    CHECK_FALSE(trend_non_increasing({3, 2, 3.5}, {true, true, true}));  // large inversion
    CHECK_FALSE(trend_non_increasing({1, 1.05, 1.1}, {true, true, true}));  // two inversions
    CHECK(trend_non_increasing({9, 2, 1}, {false, true, true}));  // no-data rows skipped
}
