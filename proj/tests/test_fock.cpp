#include "qfock/fock.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qfock;

namespace {

Multipartition mp(const std::string& text) { return parse_multipartition(text); }

FockVector sb(const FockContext& ctx, const std::string& text) {
    return FockVector::standard(ctx, mp(text));
}

LaurentPoly q(long long e = 1) { return LaurentPoly::q(e); }

// independent oracle for the operator actions: counts the above/below node
// statistics by direct pairwise comparison instead of the production sweep
FockVector brute_apply_f(const FockVector& v, int i) {
    FockVector out(v.context());
    const Charge s = v.context().to_charge();
    for (const auto& [la, c] : v.terms()) {
        for (const auto& n : addable_nodes(la, i, s)) {
            long long N = 0;
            for (const auto& a : addable_nodes(la, i, s))
                if (node_above(a, n)) ++N;
            for (const auto& r : removable_nodes(la, i, s))
                if (node_above(r, n)) --N;
            out.add_term(add_node(la, n), c * LaurentPoly::q(N));
        }
    }
    return out;
}

FockVector brute_apply_e(const FockVector& v, int i) {
    FockVector out(v.context());
    const Charge s = v.context().to_charge();
    for (const auto& [la, c] : v.terms()) {
        for (const auto& n : removable_nodes(la, i, s)) {
            long long M = 0;
            for (const auto& r : removable_nodes(la, i, s))
                if (node_above(n, r)) ++M;
            for (const auto& a : addable_nodes(la, i, s))
                if (node_above(n, a)) --M;
            out.add_term(remove_node(la, n), c * LaurentPoly::q(M));
        }
    }
    return out;
}

std::vector<Multipartition> all_mps_up_to(long long n, int r) {
    std::vector<Multipartition> out;
    for (long long m = 0; m <= n; ++m)
        for (auto& x : multipartitions_of(m, r)) out.push_back(std::move(x));
    return out;
}

}  // namespace

TEST_CASE("f action, frozen examples") {
    const FockContext ctx(2, {0, 0});
    FockVector expected(ctx);
    expected.add_term(mp("1|-"), LaurentPoly(1));
    expected.add_term(mp("-|1"), q());
    CHECK(apply_f(sb(ctx, "-|-"), 0) == expected);
    CHECK(apply_f(sb(ctx, "-|-"), 1).is_zero());
}

TEST_CASE("e action, frozen examples") {
    const FockContext ctx(2, {0, 0});
    CHECK(apply_e(sb(ctx, "-|-"), 0).is_zero());
    CHECK(apply_e(sb(ctx, "1|-"), 0) == sb(ctx, "-|-").scaled(q(-1)));
    // the removable 1-node (1,2,1) of ((2),-) has the addable 1-node (2,1,1)
    // below it, so M = -1
    CHECK(apply_e(sb(ctx, "2|-"), 1) == sb(ctx, "1|-").scaled(q(-1)));
}

TEST_CASE("operator actions match the pairwise-count oracle") {
    for (int e : {2, 3}) {
        for (int r : {1, 2}) {
            std::vector<int> charge(r, 0);
            if (r == 2) charge[1] = e - 1;
            const FockContext ctx(e, charge);
            for (const auto& la : all_mps_up_to(5, r)) {
                const FockVector v = FockVector::standard(ctx, la);
                for (int i = 0; i < e; ++i) {
                    CHECK(apply_f(v, i) == brute_apply_f(v, i));
                    CHECK(apply_e(v, i) == brute_apply_e(v, i));
                }
            }
        }
    }
}

TEST_CASE("divided powers, frozen examples") {
    const FockContext ctx(2, {0, 0});
    // f_0^(2) on the vacuum: f_0^2 gives (q + q^-1) s_((1),(1)) before
    // division by [2]
    CHECK(apply_f_divided(sb(ctx, "-|-"), 0, 2) == sb(ctx, "1|1"));
    const FockVector v = apply_f(sb(ctx, "-|1"), 0);
    CHECK(apply_f_divided(v, 1, 1) == apply_f(v, 1));
}

TEST_CASE("the worked 6-term auxiliary vector") {
    const FockContext ctx(2, {0, 0});
    const FockVector a = apply_f_divided(apply_f(sb(ctx, "-|1"), 0), 1, 2);
    FockVector expected(ctx);
    expected.add_term(mp("2,1|1"), LaurentPoly(1));
    expected.add_term(mp("2|2"), q(1));
    expected.add_term(mp("2|1,1"), q(2));
    expected.add_term(mp("1,1|2"), q(2));
    expected.add_term(mp("1,1|1,1"), q(3));
    expected.add_term(mp("1|2,1"), q(4));
    CHECK(a == expected);
}

TEST_CASE("the worked 14-term auxiliary vector") {
    const FockContext ctx(2, {0, 0});
    FockVector a = sb(ctx, "-|-");
    for (int i : {0, 1, 0, 1}) a = apply_f(a, i);
    FockVector expected(ctx);
    expected.add_term(mp("4|-"), LaurentPoly(1));
    expected.add_term(mp("3,1|-"), q(1));
    expected.add_term(mp("2,1,1|-"), q(1));
    expected.add_term(mp("1,1,1,1|-"), q(2));
    expected.add_term(mp("2,1|1"), LaurentPoly(1) + q(2));
    expected.add_term(mp("2|2"), LaurentPoly(2) * q(1));
    expected.add_term(mp("2|1,1"), LaurentPoly(2) * q(2));
    expected.add_term(mp("1,1|2"), LaurentPoly(2) * q(2));
    expected.add_term(mp("1,1|1,1"), LaurentPoly(2) * q(3));
    expected.add_term(mp("1|2,1"), q(2) + q(4));
    expected.add_term(mp("-|4"), q(2));
    expected.add_term(mp("-|3,1"), q(3));
    expected.add_term(mp("-|2,1,1"), q(3));
    expected.add_term(mp("-|1,1,1,1"), q(4));
    CHECK(a == expected);
}

TEST_CASE("weight data, frozen examples") {
    const Charge s(2, {0, 0});
    CHECK(weight_of(mp("-|-"), s).node_counts == std::vector<long long>{0, 0});
    CHECK(weight_of(mp("2,1|1"), s).node_counts == std::vector<long long>{2, 2});
    CHECK(weight_of(mp("1|-"), s) == weight_of(mp("-|1"), s));
    CHECK(weight_of(mp("1|-"), Charge(2, {0, 1})) != weight_of(mp("-|1"), Charge(2, {0, 1})));
}

TEST_CASE("h pairing, frozen examples") {
    const Charge s(2, {0, 0});
    CHECK(h_pairing(mp("-|-"), 0, s) == 2);
    CHECK(h_pairing(mp("1|-"), 0, s) == 0);
    CHECK(h_pairing(mp("1|-"), 1, s) == 2);
}

TEST_CASE("f increments one node count and preserves the rest") {
    const FockContext ctx(3, {0, 2});
    const Charge s = ctx.to_charge();
    for (const auto& la : all_mps_up_to(4, 2)) {
        const WeightData base = weight_of(la, s);
        for (int i = 0; i < 3; ++i) {
            for (const auto& [nu, c] : apply_f(FockVector::standard(ctx, la), i).terms()) {
                WeightData expect = base;
                expect.node_counts[static_cast<size_t>(i)] += 1;
                CHECK(weight_of(nu, s) == expect);
            }
        }
    }
}

TEST_CASE("commutation [e_i, f_i] = [h] on small sizes") {
    for (int e : {2, 3}) {
        for (int r : {1, 2}) {
            std::vector<int> charge(r, 0);
            if (r == 2) charge[1] = 1;
            const FockContext ctx(e, charge);
            for (const auto& la : all_mps_up_to(5, r)) {
                const FockVector v = FockVector::standard(ctx, la);
                for (int i = 0; i < e; ++i) {
                    const FockVector lhs = apply_e(apply_f(v, i), i) - apply_f(apply_e(v, i), i);
                    const long long h = h_pairing(la, i, ctx.to_charge());
                    const LaurentPoly bracket =
                        h >= 0 ? quantum_int(h) : -quantum_int(-h);
                    CHECK(lhs == v.scaled(bracket));
                }
            }
        }
    }
}

TEST_CASE("divided powers stay exact on standard vectors") {
    const FockContext ctx(2, {0, 0});
    for (const auto& la : all_mps_up_to(4, 2)) {
        for (int i = 0; i < 2; ++i)
            for (int m = 1; m <= 3; ++m)
                CHECK_NOTHROW(apply_f_divided(FockVector::standard(ctx, la), i, m));
    }
}

TEST_CASE("non-adjacent f operators commute") {
    const FockContext ctx(5, {0});
    for (const auto& la : all_mps_up_to(6, 1)) {
        const FockVector v = FockVector::standard(ctx, la);
        CHECK(apply_f(apply_f(v, 0), 2) == apply_f(apply_f(v, 2), 0));
        CHECK(apply_f(apply_f(v, 1), 3) == apply_f(apply_f(v, 3), 1));
    }
}

TEST_CASE("vector arithmetic guards") {
    const FockContext a(2, {0, 0}), b(2, {0, 1});
    FockVector va = sb(a, "-|-");
    CHECK_THROWS_AS(va += sb(b, "-|-"), std::invalid_argument);
    CHECK_THROWS_AS(va.add_term(mp("1"), LaurentPoly(1)), std::invalid_argument);
    va.add_term(mp("1|-"), q());
    va.add_term(mp("1|-"), -q());
    CHECK(va == sb(a, "-|-"));
}
