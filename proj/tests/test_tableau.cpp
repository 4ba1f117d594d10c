#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tsglm/methods.hpp"
#include "tsglm/tableau.hpp"
#include "tsglm/tableau_io.hpp"

using namespace tsglm;

namespace {

bool has_violation(const std::vector<Violation>& v, const std::string& what) {
    for (const auto& x : v)
        if (x.condition == what) return true;
    return false;
}

}  // namespace

TEST_CASE("built-in methods validate clean") {
    CHECK(validate(make_order4()).empty());
    CHECK(validate(make_order5()).empty());
    CHECK(validate(make_starter()).empty());
    const Poly<Rational> a2 = Poly<Rational>::monomial(2, Rational(1));
    CHECK(validate(make_order4(a2, a2)).empty());
}

TEST_CASE("validate reports named conditions") {
    auto t = make_order4();
    t.v = Poly<Rational>::identity();  // v(0) = 0
    CHECK(has_violation(validate(t), "v(0) != 1"));

    auto t2 = make_order4();
    t2.c[1] = Rational(-1);
    CHECK(has_violation(validate(t2), "c[2] < 0"));

    auto t3 = make_order4();
    t3.u[1] = Poly<Rational>::identity();
    CHECK(has_violation(validate(t3), "u[2](0) != 1"));

    auto t4 = make_order4();
    t4.b[0] = Poly<Rational>::one();
    CHECK(has_violation(validate(t4), "b[1](0) != 0"));
}

TEST_CASE("is_explicit") {
    CHECK(is_explicit(make_order5()));
    CHECK(is_explicit(make_order4()));
    CHECK(is_explicit(make_starter()));

    auto t = make_order4();
    t.a[0][0] = Poly<Rational>::identity();
    CHECK_FALSE(is_explicit(t));

    Tableau<Rational> one_stage = Tableau<Rational>::empty("trivial", 1);
    CHECK(is_explicit(one_stage));
}

TEST_CASE("is_one_step") {
    CHECK(is_one_step(make_starter()));
    CHECK_FALSE(is_one_step(make_order5()));  // a~21 != 0

    auto t = make_starter();
    t.u[1] = Poly<Rational>::identity();  // v = 1, b~ = 0 but u2 = alpha
    CHECK_FALSE(is_one_step(t));
}

TEST_CASE("distinct abscissae grouping") {
    auto t = make_order4();  // c = (0, 1)
    auto d = distinct_abscissae(t);
    REQUIRE(d.c_star.size() == 2);
    CHECK(d.c_star[0] == Rational(0));
    CHECK(d.c_star[1] == Rational(1));
    CHECK(d.groups[0] == std::vector<int>{0});
    CHECK(d.groups[1] == std::vector<int>{1});

    Tableau<Rational> t3 = Tableau<Rational>::empty("t3", 3);
    t3.c = {Rational(0), Rational(1, 2), Rational(1, 2)};
    auto d3 = distinct_abscissae(t3);
    REQUIRE(d3.c_star.size() == 2);
    CHECK(d3.c_star[1] == Rational(1, 2));
    CHECK(d3.groups[1] == std::vector<int>{1, 2});

    Tableau<Rational> t1 = Tableau<Rational>::empty("t1", 1);
    t1.c = {Rational(1)};
    auto d1 = distinct_abscissae(t1);
    CHECK(d1.c_star == std::vector<Rational>{Rational(1)});
    CHECK(d1.groups == std::vector<std::vector<int>>{{0}});

    // quad comparison path: order5 has c = (0, (11-sqrt41)/10)
    auto d5 = distinct_abscissae(make_order5());
    REQUIRE(d5.c_star.size() == 2);
    CHECK(d5.c_star[0] == Quad(0));
}

TEST_CASE("file round-trip is bit-exact") {
    SUBCASE("rational tableaux") {
        for (const auto& t : {make_order4(), make_starter(),
                              make_order4(Poly<Rational>::monomial(3, Rational(2, 7)),
                                          Poly<Rational>::monomial(2, Rational(-5, 3)))}) {
            const std::string text = serialize(t, 4, 3);
            const LoadedTableau lt = parse_tableau_string(text);
            REQUIRE_FALSE(lt.is_quad());
            CHECK(std::get<Tableau<Rational>>(lt.tableau) == t);
            CHECK(lt.declared_order == 4);
            CHECK(lt.declared_stage_order == 3);
            // serializing the parse reproduces the text byte for byte
            CHECK(serialize(lt) == text);
        }
    }
    SUBCASE("quad tableau") {
        const auto t = make_order5();
        const LoadedTableau lt = parse_tableau_string(serialize(t, 5, 4));
        REQUIRE(lt.is_quad());
        CHECK(std::get<Tableau<Quad>>(lt.tableau) == t);
    }
}

TEST_CASE("parser reports line numbers on malformed input") {
    auto expect_parse_error = [](const std::string& text, int line) {
        try {
            (void)parse_tableau_string(text);
            FAIL("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_parse_error("nonsense\n", 1);
    expect_parse_error("tsglm-tableau v1\nscalar = rational\nstages = 1\nc 0\n", 4);
    expect_parse_error("tsglm-tableau v1\nscalar = rational\nstages = 1\nc = 1/0x\n", 4);
    expect_parse_error("tsglm-tableau v1\nscalar = rational\nstages = 2\nc = 0\n", 4);
    expect_parse_error(
        "tsglm-tableau v1\nscalar = sqrt41\nstages = 1\nc = 0\nu[1] = (1,2sqrt41\n", 5);
    expect_parse_error("tsglm-tableau v1\nscalar = rational\nstages = 1\nq[1] = 0\n", 4);
    expect_parse_error("tsglm-tableau v1\nscalar = rational\nstages = 1\nu[2] = 1\n", 4);
    // missing scalar kind
    CHECK_THROWS_AS((void)parse_tableau_string("tsglm-tableau v1\nstages = 1\n"), ParseError);
}

TEST_CASE("comments and spacing are tolerated") {
    const std::string text =
        "tsglm-tableau v1\n"
        "# a comment\n"
        "name = demo\n"
        "scalar = rational\n"
        "stages = 1\n\n"
        "c = 0   # trailing comment\n"
        "u[1] = 1\n"
        "v = 1\n"
        "b[1] = 0 1\n";
    const auto lt = parse_tableau_string(text);
    const auto& t = std::get<Tableau<Rational>>(lt.tableau);
    CHECK(t.name == "demo");
    CHECK(t.s == 1);
    CHECK(t.b[0] == Poly<Rational>::identity());
    CHECK(t.b_tilde[0].is_zero());  // omitted entries are zero
}
