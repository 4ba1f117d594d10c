#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tsglm/poly.hpp"

using namespace tsglm;

namespace {

using PR = Poly<Rational>;
using PD = Poly<double>;

Rational rat(long long n, long long d = 1) { return {n, d}; }

/// Independent convolution oracle for products.
PR conv_oracle(const PR& p, const PR& q) {
    if (p.degree() < 0 || q.degree() < 0) return {};
    std::vector<Rational> c(static_cast<size_t>(p.degree() + q.degree() + 1), Rational(0));
    for (int i = 0; i <= p.degree(); ++i)
        for (int j = 0; j <= q.degree(); ++j)
            c[static_cast<size_t>(i + j)] += p[static_cast<size_t>(i)] * q[static_cast<size_t>(j)];
    return PR(std::move(c));
}

PR random_poly(std::mt19937& rng, int max_deg = 4) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<long long> num(-8, 8);
    std::uniform_int_distribution<long long> den(1, 6);
    std::vector<Rational> c(static_cast<size_t>(deg(rng)) + 1, Rational(0));
    for (auto& x : c) x = rat(num(rng), den(rng));
    return PR(std::move(c));
}

}  // namespace

TEST_CASE("rational arithmetic basics") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(-2, -4) == rat(1, 2));
    CHECK(rat(2, -4) == rat(-1, 2));
    CHECK((rat(1, 3) + rat(1, 6)) == rat(1, 2));
    CHECK((rat(1, 3) * rat(3, 5)) == rat(1, 5));
    CHECK((rat(1, 3) / rat(2, 3)) == rat(1, 2));
    CHECK(rat(1, 3) < rat(1, 2));
    CHECK(rat(-1, 3) > rat(-1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(rat(1) / rat(0), std::invalid_argument);
    CHECK(rat(7).str() == "7");
    CHECK(rat(-3, 4).str() == "-3/4");
}

TEST_CASE("rational overflow is loud") {
    const Rational big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, std::overflow_error);
    // reducible products that stay in range must not throw
    CHECK((Rational(1LL << 40) * Rational(1, 1LL << 40)) == rat(1));
}

TEST_CASE("quad field arithmetic") {
    const Quad r41 = Quad::sqrt41();
    CHECK((r41 * r41) == Quad(41));
    const Quad c2(rat(11, 10), rat(-1, 10));  // (11 - sqrt41)/10
    // 5 c^2 - 11 c + 4 = 0 exactly
    CHECK((Quad(5) * c2 * c2 - Quad(11) * c2 + Quad(4)).is_zero());
    // closure of division and exact round trip
    const Quad x(rat(3, 7), rat(-2, 5));
    const Quad y(rat(-1, 3), rat(4, 9));
    CHECK(((x / y) * y) == x);
    CHECK_THROWS_AS(x / Quad(0), std::invalid_argument);

    // exact ordering through the sign rule
    CHECK(c2.sign() == 1);
    CHECK((c2 - Quad(1)).sign() == -1);
    CHECK(Quad(rat(-640, 100), rat(1)).sign() > 0);   // sqrt41 > 6.4
    CHECK(Quad(rat(-641, 100), rat(1)).sign() < 0);   // sqrt41 < 6.41
    CHECK(c2 < Quad(rat(1, 2)));

    // conversion accuracy: c2 in double, against the frozen digits
    const double c2d = (11.0 - std::sqrt(41.0)) / 10.0;
    CHECK(c2.to_double() == doctest::Approx(c2d).epsilon(1e-15));
    CHECK(std::abs(c2.to_double() - 0.45968757625671515) < 1e-15);
}

TEST_CASE("poly add/sub examples") {
    const PR p({rat(1), rat(1)});   // 1 + a
    const PR q({rat(-1), rat(1)});  // -1 + a
    CHECK((p + q) == PR({rat(0), rat(2)}));
    CHECK((p + PR{}) == p);
    const PR a2 = PR::monomial(2, rat(1));
    const PR a3 = PR::monomial(3, rat(1));
    CHECK((a2 + a3) == PR({rat(0), rat(0), rat(1), rat(1)}));
    CHECK((p - p).is_zero());
    CHECK((p - p).degree() == -1);  // canonical zero
}

TEST_CASE("poly multiplication examples") {
    const PR p({rat(1), rat(1)});
    const PR q({rat(1), rat(-1)});
    CHECK((p * q) == PR({rat(1), rat(0), rat(-1)}));  // 1 - a^2
    CHECK((p * PR::one()) == p);
    // (a+1)^2 a^2 = a^4 + 2a^3 + a^2, against the convolution oracle
    const PR lhs = p.pow(2) * PR::monomial(2, rat(1));
    CHECK(lhs == PR({rat(0), rat(0), rat(1), rat(2), rat(1)}));
    CHECK(lhs == conv_oracle(conv_oracle(p, p), PR::monomial(2, rat(1))));
    CHECK((p * q).degree() == p.degree() + q.degree());
}

TEST_CASE("poly evaluation examples") {
    CHECK(PR::monomial(2, rat(1)).eval(rat(1)) == rat(1));
    CHECK(PD{}.eval(0.37) == 0.0);
    // 1 - 2a + 3a^2 at 1/2: direct substitution gives 3/4
    const PR p({rat(1), rat(-2), rat(3)});
    CHECK(p.eval(rat(1, 2)) == rat(3, 4));
}

TEST_CASE("poly is_zero with tolerance") {
    CHECK(PR{}.is_zero());
    CHECK(PD({0.0, 1e-18}).is_zero(1e-12));
    CHECK_FALSE(PR::monomial(2, rat(1)).is_zero());
    CHECK_FALSE(PD({0.0, 1e-10}).is_zero(1e-12));
}

TEST_CASE("ring axioms on randomized rational polynomials") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 60; ++trial) {
        const PR p = random_poly(rng), q = random_poly(rng), s = random_poly(rng);
        CHECK(((p + q) + s) == (p + (q + s)));
        CHECK((p * (q + s)) == (p * q + p * s));
        CHECK((p * q) == (q * p));
        CHECK((p * q) == conv_oracle(p, q));
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const PR p = random_poly(rng), q = random_poly(rng);
        // exact in rational arithmetic
        for (long long k = 0; k <= 4; ++k) {
            const Rational a(k, 4);
            CHECK((p * q).eval(a) == p.eval(a) * q.eval(a));
        }
        // 1e-12 relative in double arithmetic
        const PD pd = to_double_poly(p), qd = to_double_poly(q);
        for (int k = 0; k < 100; ++k) {
            const double a = unif(rng);
            const double lhs = (pd * qd).eval(a);
            const double rhs = pd.eval(a) * qd.eval(a);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("antiderivative") {
    // d/da of the antiderivative recovers the polynomial: check on values
    const PR p({rat(1), rat(-2), rat(3)});
    const PR ad = p.antiderivative();
    CHECK(ad[0] == rat(0));
    CHECK(ad == PR({rat(0), rat(1), rat(-1), rat(1)}));
}
