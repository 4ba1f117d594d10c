#include "tsglm/methods.hpp"

#include <stdexcept>

namespace tsglm {

namespace {

template <Scalar S>
Poly<S> alpha_plus_1() {
    return Poly<S>({scalar_traits<S>::one(), scalar_traits<S>::one()});
}

}  // namespace

Tableau<Rational> make_order4(const Poly<Rational>& free_at22, const Poly<Rational>& free_bt2) {
    if (!free_at22.eval(Rational(0)).is_zero() || !free_bt2.eval(Rational(0)).is_zero())
        throw std::invalid_argument("make_order4: free parameters must vanish at alpha = 0");

    using P = Poly<Rational>;
    const P al = P::identity();
    const P ap1 = alpha_plus_1<Rational>();
    const P ap1_sq = ap1 * ap1;
    const P al_sq = al * al;

    Tableau<Rational> t = Tableau<Rational>::empty("order4", 2);
    t.c = {Rational(0), Rational(1)};
    t.u[0] = P::one();
    t.u[1] = -(P({Rational(-1), Rational(2)}) * ap1_sq);          // -(2a - 1)(a+1)^2
    t.v = P({Rational(-1), Rational(1)}).pow(2) * ap1_sq;         // (a-1)^2 (a+1)^2
    t.a_tilde[1][0] = al_sq * ap1;                                // a^2 (a+1)
    t.a_tilde[1][1] = free_at22;
    t.a[1][0] = al * ap1_sq - free_at22;
    t.b_tilde[0] = -(al_sq * ap1 * P({Rational(-7), Rational(5)})) / Rational(12);
    t.b_tilde[1] = free_bt2;
    t.b[0] = -(al * P({Rational(-3), Rational(2)}) * ap1_sq) / Rational(3) - free_bt2;
    t.b[1] = (al_sq * ap1_sq) / Rational(12);
    return t;
}

Tableau<Quad> make_order5() {
    using P = Poly<Quad>;
    const Quad c2(Rational(11, 10), Rational(-1, 10));  // (11 - sqrt41)/10
    const Quad one(1);
    const P al = P::identity();
    const P ap1 = alpha_plus_1<Quad>();
    const P ap1_sq = ap1 * ap1;
    const P al_sq = al * al;

    const Quad c2sq = c2 * c2;
    const Quad five_c2sq_m1 = Quad(5) * c2sq - one;
    const Quad two_c2_m1 = Quad(2) * c2 - one;
    const Quad c2_m1 = c2 - one;
    const Quad c2_p1 = c2 + one;

    Tableau<Quad> t = Tableau<Quad>::empty("order5", 2);
    t.c = {Quad(0), c2};
    t.u[0] = P::one();
    // u2 = (a+1)^2 (1 - 2a + 3a^2/(2c2-1))
    t.u[1] = ap1_sq * P({one, Quad(-2), Quad(3) / two_c2_m1});
    // v = -(a+1)^2 [ (10a-5)c2^2 - 15 c2 a^2 + (a+1)(6a^2 - 3a + 1) ] / (5c2^2 - 1)
    {
        P inner = P({Quad(-5), Quad(10)}) * c2sq;
        inner -= P::monomial(2, Quad(15) * c2);
        inner += ap1 * P({one, Quad(-3), Quad(6)});
        t.v = -(ap1_sq * inner) / five_c2sq_m1;
    }
    // a~21 = a^2(a+1) - a^2(a+1)^2 (3c2-1) / (2c2(2c2-1))
    t.a_tilde[1][0] =
        al_sq * ap1 - (al_sq * ap1_sq) * ((Quad(3) * c2 - one) / (Quad(2) * c2 * two_c2_m1));
    // a~22 = a^2(a+1)^2 / (2c2(c2-1)(2c2-1))
    t.a_tilde[1][1] = (al_sq * ap1_sq) / (Quad(2) * c2 * c2_m1 * two_c2_m1);
    // b~1 = a^2(a+1)[20c2^4 - (30a+10)c2^3 + (12a^2+3a-13)c2^2 + (4a^2+11a+3)c2
    //                - 2a(a+1)] / (4c2(5c2^2-1)(c2+1))
    {
        P inner = P::constant(Quad(20) * c2sq * c2sq);
        inner -= P({Quad(10), Quad(30)}) * (c2sq * c2);
        inner += P({Quad(-13), Quad(3), Quad(12)}) * c2sq;
        inner += P({Quad(3), Quad(11), Quad(4)}) * c2;
        inner -= Quad(2) * (al * ap1);
        t.b_tilde[0] = (al_sq * ap1 * inner) / (Quad(4) * c2 * five_c2sq_m1 * c2_p1);
    }
    // b~2 = a^2(a+1)^2 [5c2^2 - (4a-3)c2 - 2a] / (4c2(5c2^2-1)(c2-1))
    {
        P inner = P::constant(Quad(5) * c2sq) - P({Quad(-3), Quad(4)}) * c2 - P({Quad(0), Quad(2)});
        t.b_tilde[1] = (al_sq * ap1_sq * inner) / (Quad(4) * c2 * five_c2sq_m1 * c2_m1);
    }
    // a21 = a(a+1)^2 (1 - a(3c2-2)/(2(2c2-1)(c2-1)))
    t.a[1][0] = al * ap1_sq *
                P({one, -(Quad(3) * c2 - Quad(2)) / (Quad(2) * two_c2_m1 * c2_m1)});
    // b1 = a(a+1)^2 [20c2^4 - (30a+20)c2^3 + (12a^2+21a-4)c2^2 + (-4a^2+3a+4)c2
    //                - 2a(a+1)] / (4c2(5c2^2-1)(c2-1))
    {
        P inner = P::constant(Quad(20) * c2sq * c2sq);
        inner -= P({Quad(20), Quad(30)}) * (c2sq * c2);
        inner += P({Quad(-4), Quad(21), Quad(12)}) * c2sq;
        inner += P({Quad(4), Quad(3), Quad(-4)}) * c2;
        inner -= Quad(2) * (al * ap1);
        t.b[0] = (al * ap1_sq * inner) / (Quad(4) * c2 * five_c2sq_m1 * c2_m1);
    }
    // b2 = -a^2(a+1)^2 [5c2^2 - (4a+7)c2 + 2a+2] / (4c2(5c2^2-1)(c2+1))
    {
        P inner = P::constant(Quad(5) * c2sq) - P({Quad(7), Quad(4)}) * c2 + P({Quad(2), Quad(2)});
        t.b[1] = -(al_sq * ap1_sq * inner) / (Quad(4) * c2 * five_c2sq_m1 * c2_p1);
    }
    return t;
}

Tableau<Rational> make_starter() {
    using P = Poly<Rational>;
    Tableau<Rational> t = Tableau<Rational>::empty("starter", 4);
    t.c = {Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)};
    // classical 3/8-rule stage values, reached by linear ramps a_ij(c_i) = A_ij
    t.a[1][0] = P({Rational(0), Rational(1)});
    t.a[2][0] = P({Rational(0), Rational(-1, 2)});
    t.a[2][1] = P({Rational(0), Rational(3, 2)});
    t.a[3][0] = P({Rational(0), Rational(1)});
    t.a[3][1] = P({Rational(0), Rational(-1)});
    t.a[3][2] = P({Rational(0), Rational(1)});
    // continuous weights: integrals of the Lagrange basis on {0,1/3,2/3,1}
    t.b[0] = P({Rational(0), Rational(1), Rational(-11, 4), Rational(3), Rational(-9, 8)});
    t.b[1] = P({Rational(0), Rational(0), Rational(9, 2), Rational(-15, 2), Rational(27, 8)});
    t.b[2] = P({Rational(0), Rational(0), Rational(-9, 4), Rational(6), Rational(-27, 8)});
    t.b[3] = P({Rational(0), Rational(0), Rational(1, 2), Rational(-3, 2), Rational(9, 8)});
    return t;
}

BuiltinMethod builtin_method(const std::string& name) {
    if (name == "order4") return {make_order4(), 4, 3};
    if (name == "order5") return {make_order5(), 5, 4};
    // the starter's endpoint (discrete) order is 4, but the theorem chain
    // certifies uniform order 2 at stage order 1; metadata carries the
    // certified numbers
    if (name == "starter") return {make_starter(), 2, 1};
    throw std::invalid_argument("unknown method '" + name +
                                "' (expected order4, order5 or starter)");
}

const std::vector<std::string>& builtin_method_names() {
    static const std::vector<std::string> names = {"order4", "order5", "starter"};
    return names;
}

}  // namespace tsglm
