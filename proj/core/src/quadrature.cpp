#include "eqfem/quadrature.hpp"

#include <cmath>
#include <initializer_list>

#include "eqfem/error.hpp"

namespace eqfem {

namespace {

// Orbit tables generated by tools/gen_quadrature.py; weights relative to unit area.
struct Orbit {
  char kind;  // 'c' centroid, 'a' (a, a, 1-2a), 'b' permutations of (a, b, 1-a-b)
  double a, b, w;
};

const std::vector<Orbit>& orbits(int degree) {
  static const std::vector<Orbit> d1{{'c', 0, 0, 1.0}};
  static const std::vector<Orbit> d2{{'a', 0.16666666666666666667, 0, 0.33333333333333333333}};
  static const std::vector<Orbit> d4{
      {'a', 0.44594849091596488632, 0, 0.2233815896780114657},
      {'a', 0.09157621350977074346, 0, 0.10995174365532186764},
  };
  static const std::vector<Orbit> d5{
      {'c', 0, 0, 0.225},
      {'a', 0.47014206410511508977, 0, 0.13239415278850618074},
      {'a', 0.1012865073234563388, 0, 0.1259391805448271526},
  };
  static const std::vector<Orbit> d6{
      {'a', 0.24928674517091042129, 0, 0.11678627572637936603},
      {'a', 0.06308901449150222834, 0, 0.050844906370206816921},
      {'b', 0.31035245103378440542, 0.053145049844816947353, 0.082851075618373575194},
  };
  static const std::vector<Orbit> d8{
      {'c', 0, 0, 0.14431560767778716825},
      {'a', 0.45929258829272315603, 0, 0.095091634267284624794},
      {'a', 0.17056930775176020662, 0, 0.10321737053471825028},
      {'a', 0.050547228317030975458, 0, 0.032458497623198080311},
      {'b', 0.26311282963463811342, 0.0083947774099576053372, 0.027230314174434994265},
  };
  static const std::vector<Orbit> d9{
      {'c', 0, 0, 0.097135796282798833819},
      {'a', 0.48968251919873762778, 0, 0.031334700227139070537},
      {'a', 0.43708959149293663727, 0, 0.077827541004774279317},
      {'a', 0.18820353561903273024, 0, 0.079647738927210253033},
      {'a', 0.044729513394452709865, 0, 0.025577675658698031262},
      {'b', 0.22196298916076569568, 0.036838412054736283635, 0.043283539377289377289},
  };
  static const std::vector<Orbit> d10{
      {'c', 0, 0, 0.090817990382753580095},
      {'a', 0.48557763338365737737, 0, 0.036725957756466704717},
      {'a', 0.1094815754850370548, 0, 0.045321059435527934783},
      {'b', 0.14170721941487995476, 0.30793983876412095017, 0.072757916845420108604},
      {'b', 0.025003534762686386074, 0.24667256063990269392, 0.028327242531057484837},
      {'b', 0.0095408154002994575802, 0.066803251012200265774, 0.0094216669637328234599},
  };
  switch (degree) {
    case 1: return d1;
    case 2: return d2;
    case 4: return d4;
    case 5: return d5;
    case 6: return d6;
    case 8: return d8;
    case 9: return d9;
    default: return d10;
  }
}

QuadratureRule expand(int degree) {
  QuadratureRule rule;
  rule.degree = degree;
  for (const Orbit& o : orbits(degree)) {
    const double w = 0.5 * o.w;
    if (o.kind == 'c') {
      rule.points.push_back({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, w});
    } else if (o.kind == 'a') {
      const double c = 1.0 - 2.0 * o.a;
      rule.points.push_back({{o.a, o.a, c}, w});
      rule.points.push_back({{o.a, c, o.a}, w});
      rule.points.push_back({{c, o.a, o.a}, w});
    } else {
      const double c = 1.0 - o.a - o.b;
      for (const auto& p : std::initializer_list<std::array<double, 3>>{
               {o.a, o.b, c}, {o.a, c, o.b}, {o.b, o.a, c}, {o.b, c, o.a}, {c, o.a, o.b}, {c, o.b, o.a}})
        rule.points.push_back({p, w});
    }
  }
  return rule;
}

}  // namespace

const QuadratureRule& triangle_rule(int degree) {
  EQFEM_REQUIRE(degree >= 1 && degree <= 10, "triangle_rule: degree must lie in 1..10");
  // 3 and 7 have no positive symmetric rule of minimal size in this family; use the next one up.
  static const std::array<int, 11> backing{0, 1, 2, 4, 4, 5, 6, 8, 8, 9, 10};
  static const std::array<QuadratureRule, 11> rules = [] {
    std::array<QuadratureRule, 11> r;
    for (int d : {1, 2, 4, 5, 6, 8, 9, 10}) r[static_cast<std::size_t>(d)] = expand(d);
    return r;
  }();
  return rules[static_cast<std::size_t>(backing[static_cast<std::size_t>(degree)])];
}

const EdgeRule& edge_gauss2() {
  static const EdgeRule rule{{0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)}, {0.5, 0.5}};
  return rule;
}

}  // namespace eqfem
