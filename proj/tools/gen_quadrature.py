#!/usr/bin/env python3
"""Refine symmetric positive triangle rules (Dunavant orbit layouts) to full
double precision by Gauss-Newton on the monomial moment equations.

Prints the C++ initializer tables used by core/src/quadrature.cpp.
"""
import mpmath as mp

mp.mp.dps = 50

# orbit kinds: ('c', w) centroid, ('a', a, w) -> (a,a,1-2a), ('ab', a, b, w) -> perms of (a,b,1-a-b)
# starting values: Dunavant (1985); weights relative to unit area
RULES = {
    1: [('c', 1.0)],
    2: [('a', 1.0 / 6.0, 1.0 / 3.0)],
    4: [('a', 0.445948490915965, 0.223381589678011),
        ('a', 0.091576213509771, 0.109951743655322)],
    5: [('c', 0.225),
        ('a', 0.470142064105115, 0.132394152788506),
        ('a', 0.101286507323456, 0.125939180544827)],
    6: [('a', 0.249286745170910, 0.116786275726379),
        ('a', 0.063089014491502, 0.050844906370207),
        ('ab', 0.310352451033784, 0.053145049844817, 0.082851075618374)],
    8: [('c', 0.144315607677787),
        ('a', 0.459292588292723, 0.095091634267285),
        ('a', 0.170569307751760, 0.103217370534718),
        ('a', 0.050547228317031, 0.032458497623198),
        ('ab', 0.263112829634638, 0.008394777409958, 0.027230314174435)],
    9: [('c', 0.097135796282799),
        ('a', 0.489682519198738, 0.031334700227139),
        ('a', 0.437089591492937, 0.077827541004774),
        ('a', 0.188203535619033, 0.079647738927210),
        ('a', 0.044729513394453, 0.025577675658698),
        ('ab', 0.221962989160766, 0.036838412054736, 0.043283539377289)],
    10: [('c', 0.090817990382754),
         ('a', 0.485577633383657, 0.036725957756467),
         ('a', 0.109481575485037, 0.045321059435528),
         ('ab', 0.141707219414880, 0.307939838764121, 0.072757916845420),
         ('ab', 0.025003534762686, 0.246672560639903, 0.028327242531057),
         ('ab', 0.009540815400299, 0.066803251012200, 0.009421666963733)],
}


def points(orbits):
    pts = []
    for o in orbits:
        if o[0] == 'c':
            t = mp.mpf(1) / 3
            pts.append(((t, t, t), o[1]))
        elif o[0] == 'a':
            a, w = o[1], o[2]
            c = 1 - 2 * a
            for p in [(a, a, c), (a, c, a), (c, a, a)]:
                pts.append((p, w))
        else:
            a, b, w = o[1], o[2], o[3]
            c = 1 - a - b
            for p in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]:
                pts.append((p, w))
    return pts


def params(orbits):
    v = []
    for o in orbits:
        v.extend(mp.mpf(x) for x in o[1:])
    return v


def rebuild(orbits, v):
    out, k = [], 0
    for o in orbits:
        n = len(o) - 1
        out.append((o[0],) + tuple(v[k:k + n]))
        k += n
    return out


def residual(orbits, v, deg):
    ob = rebuild(orbits, v)
    pts = points(ob)
    r = []
    for i in range(deg + 1):
        for j in range(deg + 1 - i):
            exact = mp.factorial(i) * mp.factorial(j) / mp.factorial(i + j + 2) * 2  # unit-area normalized
            s = mp.mpf(0)
            for (l0, l1, l2), w in pts:
                s += w * l1 ** i * l2 ** j
            r.append(s - exact)
    return r


def refine(orbits, deg):
    v = params(orbits)
    for _ in range(60):
        r = residual(orbits, v, deg)
        nr = mp.sqrt(sum(x * x for x in r))
        if nr < mp.mpf(10) ** -45:
            break
        h = mp.mpf(10) ** -25
        J = mp.matrix(len(r), len(v))
        for k in range(len(v)):
            vp = list(v)
            vp[k] += h
            rp = residual(orbits, vp, deg)
            for i in range(len(r)):
                J[i, k] = (rp[i] - r[i]) / h
        JT = J.T
        dv = mp.lu_solve(JT * J, JT * mp.matrix(r))
        v = [v[k] - dv[k] for k in range(len(v))]
    return rebuild(orbits, v), nr


for deg, orbits in RULES.items():
    ob, nr = refine(orbits, deg)
    print(f"// degree {deg}: moment residual {mp.nstr(nr, 3)}")
    for o in ob:
        vals = ", ".join(mp.nstr(x, 20) for x in o[1:])
        print(f"  {{'{o[0]}', {{{vals}}}}},")
