"""Independent reference computations for the values frozen in the C++ tests.

Plain Python with fractions.Fraction; shares no code with the library.
Run: python3 tests/oracles/oracles.py
"""
from fractions import Fraction as F
from itertools import product
import math

pts = [1, 2, 3, 4]


def p1(x, y):
    if x != y:
        return F((x - y) ** 2 + max(x, y))
    return F(0) if x == 1 else F(x)


T = {1: 1, 2: 1, 3: 2, 4: 2}
T_printed = {1: 1, 2: 1, 3: 3, 4: 2}

# smallest s with p(x,y) + p(z,z) <= s (p(x,z) + p(z,y)); first triple at the max
best, arg = F(0), None
for x, y, z in product(pts, repeat=3):
    den = p1(x, z) + p1(z, y)
    if den == 0:
        continue
    r = (p1(x, y) + p1(z, z)) / den
    if r > best:
        best, arg = r, (x, y, z)
print("minimal_s", best, arg)

# first pm4 violation at s = 1 and the worst one
viol = [(x, y, z) for x, y, z in product(pts, repeat=3) if p1(x, y) + p1(z, z) > p1(x, z) + p1(z, y)]
print("pm4 s=1 violations", len(viol), "first", viol[0])
print("pm4 s=1 (1,4,2):", p1(1, 4) + p1(2, 2), ">", p1(1, 2) + p1(2, 4))

# ultra: p(x,y) + p(z,z) <= max(p(x,z), p(z,y)); first violation
ultra = [(x, y, z) for x, y, z in product(pts, repeat=3) if p1(x, y) + p1(z, z) > max(p1(x, z), p1(z, y))]
print("ultra first violation", ultra[0], "count", len(ultra))


def scan(num, den):
    best, arg = None, None
    for x, y in product(pts, repeat=2):
        n, d = num(x, y), den(x, y)
        if d == 0:
            assert n == 0
            continue
        if best is None or n / d > best:
            best, arg = n / d, (x, y)
    return best, arg


print("banach", scan(lambda x, y: p1(T[x], T[y]), p1))
print("chatterjea", scan(lambda x, y: p1(T[x], T[y]), lambda x, y: p1(x, T[y]) + p1(y, T[x])))
print("ch2", scan(lambda x, y: p1(T[x], T[y]), lambda x, y: max(p1(x, y), p1(x, T[y]), p1(y, T[x]))))
eq = None
for x in pts:
    n, d = p1(T[x], T[T[x]]), p1(x, T[x])
    if d == 0:
        continue
    if eq is None or n / d > eq[0]:
        eq = (n / d, x)
print("eq211 (p(Tx,T2x)/p(x,Tx))", eq)
print("fixed points", [x for x in pts if T[x] == x], "printed", [x for x in pts if T_printed[x] == x])


def powmap(m, n):
    def f(x):
        for _ in range(n):
            x = m[x]
        return x
    return f


T2 = powmap(T, 2)
print("K2 example1", max((p1(T2(x), T2(y)) / p1(x, y) for x, y in product(pts, repeat=2) if p1(x, y) != 0)))

# orbit from 4, certificate and tail bound
orbit = [4]
for _ in range(3):
    orbit.append(T[orbit[-1]])
b = [p1(orbit[i], orbit[i + 1]) for i in range(3)]
print("orbit", orbit, "b", b)
mu, s = F(1, 2), F(15, 11)
print("tail bound n=1", s * mu / (1 - s * mu) * b[0])

# three-point chain
cp = ["a", "b", "c"]
d = {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 2}


def pc(x, y):
    if x == y:
        return F(0)
    return F(d.get((x, y), d.get((y, x))))


Tc = {"a": "a", "b": "a", "c": "b"}
lam, n, K = F(3, 2), 2, F(1, 4)


def pprime(x, y):
    tot, w = F(0), F(1)
    for _ in range(n):
        tot += w * pc(x, y)
        x, y, w = Tc[x], Tc[y], w * lam
    return tot


def h(x, y, terms=60):
    tot, w = F(0), F(1)
    for _ in range(terms):
        tot += w * pc(x, y)
        x, y, w = Tc[x], Tc[y], w * lam
    return tot


print("pprime ab bc ac", pprime("a", "b"), pprime("b", "c"), pprime("a", "c"))
print("h == pprime", all(h(x, y) == pprime(x, y) for x, y in product(cp, repeat=2)))
print("sandwich factor", 1 / (1 - lam ** n * K))
print("chain banach n=1", max(pc(Tc[x], Tc[y]) / pc(x, y) for x, y in product(cp, repeat=2) if pc(x, y) != 0))
print("identity check", all(
    pprime(Tc[x], Tc[y]) == (pprime(x, y) - pc(x, y)) / lam + lam ** (n - 1) * pc(powmap(Tc, n)(x), powmap(Tc, n)(y))
    for x, y in product(cp, repeat=2)))
# p' for Example 1 with n = 2, lambda = 5
lam5 = F(5)
pp1 = {(x, y): p1(x, y) + lam5 * p1(T[x], T[y]) for x, y in product(pts, repeat=2)}
print("example1 pprime(3,4), (1,4)", pp1[(3, 4)], pp1[(1, 4)])

# |x-y|^2 on {0,1,2}
q = [0, 1, 2]
best, arg = F(0), None
for x, y, z in product(q, repeat=3):
    num = F((x - y) ** 2)
    den = F((x - z) ** 2 + (z - y) ** 2)
    if den == 0:
        continue
    if num / den > best:
        best, arg = num / den, (x, y, z)
print("sq metric minimal s", best, arg)

# fixed point of exp(x - 2) by bisection
lo, hi = 0.0, 1.0
for _ in range(200):
    mid = (lo + hi) / 2
    if mid - math.exp(mid - 2) < 0:
        lo = mid
    else:
        hi = mid
print("u", repr(lo), "lambda1", math.exp(-2))

# lemma sequences
N = 30
a = [F(k + 1, 2 ** k) for k in range(N + 1)]
c = [F(1, 2 ** k) for k in range(N + 1)]
print("lemma premise", all(a[k + 1] <= F(1, 2) * a[k] + c[k] for k in range(N)), "a_30", a[N], float(a[N]))
print("a_N < 1e-6 from N =", next(k for k in range(200) if F(k + 1, 2 ** k) < F(1, 10 ** 6)))

# main3 lhs
for s_, l1 in [(F(1), F(3, 4)), (F(2), F(1, 2))]:
    print("main3", s_, l1, 2 * s_ * l1)
