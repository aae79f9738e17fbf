"""Reference values for the frozen test oracles.

Run with `python3 generate.py`. Every value is computed in 50-digit
arithmetic with mpmath, independently of the Rust code paths.
"""
import mpmath as mp

mp.mp.dps = 50


def phi(omega, beta, gamma, x, order=0, terms=200):
    s = mp.mpf(0)
    for k in range(order, terms):
        c = mp.rf(gamma, k) / (mp.factorial(k) * mp.gamma(omega * k + beta))
        s += c * mp.ff(k, order) * mp.mpf(x) ** (k - order)
    return s


def lam(p, r, d=0):
    o, b, g = p
    f = lambda t: phi(o, b, g, -t * t)
    return mp.diff(f, r, d) if d else f(r)


def bisect(f, a, b, it=200):
    fa = f(a)
    for _ in range(it):
        m = (a + b) / 2
        fm = f(m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return (a + b) / 2


def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


# series values
show("phi(1.5,1.2,2.5,-2)", phi(1.5, 1.2, 2.5, -2))
show("phi''(1.5,1.2,2.5,-2)", phi(1.5, 1.2, 2.5, -2, order=2))
show("phi'(1.5,1.2,2.5,-2)", phi(1.5, 1.2, 2.5, -2, order=1))

# starlike ratio of g for (1.5,1,1) at r = 0.5: 1 + r lam'/lam
p = (mp.mpf(1.5), mp.mpf(1), mp.mpf(1))
r = mp.mpf("0.5")
show("starlike_g(1.5,1,1,0.5)", 1 + r * lam(p, r, 1) / lam(p, r))

# 1 + r g''/g' for g = z cos z at r = 0.3
r = mp.mpf("0.3")
g1 = mp.cos(r) - r * mp.sin(r)
g2 = -2 * mp.sin(r) - r * mp.cos(r)
show("convex_g(2,1,1,0.3)", 1 + r * g2 / g1)

# J(1/2) for g = sin z at r = 1
r = mp.mpf(1)
show("J_half_sin(1)", (r * mp.cot(r) + 1 - r * mp.tan(r)) / 2)

# closed-form radius equations
show("r tan r = 1", bisect(lambda r: r * mp.tan(r) - 1, mp.mpf("0.5"), mp.mpf("1.2")))
show("r tan r = 1/2", bisect(lambda r: r * mp.tan(r) - mp.mpf(1) / 2, mp.mpf("0.1"), mp.mpf("1.2")))
show("tan r = 2r", bisect(lambda r: 2 * r * mp.cot(r) - 1, mp.mpf("0.5"), mp.pi / 2 - mp.mpf("1e-9")))
show("r cot r + 1 - r tan r = 0", bisect(lambda r: r * mp.cot(r) + 1 - r * mp.tan(r), mp.mpf("0.5"), mp.pi / 2 - mp.mpf("1e-9")))

# strong starlikeness of sin z, exact infinite sums via r cot r and r coth r
for rho in ["0.5", "0.9", "0.1"]:
    s = mp.sin(mp.pi * mp.mpf(rho) / 2)
    psi = lambda r: (r * mp.coth(r) - r * mp.cot(r)) / 2 + s * (2 - r * mp.cot(r) - r * mp.coth(r)) / 2 - s
    show(f"strong_sin(rho={rho})", bisect(psi, mp.mpf("1e-6"), mp.pi - mp.mpf("1e-9")))

# brackets of lambda for (1.5,1,1) on (0,20) by a fine grid scan at step 1e-3
mp.mp.dps = 30
o = mp.mpf(1.5)
xs = [mp.mpf(i) / 1000 for i in range(1, 20001, 10)]
vals = [phi(o, 1, 1, -x * x, terms=400) for x in xs]
changes = [float(xs[i]) for i in range(len(xs) - 1) if (vals[i] > 0) != (vals[i + 1] > 0)]
print("lambda(1.5,1,1) sign changes on (0,20):", changes)

# derivative of g for (1.5,1,1): lam + r lam'
def gp(x):
    return lam((o, mp.mpf(1), mp.mpf(1)), x) + x * lam((o, mp.mpf(1), mp.mpf(1)), x, 1)
xs2 = [mp.mpf(i) / 100 for i in range(1, 801)]
v2 = [gp(x) for x in xs2]
print("g'(1.5,1,1) sign changes on (0,8):", [float(xs2[i]) for i in range(len(xs2) - 1) if (v2[i] > 0) != (v2[i + 1] > 0)])

# strong starlikeness of sin z (rho = 0.5) by direct summation over the first
# 10^5 zeros n*pi, no tail: psi_N(r) = 2 sum w(a + s w)/(a^2 - w^2) - s, w = r^2
import math

s = math.sin(math.pi / 4)
A = [(n * math.pi) ** 2 for n in range(1, 100001)]


def psi_trunc(r):
    w = r * r
    return 2 * math.fsum(w * (a + s * w) / (a * a - w * w) for a in A) - s


lo, hi = 1e-6, math.pi - 1e-9
for _ in range(60):
    m = (lo + hi) / 2
    if psi_trunc(m) < 0:
        lo = m
    else:
        hi = m
print(f"strong_sin_truncated_1e5(rho=0.5) = {(lo + hi) / 2:.16g}")
