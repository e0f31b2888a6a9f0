#!/usr/bin/env python3
"""Independent recomputation of every numeric constant frozen into the C++ tests.

Everything here is computed from first principles with stdlib arithmetic only
(fractions for exact values, floats for asymptotics), deliberately NOT sharing
code with the C++ library. Run and diff against the constants in tests/.
"""
from fractions import Fraction as Fr
import math
from statistics import NormalDist

GAMMA = Fr(1, 10)
DELTA = Fr(1, 100)


# ---------------------------------------------------------------- exact side

def product_for_tails(k, tails, delta):
    """Capital product (1-delta)^heads * (1+delta)^tails, exact."""
    return (1 - delta) ** (k - tails) * (1 + delta) ** tails


def threshold_index(k, delta, bound, strict=True):
    """Smallest tails count i in [0,k] whose product beats `bound`; k+1 if none."""
    for i in range(k + 1):
        a = product_for_tails(k, i, delta)
        if (a > bound) if strict else (a >= bound):
            return i
    return k + 1


def tail_prob(k, delta, bound, strict=True, p_heads=Fr(1, 2)):
    """P(product over k tosses beats bound) — exact binomial tail."""
    i0 = threshold_index(k, delta, bound, strict)
    pt = 1 - p_heads
    return sum(Fr(math.comb(k, i)) * pt**i * p_heads ** (k - i)
               for i in range(i0, k + 1))


def enumerate_prob(k, delta, event, cond=None):
    """Full 2^k enumeration; event/cond receive the list of exact prefix products."""
    hit = 0
    total = 0
    for mask in range(1 << k):
        prods = []
        p = Fr(1)
        for j in range(k):
            c = -1 if (mask >> j) & 1 else +1   # bit set = tails
            p *= 1 - delta * c
            prods.append(p)
        if cond is not None and not cond(prods):
            continue
        total += 1
        if event(prods):
            hit += 1
    if cond is None:
        total = 1 << k
    return Fr(hit, total)


def loss_closed_even(m):      # P(X_{2m} < 0)
    return Fr(1, 2) - Fr(math.comb(2 * m, m), 2 ** (2 * m + 1))


def cond1_odd(m):             # P(X_{2m+1} < 0 | X_1 < 0)
    return Fr(1, 2) + Fr(math.comb(2 * m, m), 2 ** (2 * m + 1))


def cond2_even(m):            # P(X_{2m} < 0 | X_2 < 0)
    return Fr(1, 2) + Fr(math.comb(2 * m - 2, m - 1), 2 ** (2 * m - 1))


def cond2_odd(m):             # P(X_{2m+1} < 0 | X_2 < 0), corrected (not 1/2)
    return Fr(1, 2) + Fr(math.comb(2 * m - 1, m - 1), 2 ** (2 * m - 1))


def successive_odd(m):        # P(X_{2m+2} < 0 | X_{2m+1} < 0)
    return 1 - Fr(math.comb(2 * m + 1, m + 1), 2 ** (2 * m + 1))


def exact_block():
    print("== loss table, k = 1..12 (tail sum | closed form | conditional on X_1<0)")
    for k in range(1, 13):
        tail = tail_prob(k, DELTA, 1)
        if k % 2 == 0:
            closed = loss_closed_even(k // 2)
        else:
            closed = Fr(1, 2)
        # conditional: first toss tails, then product over k-1 must beat 1/(1+delta)
        cond = Fr(1) if k == 1 else tail_prob(k - 1, DELTA, 1 / (1 + DELTA))
        assert tail == closed, k
        print(f"  k={k:2d}  P(loss)={tail}  P(loss|X1<0)={cond}")

    print("== enumeration cross-check, k <= 14")
    for k in range(1, 15):
        e = enumerate_prob(k, DELTA, lambda pr: pr[-1] > 1)
        assert e == tail_prob(k, DELTA, 1), k
    print("  ok (matches tail sums exactly)")

    print("== threshold_index cases (bound 1, delta 1/100)")
    for k in (2, 3, 400):
        print(f"  k={k}: {threshold_index(k, DELTA, 1)}")
    # closed-form validity edges: tail threshold must equal m+1
    last_even = max(m for m in range(1, 220)
                    if threshold_index(2 * m, DELTA, 1) == m + 1)
    last_odd = max(m for m in range(1, 120)
                   if threshold_index(2 * m + 1, DELTA, 1) == m + 1)
    print(f"  last even m with threshold m+1: {last_even}")
    print(f"  last odd  m with threshold m+1: {last_odd}")

    print("== conditional given loss at 2 (corrected odd case)")
    for k in range(2, 12):
        m = k // 2
        closed = cond2_even(m) if k % 2 == 0 else cond2_odd(m)
        tail = tail_prob(k - 2, DELTA, 1 / (1 + DELTA) ** 2) if k > 2 else Fr(1)
        assert closed == tail, k
        print(f"  k={k:2d}  {closed}")
    for m in range(1, 100):
        assert cond2_odd(m) == tail_prob(2 * m - 1, DELTA, 1 / (1 + DELTA) ** 2)
        assert cond2_even(m) == tail_prob(2 * m - 2, DELTA, 1 / (1 + DELTA) ** 2) \
            if m > 1 else True
    print("  closed == generic tail for all m <= 99")

    print("== successive-loss conditionals")
    for k in range(1, 10):
        if k % 2 == 0:
            v = Fr(1)
        else:
            v = successive_odd((k - 1) // 2)
        # generic: condition on the next toss; the tails branch already implies
        # prod_k > 1/(1+d), so the joint there is just P(prod_k > 1).
        up = tail_prob(k, DELTA, 1 / (1 - DELTA)) + tail_prob(k, DELTA, 1)
        gen = up / 2 / tail_prob(k, DELTA, 1)
        assert v == gen, k
        print(f"  k={k}: {v}")

    print("== golden-ratio cutoff for certain follow-on loss")
    for d in (Fr(61, 100), Fr(7, 10)):
        p = enumerate_prob(3, d, lambda pr: pr[-1] > 1, cond=lambda pr: pr[1] > 1)
        print(f"  delta={d}: P(X3<0 | X2<0) = {p}")

    print("== exact cash-out tails (product >= 1+gamma) vs CLT")
    mu = 0.5 * math.log(1 - 0.01 ** 2)
    sig = 0.5 * (math.log(1.01) - math.log(0.99))
    for k in (500, 1000, 2000):
        ex = tail_prob(k, DELTA, 1 + GAMMA, strict=False)
        z = (-math.log(1.1) + k * mu) / (sig * math.sqrt(k))
        clt = NormalDist().cdf(z)
        print(f"  k={k}: exact={float(ex):.6f} clt={clt:.6f} |diff|={abs(clt-float(ex)):.6f}")

    print("== corridor: count of tails-counts with gamma < product < 1+gamma")
    for k in (100, 1000, 10000):
        lo = threshold_index(k, DELTA, GAMMA, strict=True)
        hi = threshold_index(k, DELTA, 1 + GAMMA, strict=False)
        print(f"  k={k}: count={hi - lo}")

    print("== exact corridor probability spot values (even k)")
    for k in (2, 10, 100, 500, 2000):
        lo = threshold_index(k, DELTA, GAMMA, strict=True)
        hi = threshold_index(k, DELTA, 1 + GAMMA, strict=False)
        p = sum(Fr(math.comb(k, i), 2 ** k) for i in range(lo, hi))
        print(f"  k={k}: {float(p):.6f}")

    print("== exact-tie cash-out: gamma=201/10000, delta=1/100")
    g = Fr(201, 10000)
    k = 1
    while (1 + DELTA) ** k < 1 + g:
        k += 1
    print(f"  first k with (1+d)^k >= 1+g: {k}  (product == bound: {(1+DELTA)**k == 1+g})")

    print("== generic-coin loss probs p=18/38, delta=1/100")
    for k in (2, 10):
        print(f"  k={k}: {tail_prob(k, DELTA, 1, p_heads=Fr(18, 38))}")


# ----------------------------------------------------------- asymptotic side

def asym_block():
    nd = NormalDist()
    for d in (0.01, 0.02):
        mu = 0.5 * math.log(1 - d * d)
        s2 = 0.25 * math.log((1 + d) / (1 - d)) ** 2
        print(f"== drift delta={d}: mu={mu:.12e} sigma2={s2:.12e} sigma={math.sqrt(s2):.12e}")

    mu = 0.5 * math.log1p(-1e-4)
    sig = 0.5 * (math.log(1.01) - math.log(0.99))
    L = math.log(1.1)

    def cashout_z(k, mu=mu, sig=sig, L=L):
        return (-L + k * mu) / (sig * math.sqrt(k))

    print("== cash-out CLT values (defaults)")
    for k in (25, 1906, 10 ** 6):
        z = cashout_z(k)
        print(f"  k={k}: z={z:.9f} p={nd.cdf(z):.9f}")

    print("== peak scan (defaults, k<=10^4)")
    best = max(range(1, 10 ** 4 + 1), key=cashout_z)
    print(f"  k*={best} p*={nd.cdf(cashout_z(best)):.9f} "
          f"z(1905..1907)={[f'{cashout_z(k):.12f}' for k in (1905, 1906, 1907)]}")

    print("== peak scan (gamma=0.1 delta=0.02, k<=10^4)")
    mu2 = 0.5 * math.log1p(-4e-4)
    sig2 = 0.5 * (math.log(1.02) - math.log(0.98))

    def z2(k):
        return (-L + k * mu2) / (sig2 * math.sqrt(k))
    best2 = max(range(1, 10 ** 4 + 1), key=z2)
    print(f"  k*={best2} p*={nd.cdf(z2(best2)):.9f} "
          f"z(475..478)={[f'{z2(k):.12f}' for k in (475, 476, 477, 478)]}")

    print("== horizon t=0.9")
    z95 = nd.inv_cdf(0.95)
    k_asym = (z95 * sig / -mu) ** 2
    k_med = math.log(0.1) / mu
    print(f"  z95={z95:.10f} asym k={k_asym:.2f} -> ceil {math.ceil(k_asym)}")
    print(f"  median crossing k={k_med:.2f} -> ceil {math.ceil(k_med)}")
    # smallest k with full reach argument >= z95, for the record
    lo, hi = 1, 1
    while (math.log(0.1) - hi * mu) / (sig * math.sqrt(hi)) < z95:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if (math.log(0.1) - mid * mu) / (sig * math.sqrt(mid)) >= z95:
            hi = mid
        else:
            lo = mid + 1
    print(f"  full-formula smallest k: {lo}")
    karg = (math.log(0.1) - 108219 * mu) / (sig * math.sqrt(108219))
    print(f"  full reach prob at k=108219: {nd.cdf(karg):.6f}")

    print("== two-tailed cash-out toss counts")
    for g, d in ((0.1, 0.01), (0.1, 0.1), (0.2, 0.01)):
        real = math.log(1 + g) / math.log(1 + d)
        print(f"  gamma={g} delta={d}: real={real:.6f} ceil={math.ceil(real)}")

    print("== all-heads capital landmarks (delta=0.01)")
    print(f"  1-0.99^10={1 - 0.99 ** 10:.6f}  1-0.99^100={1 - 0.99 ** 100:.6f}")
    k = 1
    while 1 - 0.99 ** k < 0.9:
        k += 1
    print(f"  smallest k with 1-0.99^k >= 0.9: {k}")
    print(f"  1-1.01^10={1 - 1.01 ** 10:.6f}")

    print("== variance landmarks")
    print(f"  (1.0001)^100-1={math.expm1(100 * math.log1p(1e-4)):.9f}")

    print("== bounds")
    beta = lambda g, d: (math.log(1 + g) - math.log(g)) / (math.log(1 + d) - math.log(1 - d))
    print(f"  beta(0.1,0.01)={beta(0.1, 0.01):.6f}  beta(0.1,0.1)={beta(0.1, 0.1):.6f}")
    print(f"  cash_in_bound(0.1,0.01)={0.1 + 0.01 + 0.001:.6f}  (0.0625,0.01)={0.0625 + 0.01 + 0.000625:.6f}")
    bmax = lambda k: 2 ** k * math.sqrt(2 / (math.pi * k)) * math.exp(1 / (12 * k))
    print(f"  binomial_max_bound(2)={bmax(2):.9f} (C(2,1)=2)")
    print(f"  binomial_max_bound(10)={bmax(10):.6f} (C(10,5)={math.comb(10, 5)})")
    print(f"  ratio k=100: bound/2^100={bmax(100) / 2 ** 100:.9f} exact={math.comb(100, 50) / 2 ** 100:.9f}")
    surv = lambda k: beta(0.1, 0.01) * math.sqrt(2 / (math.pi * k)) * math.exp(1 / (12 * k))
    print(f"  survival_bound(50000)={surv(50000):.9f}  survival_bound(10^6)={surv(10 ** 6):.9f}")
    print(f"  survival_bound vacuous below k = {next(k for k in range(2, 40000, 2) if surv(k) <= 1)}")

    print("== free-play reach check (k=200000, t=0.9)")
    lnr = math.log(0.99) - math.log(1.01)
    h = math.ceil((200000 * math.log(1.01) + math.log(10)) / -lnr)
    # verify h is truly minimal via log comparison
    f = lambda n: 200000 * math.log(1.01) + n * lnr
    assert f(h) <= math.log(0.1) < f(h - 1)
    zcc = (h - 0.5 - 100000) / math.sqrt(50000)
    print(f"  heads needed: {h}   P(N>=h) ~ {1 - nd.cdf(zcc):.5f} (normal+cc)")


if __name__ == "__main__":
    exact_block()
    asym_block()
