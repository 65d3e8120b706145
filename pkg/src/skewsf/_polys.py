"""Dense commutative polynomial arithmetic over a small-field handle.

Coefficients are stored constant-term first in trimmed tuples; () is the zero
polynomial.  The field handle must provide zero/one attributes, add/sub/neg/
mul/inv methods on encoded elements, and an integer `order`.  Used both for
building field towers and for arithmetic in F_q[y].
"""

from ._ints import prime_divisors


def trim(coeffs) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(a) -> int:
    """Degree of a trimmed polynomial; -1 for the zero polynomial."""
    return len(a) - 1


def padd(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.add(x, y))
    return trim(out)


def pneg(F, a):
    return tuple(F.neg(x) for x in a)


def psub(F, a, b):
    return padd(F, a, pneg(F, b))


def pscale(F, c, a):
    if c == F.zero:
        return ()
    return trim(F.mul(c, x) for x in a)


def pmul(F, a, b):
    if not a or not b:
        return ()
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == F.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    ilb = F.inv(lb)
    q = [F.zero] * max(len(a) - db, 0)
    while len(a) - 1 >= db and trim(a):
        k = len(a) - 1 - db
        c = F.mul(a[-1], ilb)
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] = F.sub(a[k + j], F.mul(c, y))
        a = list(trim(a))
    return trim(q), trim(a)


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def monic(F, a):
    if not a:
        return a
    if a[-1] == F.one:
        return a
    return pscale(F, F.inv(a[-1]), a)


def pgcd(F, a, b):
    while b:
        a, b = b, pmod(F, a, b)
    return monic(F, a)


def plcm(F, a, b):
    if not a or not b:
        return ()
    g = pgcd(F, a, b)
    q, r = pdivmod(F, pmul(F, a, b), g)
    assert not r
    return monic(F, q)


def ppow_mod(F, base, exp: int, mod):
    result = (F.one,)
    base = pmod(F, base, mod)
    while exp > 0:
        if exp & 1:
            result = pmod(F, pmul(F, result, base), mod)
        base = pmod(F, pmul(F, base, base), mod)
        exp >>= 1
    return result


def peval(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def is_irreducible(F, f) -> bool:
    """Rabin test: f of degree e over F is irreducible iff x^(B^e) = x mod f
    and gcd(x^(B^(e/r)) - x, f) = 1 for every prime r | e, B = |F|."""
    e = degree(f)
    if e < 1:
        return False
    f = monic(F, f)
    if e == 1:
        return True
    B = F.order
    x = (F.zero, F.one)
    # chain[k] = x^(B^k) mod f
    chain = [pmod(F, x, f)]
    for _ in range(e):
        chain.append(ppow_mod(F, chain[-1], B, f))
    if chain[e] != pmod(F, x, f):
        return False
    for r in prime_divisors(e):
        g = pgcd(F, psub(F, chain[e // r], x), f)
        if degree(g) != 0:
            return False
    return True


def least_irreducible(F, deg: int):
    """Lexicographically least monic irreducible of given degree over F.

    Candidates x^deg + c_{deg-1} x^(deg-1) + ... + c_0 are ordered by the
    tuple (c_{deg-1}, ..., c_0) with coefficients as canonical integers.
    """
    B = F.order
    for m in range(B**deg):
        coeffs = tuple((m // B**i) % B for i in range(deg)) + (F.one,)
        if is_irreducible(F, coeffs):
            return coeffs
    raise RuntimeError("no irreducible polynomial found")  # unreachable
