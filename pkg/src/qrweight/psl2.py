"""Moebius maps over F_p and their permutation action on the projective line.

The p+1 points are indexed 0..p with index p standing for the point at
infinity, matching the extended-code column layout (parity column last).
Only the subgroup structure the congruence method needs is provided: one
element of each required order, the dihedral generator pair (P, T), and the
order-2 and order-4 subgroups built from them.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from sympy import factorint, isprime, n_order

from .errors import BadDeterminant, NotPrimitiveRoot, NotQrPrime, SearchExhausted


@dataclass(frozen=True)
class MoebiusMap:
    """y -> (a*y + b) / (c*y + d) with ad - bc = 1 mod p.

    M and -M are the same group element; the stored representative is the
    lexicographically smaller of the two coefficient tuples.
    """

    p: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        p = self.p
        a, b, c, d = self.a % p, self.b % p, self.c % p, self.d % p
        if (a * d - b * c) % p != 1 % p:
            raise BadDeterminant(f"det != 1 for {(self.a, self.b, self.c, self.d)} mod {p}")
        neg = ((-a) % p, (-b) % p, (-c) % p, (-d) % p)
        rep = min((a, b, c, d), neg)
        object.__setattr__(self, "a", rep[0])
        object.__setattr__(self, "b", rep[1])
        object.__setattr__(self, "c", rep[2])
        object.__setattr__(self, "d", rep[3])

    @classmethod
    def identity(cls, p: int) -> MoebiusMap:
        return cls(p, 1, 0, 0, 1)

    @classmethod
    def translation(cls, p: int, amount: int = 1) -> MoebiusMap:
        """y -> y + amount."""
        return cls(p, 1, amount, 0, 1)

    @classmethod
    def inversion(cls, p: int) -> MoebiusMap:
        """y -> -1/y; swaps 0 and infinity, has order 2."""
        return cls(p, 0, -1, 1, 0)

    def __mul__(self, other: MoebiusMap) -> MoebiusMap:
        """Matrix product; the right factor acts first."""
        p = self.p
        return MoebiusMap(
            p,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> MoebiusMap:
        return MoebiusMap(self.p, self.d, -self.b, -self.c, self.a)

    def power(self, e: int) -> MoebiusMap:
        if e < 0:
            return self.inverse().power(-e)
        result = MoebiusMap.identity(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def matrix_str(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


@dataclass(frozen=True)
class CoordPermutation:
    """Permutation of the p+1 projective points; image[p] is the image of infinity."""

    p: int
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.p + 1 or sorted(self.image) != list(range(self.p + 1)):
            raise ValueError("image is not a bijection on 0..p")

    @classmethod
    def identity(cls, p: int) -> CoordPermutation:
        return cls(p, tuple(range(p + 1)))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.image))

    def __mul__(self, other: CoordPermutation) -> CoordPermutation:
        """Composition with the right factor applied first."""
        return CoordPermutation(self.p, tuple(self.image[other.image[i]] for i in range(self.p + 1)))

    def then(self, other: CoordPermutation) -> CoordPermutation:
        """Composition with self applied first."""
        return other * self

    def inverse(self) -> CoordPermutation:
        inv = [0] * (self.p + 1)
        for i, v in enumerate(self.image):
            inv[v] = i
        return CoordPermutation(self.p, tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * (self.p + 1)
        out = []
        for start in range(self.p + 1):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.image[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles()))

    def apply_to_bits(self, bits: int) -> int:
        """Move the value at coordinate i to coordinate image[i]."""
        out = 0
        for i, v in enumerate(self.image):
            if (bits >> i) & 1:
                out |= 1 << v
        return out


def to_permutation(m: MoebiusMap) -> CoordPermutation:
    """Realize the Moebius map on {0..p-1, infinity} with x/0 = infinity."""
    p = m.p
    if (m.a * m.d - m.b * m.c) % p != 1 % p:
        raise BadDeterminant("determinant not normalized")
    image = [0] * (p + 1)
    for y in range(p):
        den = (m.c * y + m.d) % p
        image[y] = p if den == 0 else ((m.a * y + m.b) * pow(den, -1, p)) % p
    image[p] = p if m.c % p == 0 else (m.a * pow(m.c, -1, p)) % p
    return CoordPermutation(p, tuple(image))


def group_order(p: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """|PSL2(p)| = p(p^2-1)/2 and its prime factorization."""
    if p < 7 or not isprime(p):
        raise NotQrPrime(f"p={p} must be a prime >= 7")
    order = p * (p * p - 1) // 2
    fac = tuple(sorted(factorint(order).items()))
    return order, fac


@dataclass(frozen=True)
class SylowPlan:
    """Generators pinning down the Sylow structure used by the congruence method.

    P has order 2^(s-1) and is inverted by conjugation with T (order 2), so
    <P, T> is the dihedral Sylow-2 subgroup. odd_generators maps each odd
    prime q dividing the group order to an element of order exactly q.
    """

    p: int
    group_order: int
    factorization: tuple[tuple[int, int], ...]
    s: int
    odd_generators: dict[int, MoebiusMap]
    P: MoebiusMap
    T: MoebiusMap

    def central_involution(self) -> MoebiusMap:
        return self.P.power(2 ** (self.s - 2))

    def h2_elements(self) -> tuple[MoebiusMap, ...]:
        return (MoebiusMap.identity(self.p), self.central_involution())

    def g4_elements(self, i: int) -> tuple[MoebiusMap, ...]:
        if i not in (0, 1):
            raise ValueError("i must be 0 or 1")
        z = self.central_involution()
        flip = self.P.power(i) * self.T
        return (MoebiusMap.identity(self.p), z, flip, z * flip)


def _element_of_order(p: int, target: int) -> MoebiusMap:
    """Scan companion forms [[0, 1], [-1, t]] for an element of the given order."""
    for t in range(p):
        m = MoebiusMap(p, 0, 1, -1, t)
        if to_permutation(m).order() == target:
            return m
    raise SearchExhausted(f"no companion-form element of order {target} mod {p}")


def _symmetric_element_of_order(p: int, target: int) -> MoebiusMap:
    """Scan symmetric matrices (b = c), which are exactly the maps inverted by T."""
    for a in range(p):
        for b in range(p):
            if a == 0:
                if (-b * b) % p != 1 % p:
                    continue
                ds: range | list[int] = range(p)
            else:
                ds = [((1 + b * b) * pow(a, -1, p)) % p]
            for d in ds:
                if (a * d - b * b) % p != 1 % p:
                    continue
                m = MoebiusMap(p, a, b, b, d)
                if to_permutation(m).order() == target:
                    return m
    raise SearchExhausted(f"no symmetric element of order {target} mod {p}")


def find_sylow_plan(p: int, *, include_p: bool = False) -> SylowPlan:
    """Find order-q generators for odd q, plus the dihedral pair (P, T).

    The Sylow-p generator is only searched when include_p is set; the subcode
    it fixes is just {0, all-ones} and is handled directly downstream.
    """
    if p % 8 not in (1, 7):
        raise NotQrPrime(f"p={p} is not +-1 mod 8")
    order, fac = group_order(p)
    s = dict(fac)[2]
    odd = {}
    for q, _ in fac:
        if q == 2 or (q == p and not include_p):
            continue
        odd[q] = MoebiusMap.translation(p) if q == p else _element_of_order(p, q)
    big_t = MoebiusMap.inversion(p)
    big_p = _symmetric_element_of_order(p, 2 ** (s - 1))
    if big_t * big_p * big_t.inverse() != big_p.inverse():
        raise SearchExhausted("found P is not inverted by T")  # symmetric form should preclude this
    plan = SylowPlan(
        p=p,
        group_order=order,
        factorization=fac,
        s=s,
        odd_generators=odd,
        P=big_p,
        T=big_t,
    )
    for q, g in odd.items():
        if to_permutation(g).order() != q:
            raise SearchExhausted(f"generator for q={q} has wrong order")
    if to_permutation(big_p).order() != 2 ** (s - 1) or to_permutation(big_t).order() != 2:
        raise SearchExhausted("dihedral pair has wrong orders")
    return plan


def verify_scaling_word(p: int, rho: int) -> bool:
    """Check that y -> rho^2 * y equals the word T S^rho T S^mu T S^rho.

    rho must generate the multiplicative group mod p; mu = rho^-1 mod p. The
    word is applied left to right (T first), so the squared-scaling generator
    is redundant given the translation S and the inversion T.
    """
    if n_order(rho, p) != p - 1:
        raise NotPrimitiveRoot(f"{rho} has order {n_order(rho, p)} mod {p}, need {p - 1}")
    mu = pow(rho, -1, p)
    t = to_permutation(MoebiusMap.inversion(p))
    s_rho = to_permutation(MoebiusMap.translation(p, rho))
    s_mu = to_permutation(MoebiusMap.translation(p, mu))
    word = t.then(s_rho).then(t).then(s_mu).then(t).then(s_rho)
    scaling = to_permutation(MoebiusMap(p, rho, 0, 0, pow(rho, -1, p)))
    return word == scaling
