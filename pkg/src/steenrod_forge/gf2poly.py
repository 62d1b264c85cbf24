"""Bit-packed arithmetic for bivariate polynomials over GF(2).

A homogeneous polynomial of degree d in F2[a,b] is stored as an int whose
bit i is the coefficient of a^i * b^(d-i), so the coefficient vector of a
product is the carry-less (XOR) convolution of the two bit vectors and
addition is a single XOR.  General polynomials are finite sums of
homogeneous components of distinct degrees (`GradedPoly`).

Divisibility and gcd go through the dehomogenization b=1: a homogeneous p
of degree d equals b^(d-k) times the homogenization of a univariate
polynomial P of degree k, where P is exactly the coefficient bit vector of
p read as a GF(2)[x] element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .errors import DegreeMismatch, NotDivisible, ParseError

# ---------------------------------------------------------------------------
# bit tricks

_SPREAD8 = [0] * 256
for _v in range(256):
    _s = 0
    for _i in range(8):
        if _v >> _i & 1:
            _s |= 1 << (2 * _i)
    _SPREAD8[_v] = _s

_COMPRESS8 = [0] * 256  # keep bits at even positions, pack them down
for _v in range(256):
    _c = 0
    for _i in range(4):
        if _v >> (2 * _i) & 1:
            _c |= 1 << _i
    _COMPRESS8[_v] = _c


def _spread(x: int) -> int:
    # bit i -> bit 2i
    out = 0
    shift = 0
    while x:
        out |= _SPREAD8[x & 0xFF] << shift
        x >>= 8
        shift += 16
    return out


def _compress_even(x: int) -> int:
    # inverse of _spread on bits at even positions
    out = 0
    shift = 0
    while x:
        out |= (_COMPRESS8[x & 0xFF] | _COMPRESS8[x >> 8 & 0xFF] << 4) << shift
        x >>= 16
        shift += 8
    return out


def _clmul(x: int, y: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials packed into ints."""
    if x.bit_count() > y.bit_count():
        x, y = y, x
    r = 0
    while x:
        lsb = x & -x
        r ^= y << (lsb.bit_length() - 1)
        x ^= lsb
    return r


def _uni_divmod(a: int, b: int) -> tuple[int, int]:
    # univariate division with remainder, b != 0
    m = a.bit_length() - 1
    n = b.bit_length() - 1
    if m < n:
        return 0, a
    q = 0
    b <<= m - n
    for i in range(m - n + 1):
        q <<= 1
        if a >> (m - i) & 1:
            a ^= b
            q ^= 1
        b >>= 1
    return q, a


def _uni_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _uni_divmod(a, b)[1]
    return a


# ---------------------------------------------------------------------------
# homogeneous polynomials


@dataclass(frozen=True, eq=False)
class HomPoly:
    """Homogeneous element of F2[a,b]; bit i of `coeffs` is a^i * b^(degree-i).

    The zero polynomial is representable at any degree and compares equal
    across degrees, so graded containers can drop vanished components
    without caring about the nominal degree tag.
    """

    degree: int
    coeffs: int

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"negative degree {self.degree}")
        if self.coeffs < 0 or self.coeffs >> (self.degree + 1):
            raise ValueError(
                f"coefficient vector 0x{self.coeffs:x} too wide for degree {self.degree}"
            )

    @classmethod
    def monomial(cls, a_exp: int, b_exp: int) -> "HomPoly":
        return cls(a_exp + b_exp, 1 << a_exp)

    @classmethod
    def zero(cls, degree: int = 0) -> "HomPoly":
        return cls(degree, 0)

    @property
    def is_zero(self) -> bool:
        return self.coeffs == 0

    def __bool__(self) -> bool:
        return self.coeffs != 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.coeffs == 0 and other.coeffs == 0:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.degree if self.coeffs else -1))

    def monomials(self) -> Iterator[tuple[int, int]]:
        """Yield (a_exp, b_exp) pairs, descending a-exponent."""
        c = self.coeffs
        while c:
            i = c.bit_length() - 1
            yield i, self.degree - i
            c ^= 1 << i

    def __add__(self, other):
        if isinstance(other, GradedPoly):
            return GradedPoly.of(self) + other
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.coeffs == 0:
            return other
        if other.coeffs == 0:
            return self
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"cannot add degrees {self.degree} and {other.degree}"
            )
        return HomPoly(self.degree, self.coeffs ^ other.coeffs)

    def __mul__(self, other):
        if isinstance(other, GradedPoly):
            return GradedPoly.of(self) * other
        if not isinstance(other, HomPoly):
            return NotImplemented
        return HomPoly(self.degree + other.degree, _clmul(self.coeffs, other.coeffs))

    def square(self) -> "HomPoly":
        return HomPoly(2 * self.degree, _spread(self.coeffs))

    def __pow__(self, n: int) -> "HomPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.square()
        return result


A = HomPoly(1, 0b10)
B = HomPoly(1, 0b01)
ONE = HomPoly(0, 1)
ZERO = HomPoly(0, 0)


def add(p: HomPoly, q: HomPoly) -> HomPoly:
    """Coefficientwise XOR; requires equal degrees unless one side is zero."""
    return p + q


def mul(p: HomPoly, q: HomPoly) -> HomPoly:
    """Product; carry-less convolution of the coefficient vectors."""
    return p * q


def _core(p: HomPoly) -> tuple[int, int]:
    # p = b^shared * homogenization(P); returns (P, shared)
    return p.coeffs, p.degree - (p.coeffs.bit_length() - 1)


def gcd(p: HomPoly, q: HomPoly) -> HomPoly:
    """Greatest common divisor, monic in the b=1 dehomogenization; gcd(p,0)=p."""
    if p.is_zero:
        return q
    if q.is_zero:
        return p
    cp, sp = _core(p)
    cq, sq = _core(q)
    g = _uni_gcd(cp, cq)
    shared = min(sp, sq)
    return HomPoly(g.bit_length() - 1 + shared, g)


def sqrt(p: HomPoly) -> Union[HomPoly, None]:
    """The unique square root when every exponent pair is even, else None."""
    if p.is_zero:
        return HomPoly.zero(p.degree // 2)
    if p.degree % 2:
        return None
    if _spread(_compress_even(p.coeffs)) != p.coeffs:
        return None
    return HomPoly(p.degree // 2, _compress_even(p.coeffs))


def exact_div(p: HomPoly, d: HomPoly) -> HomPoly:
    """Quotient q with q*d == p; raises NotDivisible when none exists."""
    if d.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero:
        return HomPoly.zero(max(p.degree - d.degree, 0))
    cp, sp = _core(p)
    cd, sd = _core(d)
    if sp < sd:
        raise NotDivisible(f"b^{sd} does not divide the argument")
    q, r = _uni_divmod(cp, cd)
    if r:
        raise NotDivisible("nonzero remainder")
    return HomPoly(p.degree - d.degree, q)


def substitute(p, image_a: HomPoly, image_b: HomPoly):
    """Apply the ring map a -> image_a, b -> image_b (both of degree 1)."""
    if image_a.degree != 1 or image_b.degree != 1:
        raise ValueError("substitution images must be homogeneous of degree 1")
    if isinstance(p, GradedPoly):
        return GradedPoly.from_items(
            (q.degree, q.coeffs)
            for q in (substitute(part, image_a, image_b) for part in p.parts)
        )
    d = p.degree
    pow_a = [1] * (d + 1)
    pow_b = [1] * (d + 1)
    for i in range(1, d + 1):
        pow_a[i] = _clmul(pow_a[i - 1], image_a.coeffs)
        pow_b[i] = _clmul(pow_b[i - 1], image_b.coeffs)
    out = 0
    c = p.coeffs
    while c:
        i = c.bit_length() - 1
        out ^= _clmul(pow_a[i], pow_b[d - i])
        c ^= 1 << i
    return HomPoly(d, out)


# ---------------------------------------------------------------------------
# graded polynomials


@dataclass(frozen=True)
class GradedPoly:
    """Finite formal sum of nonzero homogeneous components of distinct degrees."""

    parts: tuple[HomPoly, ...] = ()

    def __post_init__(self):
        degrees = [q.degree for q in self.parts]
        if any(q.is_zero for q in self.parts):
            raise ValueError("zero component stored in GradedPoly")
        if degrees != sorted(set(degrees)):
            raise ValueError("components must be sorted with distinct degrees")

    @classmethod
    def from_items(cls, items: Iterable[tuple[int, int]]) -> "GradedPoly":
        acc: dict[int, int] = {}
        for deg, coeffs in items:
            acc[deg] = acc.get(deg, 0) ^ coeffs
        return cls(tuple(HomPoly(d, c) for d, c in sorted(acc.items()) if c))

    @classmethod
    def of(cls, *polys: HomPoly) -> "GradedPoly":
        return cls.from_items((q.degree, q.coeffs) for q in polys)

    @property
    def components(self) -> dict[int, HomPoly]:
        return {q.degree: q for q in self.parts}

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def __bool__(self) -> bool:
        return bool(self.parts)

    def part(self, degree: int) -> HomPoly:
        for q in self.parts:
            if q.degree == degree:
                return q
        return HomPoly.zero(degree)

    @property
    def min_degree(self):
        return self.parts[0].degree if self.parts else None

    @property
    def max_degree(self):
        return self.parts[-1].degree if self.parts else None

    @property
    def is_homogeneous(self) -> bool:
        return len(self.parts) <= 1

    def as_homogeneous(self, degree: int = 0) -> HomPoly:
        """The single component; zero of the given degree when empty."""
        if not self.parts:
            return HomPoly.zero(degree)
        if len(self.parts) > 1:
            raise ValueError("polynomial is not homogeneous")
        return self.parts[0]

    def __add__(self, other):
        if isinstance(other, HomPoly):
            other = GradedPoly.of(other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return GradedPoly.from_items(
            [(q.degree, q.coeffs) for q in self.parts]
            + [(q.degree, q.coeffs) for q in other.parts]
        )

    def __mul__(self, other):
        if isinstance(other, HomPoly):
            other = GradedPoly.of(other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return GradedPoly.from_items(
            (p.degree + q.degree, _clmul(p.coeffs, q.coeffs))
            for p in self.parts
            for q in other.parts
        )

    def square(self) -> "GradedPoly":
        return GradedPoly(tuple(q.square() for q in self.parts))

    def __pow__(self, n: int) -> "GradedPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = GradedPoly.of(ONE)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.square()
        return result


GRADED_ZERO = GradedPoly()
GRADED_ONE = GradedPoly.of(ONE)
GA = GradedPoly.of(A)
GB = GradedPoly.of(B)


# ---------------------------------------------------------------------------
# expression grammar (shared with the uvw rings through `evaluate`)
#
#   expression := term ('+' term)*
#   term       := factor ('*'? factor)*
#   factor     := variable ('^' unsigned-integer)? | '(' expression ')' | '1' | '0'
#
# Whitespace is insignificant.


class _Scanner:
    def __init__(self, text: str, variables):
        self.text = text
        self.pos = 0
        self.variables = variables

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def error(self, expected) -> ParseError:
        self.skip_ws()
        return ParseError("unexpected input", self.pos, frozenset(expected))

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error({"unsigned-integer"})
        return int(self.text[start : self.pos])


def evaluate(text: str, variables: Mapping[str, object], zero, one):
    """Parse an expression and fold it with the +, *, ** of the given values."""
    sc = _Scanner(text, variables)
    value = _expression(sc, variables, zero, one)
    if sc.peek():
        raise sc.error({"+", "*", "end of input"})
    return value


def _expression(sc, variables, zero, one):
    value = _term(sc, variables, zero, one)
    while sc.peek() == "+":
        sc.take()
        value = value + _term(sc, variables, zero, one)
    return value


def _factor_start(sc, variables) -> bool:
    ch = sc.peek()
    return ch in variables or ch in "(01"


def _term(sc, variables, zero, one):
    value = _factor(sc, variables, zero, one)
    while True:
        if sc.peek() == "*":
            sc.take()
            value = value * _factor(sc, variables, zero, one)
        elif _factor_start(sc, variables):
            value = value * _factor(sc, variables, zero, one)
        else:
            return value


def _factor(sc, variables, zero, one):
    ch = sc.peek()
    if ch == "(":
        sc.take()
        value = _expression(sc, variables, zero, one)
        if sc.peek() != ")":
            raise sc.error({")", "+", "*"})
        sc.take()
        return value
    if ch == "0":
        sc.take()
        return zero
    if ch == "1":
        sc.take()
        return one
    if ch in variables:
        sc.take()
        value = variables[ch]
        if sc.peek() == "^":
            sc.take()
            return value ** sc.integer()
        return value
    raise sc.error(set(variables) | {"(", "0", "1"})


def parse(text: str) -> GradedPoly:
    """Parse an a,b-expression into a GradedPoly."""
    return evaluate(text, {"a": GA, "b": GB}, GRADED_ZERO, GRADED_ONE)


def _monomial_str(a_exp: int, b_exp: int, names=("a", "b")) -> str:
    pieces = []
    for name, e in zip(names, (a_exp, b_exp)):
        if e == 1:
            pieces.append(name)
        elif e > 1:
            pieces.append(f"{name}^{e}")
    return "*".join(pieces) if pieces else "1"


def format(p) -> str:
    """Canonical text form: descending degree, then descending a-exponent."""
    if isinstance(p, HomPoly):
        p = GradedPoly.of(p)
    terms = []
    for part in reversed(p.parts):
        terms.extend(_monomial_str(i, j) for i, j in part.monomials())
    return "+".join(terms) if terms else "0"
