"""Exact fields (the rationals and prime fields) with Gaussian elimination.

Elements of the rationals are :class:`fractions.Fraction`; elements of a prime
field are Python ints reduced into ``range(p)``.  Matrices are lists of rows.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list  # list[list[element]], rows index the target basis


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class ExactField:
    """Either the rationals (``p is None``) or the prime field of order ``p``."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(int(p)):
            raise ValueError(f"{p} is not prime")
        self.p = None if p is None else int(p)

    @classmethod
    def parse(cls, text: str) -> "ExactField":
        """Parse ``Q`` or ``fp:<p>`` (also ``Fp:<p>``, ``F<p>``)."""
        t = text.strip()
        if t in ("Q", "QQ", "q"):
            return cls()
        low = t.lower()
        for prefix in ("fp:", "f"):
            if low.startswith(prefix):
                try:
                    return cls(int(low[len(prefix):]))
                except ValueError:
                    break
        raise ValueError(f"unrecognised field {text!r}; use Q or fp:<prime>")

    @property
    def kind(self) -> str:
        return "Q" if self.p is None else "Fp"

    def __repr__(self) -> str:
        return "ExactField(Q)" if self.p is None else f"ExactField(F_{self.p})"

    def __str__(self) -> str:
        return "Q" if self.p is None else f"fp:{self.p}"

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("ExactField", self.p))

    # -- elements ---------------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, x):
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def encode(self, x):
        """JSON encoding: ``"num/den"`` strings over Q, ints over F_p."""
        if self.p is None:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return int(x)

    def elements(self) -> list:
        if self.p is None:
            raise ValueError("the rationals are infinite")
        return list(range(self.p))

    def matrix(self, rows: Iterable[Iterable]) -> Matrix:
        return [[self(x) for x in row] for row in rows]

    def zeros(self, nrows: int, ncols: int) -> Matrix:
        z = self.zero
        return [[z] * ncols for _ in range(nrows)]

    def identity(self, n: int) -> Matrix:
        m = self.zeros(n, n)
        for i in range(n):
            m[i][i] = self.one
        return m

    # -- matrices ---------------------------------------------------------

    def matmul(self, a: Matrix, b: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
        """Product ``a @ b``.

        ``inner`` and ``cols`` give the shared size and the column count when
        an empty factor hides them.
        """
        n = len(a)
        k = len(b) if inner is None else inner
        m = cols if cols is not None else (len(b[0]) if b else 0)
        out = [[self.zero] * m for _ in range(n)]
        p = self.p
        for i in range(n):
            row = a[i]
            orow = out[i]
            for t in range(k):
                x = row[t]
                if not x:
                    continue
                brow = b[t]
                for j in range(m):
                    y = brow[j]
                    if y:
                        orow[j] += x * y
            if p is not None:
                out[i] = [v % p for v in orow]
        return out

    def rref(self, rows: Sequence[Sequence], ncols: int) -> tuple[Matrix, list[int]]:
        """Reduced row echelon form; returns ``(nonzero rows, pivot columns)``."""
        p = self.p
        m = [list(r) for r in rows]
        pivots: list[int] = []
        r = 0
        nrows = len(m)
        for c in range(ncols):
            piv = None
            for i in range(r, nrows):
                if m[i][c]:
                    piv = i
                    break
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = self.inv(m[r][c])
            if p is None:
                m[r] = [x * inv for x in m[r]]
            else:
                m[r] = [x * inv % p for x in m[r]]
            prow = m[r]
            for i in range(nrows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    row = m[i]
                    if p is None:
                        m[i] = [x - f * y for x, y in zip(row, prow)]
                    else:
                        m[i] = [(x - f * y) % p for x, y in zip(row, prow)]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        return m[:r], pivots

    def rank(self, rows: Sequence[Sequence], ncols: int) -> int:
        if not rows or not ncols:
            return 0
        return len(self.rref(rows, ncols)[1])

    def nullspace(self, rows: Sequence[Sequence], ncols: int) -> list[list]:
        """Basis of ``{x : rows @ x = 0}`` as a list of vectors."""
        if not rows:
            return [[self.one if i == j else self.zero for i in range(ncols)] for j in range(ncols)]
        red, pivots = self.rref(rows, ncols)
        pivset = set(pivots)
        basis = []
        for free in range(ncols):
            if free in pivset:
                continue
            v = [self.zero] * ncols
            v[free] = self.one
            for row, pc in zip(red, pivots):
                v[pc] = -row[free] if self.p is None else (-row[free]) % self.p
            basis.append(v)
        return basis

    def det(self, m: Matrix) -> object:
        n = len(m)
        a = [list(r) for r in m]
        d = self.one
        p = self.p
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                return self.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                d = -d
            d = d * a[c][c]
            inv = self.inv(a[c][c])
            for i in range(c + 1, n):
                if a[i][c]:
                    f = a[i][c] * inv
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
                    if p is not None:
                        a[i] = [x % p for x in a[i]]
        return d % p if p is not None else d


RATIONALS = ExactField()


def prime_field(p: int) -> ExactField:
    return ExactField(p)
