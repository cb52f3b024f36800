"""Exact rational linear algebra.

Vectors are tuples of :class:`fractions.Fraction` (or ints), matrices are
sequences of rows.  Nothing in here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import NamedTuple, Optional, Sequence

Vector = tuple
Matrix = Sequence[Sequence]


def as_fraction(x) -> Fraction:
    """Convert ``x`` to a Fraction, refusing floats and booleans."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"inexact or non-numeric scalar {x!r}")
    return Fraction(x)


def vec(xs) -> tuple:
    return tuple(as_fraction(x) for x in xs)


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def matvec(M: Matrix, x) -> tuple:
    return tuple(dot(row, x) for row in M)


def transpose(M: Matrix) -> list[list]:
    return [list(col) for col in zip(*M)]


def matmul(A: Matrix, B: Matrix) -> list[list]:
    Bt = transpose(B)
    return [[dot(row, col) for col in Bt] for row in A]


def primitive(v) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    v = tuple(as_fraction(x) for x in v)
    if any(x.denominator != 1 for x in v):
        raise ValueError("primitive() needs an integer vector; use primitive_direction")
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero direction")
    return tuple(x // g for x in v)


def primitive_direction(v) -> tuple[int, ...]:
    """Primitive integer vector positively proportional to a rational vector."""
    v = vec(v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive(int(x * den) for x in v)


def rref(M: Matrix, ncols: Optional[int] = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    rows = [[as_fraction(x) for x in row] for row in M]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def kernel_basis(M: Matrix, ncols: Optional[int] = None) -> list[tuple[Fraction, ...]]:
    """Exact basis of the right null space of ``M``.

    ``ncols`` is only needed when ``M`` has no rows.
    """
    if ncols is None:
        if not M:
            raise ValueError("ncols required for a matrix without rows")
        ncols = len(M[0])
    R, pivots = rref(M, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[free]
        basis.append(tuple(v))
    return basis


def det(M: Matrix) -> Fraction:
    A = [[as_fraction(x) for x in row] for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def inverse(M: Matrix) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R[:n]]


def solve_square(M: Matrix, b) -> tuple[Fraction, ...]:
    """Unique solution of an invertible square system."""
    n = len(M)
    aug = [list(row) + [b[i]] for i, row in enumerate(M)]
    R, pivots = rref(aug, n + 1)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(row[n] for row in R)


@dataclass(frozen=True)
class AffineSolution:
    """Solution set ``particular + span(null_space)`` of ``M x = b``.

    When the system is inconsistent ``particular`` is None and
    ``certificate`` holds a row combination ``y`` with ``y M = 0`` and
    ``y . b != 0``.
    """

    particular: Optional[tuple[Fraction, ...]]
    null_space: list[tuple[Fraction, ...]] = field(default_factory=list)
    certificate: Optional[tuple[Fraction, ...]] = None

    @property
    def feasible(self) -> bool:
        return self.particular is not None


def solve_affine(M: Matrix, b, ncols: Optional[int] = None) -> AffineSolution:
    """Exact solution set of ``M x = b`` (free variables set to zero)."""
    if len(M) != len(b):
        raise ValueError(f"shape mismatch: {len(M)} rows, rhs of length {len(b)}")
    if ncols is None:
        if not M:
            raise ValueError("ncols required for a matrix without rows")
        ncols = len(M[0])
    if any(len(row) != ncols for row in M):
        raise ValueError("shape mismatch: ragged matrix")
    b = vec(b)
    aug = [list(row) + [b[i]] for i, row in enumerate(M)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        # inconsistent: find y in the left kernel with y . b != 0
        left = kernel_basis(transpose(M), len(M)) if M else []
        for y in left:
            if dot(y, b) != 0:
                return AffineSolution(None, [], y)
        raise AssertionError("inconsistent system without a certificate")
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return AffineSolution(tuple(x), kernel_basis(M, ncols))


def same_span(A: Matrix, B: Matrix, ncols: int) -> bool:
    """True iff the row spaces of ``A`` and ``B`` coincide."""
    ra = rank(A) if A else 0
    rb = rank(B) if B else 0
    if ra != rb:
        return False
    both = list(A) + list(B)
    return (rank(both) if both else 0) == ra


class Inertia(NamedTuple):
    n_plus: int
    n_minus: int
    n_zero: int


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def signature(S: Matrix) -> Inertia:
    """Exact inertia of a symmetric rational matrix.

    Congruence reduction: eliminate a nonzero diagonal pivot when there is
    one, otherwise split off a 2x2 hyperbolic block ``[[0, b], [b, 0]]``
    (one positive and one negative eigenvalue) via its Schur complement.
    """
    A = [[as_fraction(x) for x in row] for row in S]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("signature of a non-square matrix")
    for i in range(n):
        for j in range(i):
            if A[i][j] != A[j][i]:
                raise ValueError("signature of a non-symmetric matrix")
    plus = minus = 0
    while A:
        k = len(A)
        p = next((i for i in range(k) if A[i][i] != 0), None)
        if p is not None:
            d = A[p][p]
            if d > 0:
                plus += 1
            else:
                minus += 1
            rest = [i for i in range(k) if i != p]
            A = [[A[i][j] - A[i][p] * A[p][j] / d for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(k) for j in range(i + 1, k) if A[i][j] != 0), None)
        if pair is None:
            break
        i0, j0 = pair
        b = A[i0][j0]
        plus += 1
        minus += 1
        rest = [i for i in range(k) if i not in pair]
        # S_rest - C B^{-1} C^T with B^{-1} = [[0, 1/b], [1/b, 0]]
        A = [
            [A[i][j] - (A[i][i0] * A[j0][j] + A[i][j0] * A[i0][j]) / b for j in rest]
            for i in rest
        ]
    return Inertia(plus, minus, n - plus - minus)


class LorentzPreconditionError(ValueError):
    """Raised when the hypotheses of the proportionality statement fail.

    ``reason`` is one of ``"signature"``, ``"negative"`` or ``"equality"``.
    """

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


def bilinear(Q: Matrix, x, y) -> Fraction:
    return dot(x, matvec(Q, y))


def lorentz_proportional(Q: Matrix, x, y) -> Optional[Fraction]:
    """Proportionality constant between the linear forms ``Q(x, -)`` and ``Q(y, -)``.

    Requires ``Q`` to have exactly one positive eigenvalue, ``Q(x) >= 0``,
    ``Q(y) >= 0`` and ``Q(x, y)^2 == Q(x) Q(y)``.  Returns ``c`` with
    ``Q x == c Q y``; returns None when ``Q y == 0`` (then ``Q y = 0 * Q x``).
    Raises ArithmeticError if the images turn out not to be proportional.
    """
    x, y = vec(x), vec(y)
    inertia = signature(Q)
    if inertia.n_plus != 1:
        raise LorentzPreconditionError(
            "signature", f"form has {inertia.n_plus} positive eigenvalues, expected 1"
        )
    qxx, qyy, qxy = bilinear(Q, x, x), bilinear(Q, y, y), bilinear(Q, x, y)
    if qxx < 0 or qyy < 0:
        raise LorentzPreconditionError("negative", f"negative self-pairing: Q(x)={qxx}, Q(y)={qyy}")
    if qxy * qxy != qxx * qyy:
        raise LorentzPreconditionError(
            "equality", f"Q(x,y)^2 = {qxy * qxy} differs from Q(x)Q(y) = {qxx * qyy}"
        )
    qx, qy = matvec(Q, x), matvec(Q, y)
    k = next((i for i, t in enumerate(qy) if t != 0), None)
    if k is None:
        return None
    c = qx[k] / qy[k]
    if any(a != c * b for a, b in zip(qx, qy)):
        raise ArithmeticError("Q x and Q y are not proportional")
    return c


def unimodular_completion(u) -> tuple[list[tuple[int, ...]], tuple[int, ...]]:
    """Integer basis ``b_1..b_{n-1}`` of ``u``-perp and ``w`` with ``w . u = 1``.

    ``[b_1 ... b_{n-1} w]`` (as columns) is unimodular.  Built by integer
    column reduction of the row vector ``u``; basis vectors are signed so
    their first nonzero entry is positive.
    """
    u = tuple(int(x) for x in u)
    if primitive(u) != u:
        raise ValueError(f"direction {u} is not primitive")
    basis, w = _completion(u)
    return list(basis), w


@lru_cache(maxsize=4096)
def _completion(u: tuple[int, ...]):
    n = len(u)
    r = list(u)
    cols = [[int(i == j) for i in range(n)] for j in range(n)]  # cols[j] = column j
    while sum(1 for x in r if x != 0) > 1:
        j = min((k for k in range(n) if r[k] != 0), key=lambda k: (abs(r[k]), k))
        for k in range(n):
            if k != j and r[k] != 0:
                q = r[k] // r[j]
                r[k] -= q * r[j]
                cols[k] = [a - q * b for a, b in zip(cols[k], cols[j])]
    j = next(k for k in range(n) if r[k] != 0)
    w = cols[j]
    if r[j] < 0:
        w = [-a for a in w]
    basis = []
    for k in range(n):
        if k == j:
            continue
        b = cols[k]
        lead = next(a for a in b if a != 0)
        if lead < 0:
            b = [-a for a in b]
        basis.append(tuple(b))
    return tuple(basis), tuple(w)


def lattice_complement_basis(u) -> list[tuple[int, ...]]:
    """Integer basis of the sublattice ``Z^n`` intersected with ``u``-perp."""
    return unimodular_completion(u)[0]


@lru_cache(maxsize=4096)
def lattice_projector(u: tuple[int, ...]) -> tuple[tuple[Fraction, ...], ...]:
    """Rows mapping a point to its coordinates in the lattice basis of ``u``-perp.

    For points on a hyperplane ``u . x = c`` the result is an affine
    isomorphism onto ``R^{n-1}`` that preserves lattice-normalized volume.
    """
    basis, w = _completion(tuple(u))
    U = transpose(list(basis) + [w])
    inv = inverse(U)
    return tuple(tuple(row) for row in inv[:-1])


def project(projector, p) -> tuple[Fraction, ...]:
    return tuple(dot(row, p) for row in projector)
