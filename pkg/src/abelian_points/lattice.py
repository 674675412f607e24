"""Frobenius lattice models: stable-sublattice enumeration, the exact cokernel
oracle, explicit witness matrices and matrix-factorization operations.

The oracle enumerates every Frobenius-stable sublattice T with
l^N * Z^4 <= T <= Z^4 and collects the exponent vectors of the cokernels of
1 - F restricted to T.  Lattices are walked from Z^4 downward through maximal
stable sublattices (kernels of module surjections onto simple residue
modules), which visits exactly the stable members of the depth-N family and
never materializes the vastly larger set of unstable Hermite candidates.  All
arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from multiprocessing import Pool

from .abgroup import SLOTS
from .classify import Case3Data, decide_case2, decide_case3
from .errors import (
    DepthExhaustedError,
    InternalInvariantError,
    InvalidInputError,
    UnsupportedPrimeError,
)
from .matrices import (
    IntMatrix,
    PolyMatrix,
    as_matrix,
    block_diag,
    charpoly,
    cokernel_exponents,
    companion_matrix,
    det,
    hnf_from_columns,
    identity_matrix,
    is_scalar_matrix,
    mat_mul,
    mat_sub,
    matrix_poly_eval,
    pm_eval_at_zero,
    pm_from_int,
    pm_mul,
    scalar_matrix,
    snf,
    solve_upper_triangular,
    t_identity_minus,
    transpose,
)
from .numeric import is_prime, valuation
from .polynomial import (
    Case1,
    Case2,
    Case3,
    Case4,
    IntPolynomial,
    Shape,
    WeilPolynomial,
    detect_shape,
    poly_eval,
    substitute_one_minus_t,
)

Exponents = tuple[int, ...]


def frobenius_model(shape: Shape, w: WeilPolynomial) -> IntMatrix:
    """A 4x4 integer matrix with characteristic polynomial f, semisimple over Q."""
    if isinstance(shape, Case1):
        return companion_matrix(w.polynomial())
    if isinstance(shape, Case2):
        c = companion_matrix(shape.quadratic)
        return block_diag(c, c)
    if isinstance(shape, Case3):
        c = companion_matrix(shape.quadratic)
        return block_diag(c, scalar_matrix(-shape.sigma * shape.s, 2))
    return scalar_matrix(-shape.sigma * shape.s, 4)


@dataclass(frozen=True)
class StableLattice:
    """Upper-triangular Hermite basis of a Frobenius-stable sublattice of Z^4."""

    matrix: IntMatrix
    ell: int

    def __post_init__(self):
        h = self.matrix
        n = len(h)
        for i in range(n):
            if h[i][i] <= 0 or any(h[i][j] for j in range(i)):
                raise InvalidInputError("lattice basis must be upper triangular with positive diagonal")

    @property
    def index(self) -> int:
        out = 1
        for i in range(len(self.matrix)):
            out *= self.matrix[i][i]
        return out

    @property
    def diagonal_exponents(self) -> Exponents:
        return tuple(valuation(self.ell, self.matrix[i][i]) for i in range(len(self.matrix)))

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.matrix]


def conjugate_into_lattice(f: IntMatrix, h: IntMatrix) -> IntMatrix:
    """H^-1 * F * H for an upper-triangular lattice basis H; raises if not stable."""
    out = solve_upper_triangular(h, mat_mul(f, h))
    if out is None:
        raise InvalidInputError("lattice is not stable under the given matrix")
    return out


# ---------------------------------------------------------------------------
# Linear algebra over F_l


def _mat_mod(m: IntMatrix, p: int) -> IntMatrix:
    return tuple(tuple(x % p for x in row) for row in m)


def _mat_mul_mod(a, b, p):
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
    )


def _mat_vec_mod(a, v, p):
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def _poly_at_matrix_mod(coeffs, b, p):
    n = len(b)
    out = tuple((0,) * n for _ in range(n))
    for c in reversed(coeffs):
        out = _mat_mul_mod(out, b, p)
        out = tuple(
            tuple((out[i][j] + (c if i == j else 0)) % p for j in range(n))
            for i in range(n)
        )
    return out


def _nullspace_mod(rows, p: int, width: int):
    """Basis of the right kernel of the given rows over F_p."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pr = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = []
    for fc in range(width):
        if fc in pivots:
            continue
        v = [0] * width
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fc]) % p
        basis.append(tuple(v))
    return basis


class _SpanTracker:
    """Incremental row-reduced span over F_p, for membership tests."""

    def __init__(self, p: int):
        self.p = p
        self.rows: list[tuple[int, list[int]]] = []  # (pivot column, row)

    def reduce(self, v):
        v = [x % self.p for x in v]
        for c, row in self.rows:
            f = v[c]
            if f:
                v = [(x - f * y) % self.p for x, y in zip(v, row)]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            return False
        inv = pow(v[c], self.p - 2, self.p)
        v = [x * inv % self.p for x in v]
        for idx, (c2, row) in enumerate(self.rows):
            f = row[c]
            if f:
                self.rows[idx] = (c2, [(x - f * y) % self.p for x, y in zip(row, v)])
        self.rows.append((c, v))
        return True

    def contains(self, v) -> bool:
        return not any(self.reduce(v))


# ---------------------------------------------------------------------------
# Distinct irreducible factors of a monic polynomial over F_p (degree <= 4)


def _poly_mod(coeffs, p):
    cs = [c % p for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _poly_eval_mod(coeffs, x, p):
    out = 0
    for c in reversed(coeffs):
        out = (out * x + c) % p
    return out


def _poly_divmod_mod(f, g, p):
    # g monic
    rem = list(f)
    dg = len(g) - 1
    if len(rem) <= dg:
        return (), tuple(rem)
    quot = [0] * (len(rem) - dg)
    for i in range(len(rem) - dg - 1, -1, -1):
        c = rem[i + dg] % p
        quot[i] = c
        if c:
            for j, b in enumerate(g):
                rem[i + j] = (rem[i + j] - c * b) % p
    return _poly_mod(quot, p), _poly_mod(rem[:dg], p)


def _factor_distinct_modp(coeffs, p):
    """Distinct monic irreducible factors over F_p of a monic poly of degree <= 4."""
    f = _poly_mod(coeffs, p)
    lead_inv = pow(f[-1], p - 2, p)
    f = _poly_mod([c * lead_inv for c in f], p)
    factors = []
    for r in range(p):
        if _poly_eval_mod(f, r, p) == 0:
            g = ((-r) % p, 1)
            factors.append(g)
            while True:
                q, rem = _poly_divmod_mod(f, g, p)
                if rem:
                    break
                f = q
                if _poly_eval_mod(f, r, p) != 0:
                    break
    d = len(f) - 1
    if d <= 0:
        return factors
    if d in (2, 3):
        factors.append(f)
        return factors
    for b in range(p):
        for c in range(p):
            g = (c, b, 1)
            q, rem = _poly_divmod_mod(f, g, p)
            if not rem:
                factors.append(g)
                if q != g:
                    factors.append(q)
                return factors
    factors.append(f)
    return factors


# ---------------------------------------------------------------------------
# Stable-sublattice walk


def _lines_over_extension(b_mat, kernel_basis, d: int, p: int):
    """The minimal F_p[B]-submodules inside ker g(B), for irreducible g of degree d.

    The kernel is a vector space over F_{p^d} (scalars act as polynomials in
    B); its minimal submodules are the one-dimensional F_{p^d}-subspaces,
    enumerated through one representative per projective point.
    """
    width = len(kernel_basis[0])
    tracker = _SpanTracker(p)
    us = []
    for v in kernel_basis:
        if tracker.contains(v):
            continue
        us.append(v)
        w = v
        for _ in range(d):
            tracker.add(w)
            w = _mat_vec_mod(b_mat, w, p)
    pow_table = []
    for u in us:
        pows = [u]
        for _ in range(d - 1):
            pows.append(_mat_vec_mod(b_mat, pows[-1], p))
        pow_table.append(pows)
    for top in range(len(us)):
        for coeff in itertools.product(range(p), repeat=d * top):
            w = list(us[top])
            for i in range(top):
                for j in range(d):
                    cj = coeff[d * i + j]
                    if cj:
                        w = [(x + cj * y) % p for x, y in zip(w, pow_table[i][j])]
            line = [tuple(w)]
            for _ in range(d - 1):
                line.append(_mat_vec_mod(b_mat, line[-1], p))
            yield line


def _contains_scaled_identity(h: IntMatrix, scale: int) -> bool:
    return solve_upper_triangular(h, scalar_matrix(scale, len(h))) is not None


def _column(m: IntMatrix, j: int):
    return [m[i][j] for i in range(len(m))]


def _walk(f_mat: IntMatrix, ell: int, depth: int):
    """Yield (H, H^-1 F H) over all stable lattices with l^depth Z^4 <= T <= Z^4.

    Breadth-first from Z^4 through maximal stable sublattices; every stable
    lattice in the depth family appears exactly once, in deterministic order.
    """
    n = len(f_mat)
    factors = _factor_distinct_modp(charpoly(f_mat).coeffs, ell)
    scale = ell**depth
    h0 = identity_matrix(n)
    seen = {h0}
    queue = deque([(h0, f_mat)])
    while queue:
        h, ft = queue.popleft()
        yield h, ft
        b_mat = transpose(_mat_mod(ft, ell))
        scaled_cols = [[ell * x for x in _column(h, j)] for j in range(n)]
        for g in factors:
            gb = _poly_at_matrix_mod(g, b_mat, ell)
            kernel = _nullspace_mod(gb, ell, n)
            if not kernel:
                continue
            for line in _lines_over_extension(b_mat, kernel, len(g) - 1, ell):
                w_basis = _nullspace_mod(line, ell, n)
                gens = [
                    [sum(h[i][k] * w[k] for k in range(n)) for i in range(n)]
                    for w in w_basis
                ]
                h2 = hnf_from_columns(gens + scaled_cols)
                if h2 in seen:
                    continue
                if not _contains_scaled_identity(h2, scale):
                    continue
                ft2 = solve_upper_triangular(h2, mat_mul(f_mat, h2))
                if ft2 is None:
                    raise InternalInvariantError("constructed sublattice is not stable")
                seen.add(h2)
                queue.append((h2, ft2))


def enumerate_stable_lattices(f_mat: IntMatrix, ell: int, depth: int):
    """Stream of all stable lattices T with l^depth * Z^4 <= T <= Z^4.

    Equivalently: every upper-triangular Hermite basis with l-power diagonal
    dividing l^depth, reduced off-diagonals, l^depth * Z^4 contained in the
    column span, and integral H^-1 F H, each exactly once.
    """
    if not is_prime(ell):
        raise InvalidInputError(f"{ell} is not prime")
    if depth < 0:
        raise InvalidInputError("depth must be nonnegative")
    f_mat = as_matrix(f_mat)
    for h, _ in _walk(f_mat, ell, depth):
        yield StableLattice(matrix=h, ell=ell)


# ---------------------------------------------------------------------------
# Counting all sublattices at a given depth (used when Frobenius is scalar,
# where every sublattice is stable and enumeration would be astronomically
# wasteful).


def _gaussian_binomial(m: int, k: int, p: int) -> int:
    out = 1
    for i in range(1, k + 1):
        out = out * (p ** (m - k + i) - 1) // (p**i - 1)
    return out


def _partitions_bounded(max_part: int, max_len: int):
    def rec(bound, slots):
        yield ()
        if slots == 0:
            return
        for first in range(1, bound + 1):
            for rest in rec(first, slots - 1):
                yield (first,) + rest

    return rec(max_part, max_len)


def _conjugate_partition(mu, length: int):
    return [sum(1 for part in mu if part >= i) for i in range(1, length + 2)]


def _sublattice_count_scalar(p: int, n: int, r: int) -> int:
    """Number of sublattices T with p^n Z^r <= T <= Z^r (all are scalar-stable)."""
    if n == 0:
        return 1
    total = 0
    for mu in _partitions_bounded(n, r):
        mu_conj = _conjugate_partition(mu, n)
        term = 1
        for i in range(1, n + 1):
            mc, mc_next = mu_conj[i - 1], mu_conj[i]
            term *= p ** (mc_next * (r - mc)) * _gaussian_binomial(
                r - mc_next, mc - mc_next, p
            )
        total += term
    return total


# ---------------------------------------------------------------------------
# The oracle


@dataclass(frozen=True)
class OracleReport:
    """Realized cokernel vectors over all stable lattices up to a depth bound."""

    ell: int
    depth: int
    lattice_count: int
    realized: tuple[Exponents, ...]
    witnesses: dict[Exponents, IntMatrix]

    def __post_init__(self):
        totals = {sum(v) for v in self.realized}
        if len(totals) > 1:
            raise InternalInvariantError("realized vectors with differing totals")

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "depth": self.depth,
            "lattice_count": self.lattice_count,
            "realized": [list(v) for v in self.realized],
            "witnesses": {
                ",".join(map(str, v)): [list(row) for row in h]
                for v, h in self.witnesses.items()
            },
        }


def _cokernel_task(args) -> Exponents:
    ft, ell = args
    return cokernel_exponents(mat_sub(identity_matrix(len(ft)), ft), ell)


def oracle_realized_set(
    w: WeilPolynomial, ell: int, depth: int | None = None, jobs: int = 1
) -> OracleReport:
    """Brute-force the set of cokernel vectors of 1 - F over stable lattices.

    The default depth is ord_l(f(1)) + 1.  Restricted to primes not dividing
    q: at l = p the relevant module has rank below four and is not modeled
    here.  When the Frobenius model is scalar (case 4) every sublattice is
    stable and conjugation fixes 1 - F, so the realized set is computed
    directly and the lattice count from the closed-form subgroup count.
    """
    if not is_prime(ell):
        raise InvalidInputError(f"{ell} is not prime")
    if w.q % ell == 0:
        raise UnsupportedPrimeError(
            f"ell = {ell} divides q = {w.q}; the rank-4 lattice oracle only "
            f"models primes away from the characteristic"
        )
    if jobs < 1:
        raise InvalidInputError("jobs must be at least 1")
    order = w.group_order()
    e = valuation(ell, order)
    n_depth = depth if depth is not None else e + 1
    if n_depth < 0:
        raise InvalidInputError("depth must be nonnegative")
    shape = detect_shape(w)
    f_mat = frobenius_model(shape, w)

    first_seen: dict[Exponents, IntMatrix] = {}
    if is_scalar_matrix(f_mat):
        alpha = 1 - f_mat[0][0]
        vec = (valuation(ell, alpha),) * SLOTS
        first_seen[vec] = identity_matrix(SLOTS)
        count = _sublattice_count_scalar(ell, n_depth, SLOTS)
    elif jobs == 1:
        count = 0
        ident = identity_matrix(SLOTS)
        for h, ft in _walk(f_mat, ell, n_depth):
            count += 1
            vec = cokernel_exponents(mat_sub(ident, ft), ell)
            if vec not in first_seen:
                first_seen[vec] = h
    else:
        items = list(_walk(f_mat, ell, n_depth))
        count = len(items)
        chunk = max(1, count // (4 * jobs))
        with Pool(jobs) as pool:
            vecs = pool.map(_cokernel_task, [(ft, ell) for _, ft in items], chunk)
        for (h, _), vec in zip(items, vecs):
            if vec not in first_seen:
                first_seen[vec] = h

    realized = tuple(sorted(first_seen))
    if any(sum(v) != e for v in realized):
        raise InternalInvariantError("realized vector with wrong total valuation")
    return OracleReport(
        ell=ell,
        depth=n_depth,
        lattice_count=count,
        realized=realized,
        witnesses={v: first_seen[v] for v in realized},
    )


# ---------------------------------------------------------------------------
# Witness constructors


def witness_case2(quadratic: IntPolynomial, ell: int, pair) -> IntMatrix:
    """2x2 matrix with characteristic polynomial P(1-t) and cokernel type `pair`.

    Needs n1 <= n2, n1 + n2 = ord_l(P(1)) and l^n1 | (b - 2); that is exactly
    admissibility of the pair for the rank-2 polygon condition.
    """
    n1, n2 = (int(x) for x in pair)
    if not is_prime(ell):
        raise InvalidInputError(f"{ell} is not prime")
    if quadratic.degree != 2 or not quadratic.is_monic:
        raise InvalidInputError("need a monic quadratic")
    p1 = poly_eval(quadratic, 1)
    b = -quadratic.coefficient(1)
    if n1 < 0 or n1 > n2:
        raise InvalidInputError("pair must be sorted nonnegative")
    if n1 + n2 != valuation(ell, p1):
        raise InvalidInputError(
            f"pair sums to {n1 + n2}, expected ord_{ell}(P(1)) = {valuation(ell, p1)}"
        )
    if not n1 <= valuation(ell, b - 2):
        raise InvalidInputError(f"l^{n1} does not divide b - 2 = {b - 2}")
    q, r = divmod(p1, ell**n1)
    if r:
        raise InternalInvariantError("P(1) not divisible by l^n1")
    m = as_matrix([[-(b - 2), -q], [ell**n1, 0]])
    if charpoly(m) != substitute_one_minus_t(quadratic):
        raise InternalInvariantError("witness characteristic polynomial mismatch")
    if cokernel_exponents(m, ell) != (n1, n2):
        raise InternalInvariantError("witness cokernel mismatch")
    return m


def witness_case3(w: WeilPolynomial, ell: int, exponents) -> IntMatrix:
    """The explicit 4x4 matrix of 1 - F realizing an admissible case-3 vector.

    Columns express 1 - F in a basis u_1..u_4 mixing one vector of the
    squarefree plane (where 1 - F satisfies E^2 + (b-2)E + P(1) = 0, i.e.
    has characteristic polynomial P(1-t)) with one of the repeated-root
    plane (where 1 - F is multiplication by alpha).  With beta = 2 - b the
    columns are [beta+alpha, l^m1, l^mb, 0], [-beta*alpha/l^m1, 0,
    -l^mb*alpha/l^m1, 0], [-P(1)/l^mb, 0, alpha, l^m2] and
    [P(1)*alpha/l^(m2+mb), 0, 0, 0].  Integrality of the divided entries is
    asserted at runtime and doubles as a machine check that the
    admissibility conditions imply the divisibility chain.
    """
    shape = detect_shape(w)
    if not isinstance(shape, Case3):
        raise InvalidInputError("witness_case3 needs a case-3 polynomial")
    data = Case3Data.from_shape(shape, ell)
    exps = tuple(int(x) for x in exponents)
    if not decide_case3(data, exps):
        raise InvalidInputError(f"vector {exps} is not admissible at ell={ell}")
    m1, m2, _, _ = exps
    mb = data.m_b(exps)
    alpha = shape.alpha
    beta = 2 - shape.b
    f1 = poly_eval(shape.quadratic, 1)

    def xdiv(value: int, e: int) -> int:
        q, r = divmod(value, ell**e)
        if r:
            raise InternalInvariantError(
                f"entry {value} is not divisible by {ell}^{e}"
            )
        return q

    m = as_matrix(
        [
            [beta + alpha, -xdiv(beta * alpha, m1), -xdiv(f1, mb), xdiv(f1 * alpha, m2 + mb)],
            [ell**m1, 0, 0, 0],
            [ell**mb, -xdiv(ell**mb * alpha, m1), alpha, 0],
            [0, 0, ell**m2, 0],
        ]
    )
    if charpoly(m) != substitute_one_minus_t(w.polynomial()):
        raise InternalInvariantError("witness characteristic polynomial mismatch")
    if cokernel_exponents(m, ell) != exps:
        raise InternalInvariantError("witness cokernel mismatch")
    return m


def witness_search_case1(
    w: WeilPolynomial, ell: int, exponents, depth: int | None = None
) -> StableLattice:
    """First stable lattice (in enumeration order) whose cokernel vector matches.

    Searches defensively even for inadmissible vectors; those exhaust the
    depth bound and raise DepthExhaustedError.
    """
    shape = detect_shape(w)
    if not isinstance(shape, Case1):
        raise InvalidInputError("witness_search_case1 needs a case-1 polynomial")
    if not is_prime(ell):
        raise InvalidInputError(f"{ell} is not prime")
    exps = tuple(int(x) for x in exponents)
    n_depth = depth if depth is not None else valuation(ell, w.group_order()) + 1
    f_mat = frobenius_model(shape, w)
    ident = identity_matrix(SLOTS)
    for h, ft in _walk(f_mat, ell, n_depth):
        if cokernel_exponents(mat_sub(ident, ft), ell) == exps:
            return StableLattice(matrix=h, ell=ell)
    raise DepthExhaustedError(
        f"no stable lattice with cokernel {exps} up to depth {n_depth}; "
        f"increase the depth if the vector is admissible"
    )


# ---------------------------------------------------------------------------
# Matrix factorizations


def mf_build(a: IntMatrix, f1: IntPolynomial) -> tuple[PolyMatrix, PolyMatrix]:
    """(X, Y) with X = t*I - A and Y*X = f1*I exactly; requires f1(A) = 0.

    Y is the standard division witness sum_j b_j (sum_{i<j} t^i A^{j-1-i}) for
    f1 = sum_j b_j t^j; det X is the characteristic polynomial of A.
    """
    a = as_matrix(a)
    n = len(a)
    if f1.is_zero:
        raise InvalidInputError("f1 must be nonzero")
    if matrix_poly_eval(f1, a) != scalar_matrix(0, n):
        raise InvalidInputError("f1 does not annihilate the matrix")
    x = t_identity_minus(a)
    d = f1.degree
    powers = [identity_matrix(n)]
    for _ in range(max(0, d - 1)):
        powers.append(mat_mul(powers[-1], a))
    coeff_mats = []
    for i in range(d):
        acc = [[0] * n for _ in range(n)]
        for j in range(i + 1, d + 1):
            bj = f1.coefficient(j)
            if bj:
                pw = powers[j - 1 - i]
                for r in range(n):
                    for c in range(n):
                        acc[r][c] += bj * pw[r][c]
        coeff_mats.append(acc)
    y = tuple(
        tuple(
            IntPolynomial(tuple(coeff_mats[i][r][c] for i in range(d)))
            for c in range(n)
        )
        for r in range(n)
    )
    return x, y


def mf_dual_hp(a: IntMatrix, f1: IntPolynomial, ell: int) -> Exponents:
    """Cokernel exponents of Y(0) for the factorization (X, Y) built from A.

    On modules assembled from rank-2 witness blocks this is the complement
    vector (m - m_i sorted) of the X(0) exponents, with m = ord_l(f1(0)).
    """
    if f1.coefficient(0) == 0:
        raise InvalidInputError("f1(0) must be nonzero")
    _, y = mf_build(a, f1)
    return cokernel_exponents(pm_eval_at_zero(y), ell)


def mf_normalize(x: PolyMatrix, ell: int) -> tuple[PolyMatrix, IntMatrix, IntMatrix]:
    """U*X*V with unimodular integer U, V making X(0) diagonal.

    The diagonal entries are the Smith invariants of X(0); their l-adic
    valuations equal cokernel_exponents(X(0), l).  Exact l-power diagonal
    form is only available over l-adic coefficients, so the contract is
    stated at the level of valuations.
    """
    x0 = pm_eval_at_zero(x)
    if det(x0) == 0:
        raise InvalidInputError("X(0) must be nonsingular")
    res = snf(x0)
    xn = pm_mul(pm_from_int(res.u), pm_mul(x, pm_from_int(res.v)))
    diag = pm_eval_at_zero(xn)
    n = len(diag)
    expect = tuple(
        tuple(res.invariants[i] if i == j else 0 for j in range(n)) for i in range(n)
    )
    if diag != expect:
        raise InternalInvariantError("normalized constant term is not diagonal")
    return xn, res.u, res.v
