"""Constructors for the standard 3-transposition families.

Each constructor returns a :class:`CatalogEntry` holding a small generating
set together with the designated transposition seed; the full transposition
class is recovered downstream by conjugacy closure.

Fixed standard forms:
  * symplectic over F2: B pairs coordinates (0,1), (2,3), ...;
  * quadratic forms over F2: q+ = x0 x1 + x2 x3 + ...; q- replaces the last
    hyperbolic block by the norm form x^2 + xy + y^2;
  * forms over F3 are user-supplied diagonals (default all ones).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .groups import FpMatrix, Permutation, StructuralError

SYMMETRIC_MAX_N = 12
SYMPLECTIC_MAX_N = 3
ORTHOGONAL_F2_DIMS = (4, 6, 8)
ORTHOGONAL_F3_DIMS = (3, 4, 5)
WEYL_RANKS = {"A": range(1, 8), "D": range(4, 7), "E": range(6, 9)}


class CatalogError(ValueError):
    """Unsupported or malformed family parameters."""


@dataclass
class CatalogEntry:
    family: str
    params: dict
    generators: list
    seed: list
    descriptor: str = field(default="")

    def __post_init__(self):
        if not self.descriptor:
            items = ",".join(f"{k}={v}" for k, v in self.params.items())
            self.descriptor = f"{self.family}:{items}" if items else self.family


def symmetric(n):
    """S_n with the transpositions; adjacent transpositions generate."""
    if not 2 <= n <= SYMMETRIC_MAX_N:
        raise CatalogError(f"symmetric: n must be in [2, {SYMMETRIC_MAX_N}], got {n}")
    gens = [Permutation.from_cycles(n, [(i, i + 1)]) for i in range(n - 1)]
    seed = [Permutation.from_cycles(n, [(0, 1)])]
    return CatalogEntry("symmetric", {"n": n}, gens, seed)


def _sp_form_image(v, dim):
    """Bitmask of j with B(e_j, v) = 1 for the standard symplectic form."""
    out = 0
    for j in range(dim):
        if v >> (j ^ 1) & 1:
            out |= 1 << j
    return out


def _f2_transvection(dim, v, bv):
    """t_v : x -> x + B(x, v) v, given bv = bitmask of {j : B(e_j, v) = 1}."""
    rows = []
    for i in range(dim):
        row = 1 << i
        if v >> i & 1:
            row ^= bv
        rows.append(row)
    return FpMatrix(2, dim, rows)


def symplectic_F2(n):
    """Sp_{2n}(2) with the transvection class."""
    if not 1 <= n <= SYMPLECTIC_MAX_N:
        raise CatalogError(f"symplectic-f2: n must be in [1, {SYMPLECTIC_MAX_N}], got {n}")
    dim = 2 * n
    # Basis transvections only generate a product of Sp_2 blocks; the extra
    # e_{2i-1}+e_{2i} vectors bridge consecutive hyperbolic pairs.
    vectors = [1 << i for i in range(dim)]
    vectors += [(1 << (2 * i + 1)) | (1 << (2 * i + 2)) for i in range(n - 1)]
    gens = [_f2_transvection(dim, v, _sp_form_image(v, dim)) for v in vectors]
    seed = [gens[0]]
    return CatalogEntry("symplectic-f2", {"n": n}, gens, seed)


def _f2_quadratic(dim, eps):
    if eps == "+":
        blocks = dim // 2
        minus_block = False
    else:
        blocks = dim // 2 - 1
        minus_block = True

    def q(v):
        val = 0
        for b in range(blocks):
            val ^= (v >> (2 * b) & 1) & (v >> (2 * b + 1) & 1)
        if minus_block:
            x = v >> (dim - 2) & 1
            y = v >> (dim - 1) & 1
            val ^= x ^ (x & y) ^ y
        return val

    return q


def orthogonal_F2(dim, eps):
    """O_dim^eps(2)-type group generated by the singular-point transvections
    t_v with q(v) = 1."""
    if dim not in ORTHOGONAL_F2_DIMS:
        raise CatalogError(f"orthogonal-f2: dim must be one of {ORTHOGONAL_F2_DIMS}")
    if eps not in ("+", "-"):
        raise CatalogError("orthogonal-f2: eps must be '+' or '-'")
    q = _f2_quadratic(dim, eps)
    class_vectors = [v for v in range(1, 1 << dim) if q(v) == 1]
    gens = []
    for v in class_vectors:
        bv = 0
        for j in range(dim):
            bv |= (q((1 << j) ^ v) ^ q(1 << j) ^ q(v)) << j
        gens.append(_f2_transvection(dim, v, bv))
    return CatalogEntry(
        "orthogonal-f2", {"dim": dim, "eps": eps}, gens, list(gens)
    )


def _f3_reflection(dim, form, v):
    """r_v : x -> x - 2 B(x,v)/q(v) v for anisotropic v over F3."""
    qv = sum(d * x * x for d, x in zip(form, v)) % 3
    qinv = qv  # 1 and 2 are self-inverse mod 3
    entries = []
    for i in range(dim):
        for j in range(dim):
            bjv = form[j] * v[j] % 3
            e = (1 if i == j else 0) - 2 * bjv * qinv * v[i]
            entries.append(e % 3)
    return FpMatrix.from_entries(3, dim, entries)


def orthogonal_F3(dim, form=None, sign=1):
    """F3 orthogonal group generated by the reflections r_v with q(v) = sign.

    ``form`` is the diagonal of the bilinear form (entries 1 or 2 mod 3);
    ``sign`` in {1, 2} selects the reflection class by the value of q(v).
    """
    if not ORTHOGONAL_F3_DIMS[0] <= dim <= ORTHOGONAL_F3_DIMS[-1]:
        raise CatalogError(f"orthogonal-f3: dim must be in {ORTHOGONAL_F3_DIMS}")
    if form is None:
        form = (1,) * dim
    form = tuple(x % 3 for x in form)
    if len(form) != dim:
        raise CatalogError("orthogonal-f3: form length must equal dim")
    if any(x == 0 for x in form):
        raise CatalogError("orthogonal-f3: degenerate form (zero diagonal entry)")
    if sign not in (1, 2):
        raise CatalogError("orthogonal-f3: sign must be 1 or 2")
    vectors = []
    for v in iproduct(range(3), repeat=dim):
        nz = next((x for x in v if x), 0)
        if nz != 1:  # one representative of {v, -v}
            continue
        if sum(d * x * x for d, x in zip(form, v)) % 3 == sign:
            vectors.append(v)
    if not vectors:
        raise CatalogError("orthogonal-f3: empty reflection class for this form/sign")
    gens = [_f3_reflection(dim, form, v) for v in vectors]
    return CatalogEntry(
        "orthogonal-f3",
        {"dim": dim, "form": "".join(map(str, form)), "sign": sign},
        gens,
        list(gens),
    )


def _simple_roots(kind, rank):
    if kind == "A":
        dim = rank + 1
        return [
            tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(dim))
            for i in range(rank)
        ]
    if kind == "D":
        dim = rank
        simple = [
            tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(dim))
            for i in range(rank - 1)
        ]
        simple.append(
            tuple(1 if k in (rank - 2, rank - 1) else 0 for k in range(dim))
        )
        return simple
    # E6/E7/E8 inside the rank-8 lattice, doubled to clear half-integers.
    a1 = (1, -1, -1, -1, -1, -1, -1, 1)
    a2 = (2, 2, 0, 0, 0, 0, 0, 0)
    chain = [
        tuple(2 if k == i + 1 else -2 if k == i else 0 for k in range(8))
        for i in range(rank - 2)
    ]
    return [a1, a2] + chain


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _reflect(x, v):
    num = 2 * _dot(x, v)
    den = _dot(v, v)
    assert num % den == 0
    c = num // den
    return tuple(a - c * b for a, b in zip(x, v))


def _close_roots(simple):
    roots = set(simple) | {tuple(-a for a in r) for r in simple}
    frontier = list(roots)
    while frontier:
        new = []
        for x in frontier:
            for v in simple:
                y = _reflect(x, v)
                if y not in roots:
                    roots.add(y)
                    new.append(y)
        frontier = new
    return sorted(roots)


def weyl(kind, rank):
    """ADE Weyl group represented as permutations of its root set."""
    kind = kind.upper()
    if kind not in WEYL_RANKS:
        raise CatalogError("weyl: type must be A, D or E")
    if rank not in WEYL_RANKS[kind]:
        raise CatalogError(
            f"weyl: rank {rank} unsupported for type {kind} "
            f"(allowed {list(WEYL_RANKS[kind])})"
        )
    simple = _simple_roots(kind, rank)
    roots = _close_roots(simple)
    index = {r: i for i, r in enumerate(roots)}
    gens = [
        Permutation(tuple(index[_reflect(x, v)] for x in roots)) for v in simple
    ]
    seed = [gens[0]]
    return CatalogEntry("weyl", {"type": kind, "rank": rank}, gens, seed)


FAMILIES = {
    "symmetric": {
        "params": "n=2..12",
        "example": "symmetric:n=5",
    },
    "symplectic-f2": {
        "params": "n=1..3",
        "example": "symplectic-f2:n=3",
    },
    "orthogonal-f2": {
        "params": "dim=4|6|8, eps=+|-",
        "example": "orthogonal-f2:dim=6,eps=+",
    },
    "orthogonal-f3": {
        "params": "dim=3..5 [,form=diagonal digits] [,sign=+|-]",
        "example": "orthogonal-f3:dim=5",
    },
    "weyl": {
        "params": "type=A|D|E, rank (A<=7, D=4..6, E=6..8)",
        "example": "weyl:type=E,rank=6",
    },
}


def from_descriptor(descriptor):
    """Build a catalog entry from a CLI descriptor string like
    ``symmetric:n=5`` or ``orthogonal-f2:dim=6,eps=+``."""
    family, _, rest = descriptor.partition(":")
    family = family.strip().lower()
    params = {}
    if rest:
        for item in rest.split(","):
            k, sep, v = item.partition("=")
            if not sep:
                raise CatalogError(f"bad descriptor item {item!r} in {descriptor!r}")
            params[k.strip()] = v.strip()
    try:
        if family == "symmetric":
            entry = symmetric(int(params.pop("n")))
        elif family == "symplectic-f2":
            entry = symplectic_F2(int(params.pop("n")))
        elif family == "orthogonal-f2":
            entry = orthogonal_F2(int(params.pop("dim")), params.pop("eps"))
        elif family == "orthogonal-f3":
            dim = int(params.pop("dim"))
            form = params.pop("form", None)
            if form is not None:
                form = tuple(int(c) for c in form)
            sign = {"+": 1, "-": 2, "1": 1, "2": 2}[params.pop("sign", "+")]
            entry = orthogonal_F3(dim, form=form, sign=sign)
        elif family == "weyl":
            entry = weyl(params.pop("type"), int(params.pop("rank")))
        else:
            raise CatalogError(f"unknown family {family!r}")
    except KeyError as exc:
        raise CatalogError(f"missing/bad parameter {exc} in {descriptor!r}") from exc
    except ValueError as exc:
        if isinstance(exc, CatalogError):
            raise
        raise CatalogError(f"bad parameter value in {descriptor!r}: {exc}") from exc
    if params:
        raise CatalogError(
            f"unrecognized parameters {sorted(params)} in {descriptor!r}"
        )
    return entry
