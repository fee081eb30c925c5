"""Dimensions of two known families of non-induced maximal faces.

Both faces are convex hulls of explicitly parameterized pure product states
(3x3: four phase-parameterized families depending on ``b``; 2x4: a single
family in a complex parameter). Their dimensions are measured as span ranks
of sampled members, then compared with ``d(d-2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError
from .faces import max_induced_dim
from .oracle import OracleConfig, complex_normal, family_rows
from .statespace import RealSpanBasis, SystemShape

SHAPE_33 = SystemShape((3, 3))
SHAPE_24 = SystemShape((2, 4))


def _check_b(b: float) -> float:
    b = float(b)
    if not (b > 0 and b != 1):
        raise InvalidInputError(f"b: the 3x3 family needs b > 0 and b != 1, got {b}")
    return b


@dataclass(frozen=True)
class HaKye33Params:
    b: float
    p: complex = 1
    q: complex = 1
    r: complex = 1
    s: complex = 1
    t: complex = 1

    def __post_init__(self):
        _check_b(self.b)
        for name in "pqrst":
            if abs(abs(getattr(self, name)) - 1) > 1e-12:
                raise InvalidInputError(f"{name}: phases must have modulus 1")


def hakye33_vectors(params: HaKye33Params) -> list[np.ndarray]:
    """The four (unnormalized) product vectors for one choice of phases."""
    rb = math.sqrt(params.b)
    p, q, r, s, t = params.p, params.q, params.r, params.s, params.t
    pairs = [
        ([p, q, 1], [p, q, 1]),
        ([0, r, rb], [0, r * rb, 1]),
        ([s * rb, 0, 1], [s, 0, rb]),
        ([t, rb, 0], [t * rb, 1, 0]),
    ]
    return [np.kron(np.asarray(x, complex), np.asarray(y, complex)) for x, y in pairs]


def _phase(rng):
    return np.exp(2j * np.pi * rng.random())


def _family33(b: float, j: int):
    def gen(rng):
        params = HaKye33Params(b, *(_phase(rng) for _ in range(5)))
        return hakye33_vectors(params)[j]

    return gen


def hakye33_dims(b: float, cfg: OracleConfig | None = None) -> dict:
    """Span dimensions of the four families, of their union, and the face."""
    b = _check_b(b)
    cfg = cfg or OracleConfig()
    per_family, mains, extras = [], [], []
    saturated = True
    for j in range(4):
        main, more = family_rows(_family33(b, j), SHAPE_33, cfg, stream=(10 + j,))
        basis = RealSpanBasis(main, SHAPE_33)
        r = basis.rank(cfg.rel_tol)
        saturated &= basis.extended(more).rank(cfg.rel_tol) == r
        per_family.append(r)
        mains.append(main)
        extras.append(more)
    union = RealSpanBasis(np.vstack(mains), SHAPE_33)
    total = union.rank(cfg.rel_tol)
    saturated &= union.extended(np.vstack(extras)).rank(cfg.rel_tol) == total
    return {
        "b": b,
        "per_family_dims": per_family,
        "total_dim": total,
        "face_dim": total - 1,
        "max_induced_dim": max_induced_dim(SHAPE_33.d),
        "saturated": bool(saturated),
        "seed": int(cfg.seed),
    }


@dataclass(frozen=True)
class HaKye24Params:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d) <= 0:
            raise InvalidInputError("a, b, c, d: must all be positive")
        if self.a * self.b <= 1:
            raise InvalidInputError(f"a, b: the 2x4 family needs ab > 1, got ab = {self.a * self.b}")

    def constants(self) -> dict:
        return hakye24_constants(self.a, self.b, self.c, self.d)


def hakye24_constants(a: float, b: float, c: float, d: float) -> dict:
    if min(a, b, c, d) <= 0:
        raise InvalidInputError("a, b, c, d: must all be positive")
    if a * b <= 1:
        raise InvalidInputError(f"a, b: the 2x4 family needs ab > 1, got ab = {a * b}")
    e = a * c * (c + d) / (a * b - 1)
    f = a * d * (c + d) / (a * b - 1)
    return {"e": e, "f": f, "g": math.sqrt(a * c * d), "h": b * e - c * c, "k": b * f - d * d}


def hakye24_factors(params: HaKye24Params, alpha: complex) -> tuple[np.ndarray, np.ndarray]:
    k = params.constants()
    c, d = params.c, params.d
    ac = np.conj(alpha)
    x = np.array([1, ac], dtype=complex)
    y = np.array(
        [
            k["g"] * alpha * (1 - alpha),
            alpha * (k["h"] - c * d * (alpha + ac) + k["k"] * abs(alpha) ** 2),
            -k["e"] - k["f"] * abs(alpha) ** 2,
            -ac * (c + d * alpha),
        ],
        dtype=complex,
    )
    return x, y


def hakye24_vector(params: HaKye24Params, alpha: complex) -> np.ndarray:
    """``x_alpha (x) y_alpha`` (unnormalized); ``alpha = inf`` is not represented."""
    x, y = hakye24_factors(params, alpha)
    return np.kron(x, y)


def hakye24_dim(params: HaKye24Params, cfg: OracleConfig | None = None) -> dict:
    """Measured span and face dimension, checked against the monomial bound 27/26."""
    cfg = cfg or OracleConfig()

    def gen(rng):
        return hakye24_vector(params, complex_normal(rng, None))

    main, more = family_rows(gen, SHAPE_24, cfg, stream=(20,))
    basis = RealSpanBasis(main, SHAPE_24)
    span = basis.rank(cfg.rel_tol)
    saturated = basis.extended(more).rank(cfg.rel_tol) == span
    return {
        "params": {"a": params.a, "b": params.b, "c": params.c, "d": params.d},
        "span_dim": span,
        "face_dim": span - 1,
        "bound_ok": span <= 27 and span - 1 <= 26,
        "max_induced_dim": max_induced_dim(SHAPE_24.d),
        "saturated": bool(saturated),
        "sv_gap": basis.gap(cfg.rel_tol),
        "seed": int(cfg.seed),
    }
