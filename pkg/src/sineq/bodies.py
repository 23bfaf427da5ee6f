"""Body representations: complete Reinhardt sets in C^n and unconditional
sets in R^n.

Both families are driven by a predicate on the nonnegative orthant:

* a Reinhardt set is determined by its radial shadow, the set of
  modulus vectors (|z_1|, ..., |z_n|) it contains; completeness means the
  shadow is downward closed;
* an unconditional set is determined by where it meets the positive
  orthant, since membership is invariant under coordinate sign flips.

Predicates are vectorized: they accept an (m, n) array of nonnegative
vectors and return an (m,) boolean array.  Bodies are immutable and their
predicates must be pure, so concurrent evaluation is safe.

Descriptors
-----------
Every constructor-built body serializes to a one-line text form

    kind:key=v1[,v2,...][,key=...]

e.g. ``polydisc:r=1,2`` or ``cylinder:R=1.5,n=2``.  Values after a key
accumulate into a list until the next ``key=`` token.  Products join part
descriptors with ``|``: ``product:parts=strip:p=0.5|strip:p=1.5``.
``parse_descriptor`` reads this form back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "ReinhardtBody",
    "UnconditionalBody",
    "polydisc",
    "cylinder_body",
    "reinhardt_lp_ball",
    "custom_reinhardt",
    "upper_set_body",
    "annulus_body",
    "strip_body",
    "cube_body",
    "box_body",
    "unconditional_lp_ball",
    "cross_polytope",
    "norm_ball",
    "contains",
    "dilate",
    "product",
    "interval_radii",
    "check_downward_closed",
    "check_unconditional",
    "validate_body",
    "check_midpoint_convex",
    "parse_descriptor",
    "DownwardClosureReport",
]

RadialPredicate = Callable[[np.ndarray], np.ndarray]


def moduli(z: np.ndarray) -> np.ndarray:
    """Moduli (|z_1|, ..., |z_n|) of points given as 2n interleaved reals."""
    z = np.asarray(z, dtype=float)
    if z.shape[-1] % 2 != 0:
        raise ValueError("complex points need an even number of real coordinates")
    return np.hypot(z[..., 0::2], z[..., 1::2])


def _as_batch(x: np.ndarray, dim: int, what: str) -> tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != dim:
        raise ValueError(f"{what}: expected shape (m, {dim}), got {x.shape}")
    return x, single


@dataclass(frozen=True)
class _RadialBody:
    """Shared plumbing for shadow-driven bodies."""

    dim: int
    kind: str
    params: dict
    base: RadialPredicate = field(repr=False)
    validated: bool = True

    def radial_member(self, r: np.ndarray) -> np.ndarray:
        """Membership of nonnegative vectors, shape (m, dim) -> (m,) bool."""
        r, single = _as_batch(r, self.dim, f"{self.kind} radial point")
        out = np.asarray(self.base(r), dtype=bool)
        return out[0] if single else out

    def descriptor(self) -> str:
        parts = self.params.get("parts")
        if parts is not None:
            return "product:parts=" + "|".join(p.descriptor() for p in parts)
        items = []
        for key, val in self.params.items():
            if isinstance(val, tuple):
                items.append(f"{key}=" + ",".join(_fmt(v) for v in val))
            else:
                items.append(f"{key}={_fmt(val)}")
        return self.kind + ":" + ",".join(items)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


@dataclass(frozen=True)
class ReinhardtBody(_RadialBody):
    """A complete Reinhardt set in C^n, represented by its radial shadow.

    ``validated`` is False for custom shadows until
    :func:`check_downward_closed` has passed (and for the demonstration
    constructors that deliberately leave the class).
    """

    def contains(self, z: np.ndarray) -> np.ndarray:
        """Membership of points of C^n given as 2n interleaved reals."""
        z, single = _as_batch(z, 2 * self.dim, "complex point")
        out = np.asarray(self.base(moduli(z)), dtype=bool)
        return out[0] if single else out

    def dilate(self, t: float) -> "ReinhardtBody":
        return _dilate_radial(self, t)


@dataclass(frozen=True)
class UnconditionalBody(_RadialBody):
    """An unconditional subset of R^n (membership even in each coordinate).

    Constructor-built bodies are convex; convexity of custom ones can be
    spot-checked with :func:`check_midpoint_convex`.
    """

    def contains(self, x: np.ndarray) -> np.ndarray:
        x, single = _as_batch(x, self.dim, "real point")
        out = np.asarray(self.base(np.abs(x)), dtype=bool)
        return out[0] if single else out

    # the even extension of the orthant predicate is the public member
    member = contains

    def dilate(self, t: float) -> "UnconditionalBody":
        return _dilate_radial(self, t)


# ---------------------------------------------------------------------------
# Reinhardt constructors


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not value > 0.0:
        raise ValueError(f"{name} must be > 0, got {value}")
    return value


def polydisc(radii: Sequence[float]) -> ReinhardtBody:
    """{z : |z_k| <= r_k for all k}."""
    r = tuple(float(v) for v in radii)
    if not r or any(v < 0 for v in r):
        raise ValueError(f"polydisc radii must be nonnegative and nonempty, got {r}")
    arr = np.asarray(r)
    return ReinhardtBody(
        dim=len(r),
        kind="polydisc",
        params={"r": r},
        base=lambda m: (m <= arr).all(axis=1),
    )


def cylinder_body(R: float, n: int) -> ReinhardtBody:
    """{z in C^n : |z_1| <= R}, the comparison set of the dilation inequality."""
    R = float(R)
    if R < 0:
        raise ValueError(f"cylinder radius must be >= 0, got {R}")
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return ReinhardtBody(
        dim=n,
        kind="cylinder",
        params={"R": R, "n": n},
        base=lambda m: m[:, 0] <= R,
    )


def _lp_base(weights: np.ndarray, exponent: float, scale: float) -> RadialPredicate:
    if math.isinf(exponent):
        return lambda m: (weights * m).max(axis=1) <= scale
    rhs = scale**exponent

    def base(m: np.ndarray) -> np.ndarray:
        return ((weights * m) ** exponent).sum(axis=1) <= rhs

    return base


def reinhardt_lp_ball(
    weights: Sequence[float], exponent: float, scale: float = 1.0
) -> ReinhardtBody:
    """{z : sum_k (w_k |z_k|)^p <= scale^p}; any p > 0 keeps the shadow
    downward closed, so p < 1 (non-convex) is allowed here."""
    w = tuple(_check_positive("weight", v) for v in weights)
    exponent = float(exponent)
    if not exponent > 0:
        raise ValueError(f"exponent must be > 0, got {exponent}")
    scale = _check_positive("scale", scale)
    return ReinhardtBody(
        dim=len(w),
        kind="weighted-lp-ball",
        params={"p": exponent, "w": w, "scale": scale},
        base=_lp_base(np.asarray(w), exponent, scale),
    )


def custom_reinhardt(
    n: int, shadow: RadialPredicate, params: dict | None = None
) -> ReinhardtBody:
    """Wrap a user shadow predicate; flagged unvalidated until
    :func:`check_downward_closed` passes."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return ReinhardtBody(
        dim=n,
        kind="custom",
        params=params or {"n": n},
        base=shadow,
        validated=False,
    )


def upper_set_body(c: float, n: int = 1) -> ReinhardtBody:
    """Shadow {r : r_1 >= c}: an upward set, deliberately NOT downward
    closed.  Negative-testing fixture for the closure checker."""
    c = float(c)
    return ReinhardtBody(
        dim=n,
        kind="upper-set",
        params={"c": c, "n": n},
        base=lambda m: m[:, 0] >= c,
        validated=False,
    )


def annulus_body(inner: float, outer: float) -> ReinhardtBody:
    """{z in C : inner <= |z| <= outer}: rotationally symmetric but not
    Reinhardt complete.  Demonstration constructor for the experimental
    (no-correctness-promise) verification path."""
    inner, outer = float(inner), float(outer)
    if not 0 <= inner <= outer:
        raise ValueError(f"need 0 <= inner <= outer, got {inner}, {outer}")
    return ReinhardtBody(
        dim=1,
        kind="annulus",
        params={"inner": inner, "outer": outer},
        base=lambda m: (m[:, 0] >= inner) & (m[:, 0] <= outer),
        validated=False,
    )


# ---------------------------------------------------------------------------
# Unconditional constructors


def strip_body(p: float, n: int) -> UnconditionalBody:
    """{x in R^n : |x_1| <= p}."""
    p = float(p)
    if p < 0:
        raise ValueError(f"half-width must be >= 0, got {p}")
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return UnconditionalBody(
        dim=n,
        kind="strip",
        params={"p": p, "n": n},
        base=lambda a: a[:, 0] <= p,
    )


def cube_body(a: float, n: int) -> UnconditionalBody:
    """[-a, a]^n."""
    a = float(a)
    if a < 0:
        raise ValueError(f"half-width must be >= 0, got {a}")
    return UnconditionalBody(
        dim=n,
        kind="cube",
        params={"a": a, "n": n},
        base=lambda m: (m <= a).all(axis=1),
    )


def box_body(half_widths: Sequence[float]) -> UnconditionalBody:
    """Axis box prod_k [-a_k, a_k], i.e. an intersection of strips."""
    strips = [strip_body(a, 1) for a in half_widths]
    if not strips:
        raise ValueError("box needs at least one half-width")
    return strips[0] if len(strips) == 1 else product(*strips)


def unconditional_lp_ball(
    exponent: float, n: int, scale: float = 1.0, weights: Sequence[float] | None = None
) -> UnconditionalBody:
    """Weighted l_p ball in R^n; p >= 1 enforced so the body is convex."""
    exponent = float(exponent)
    if not exponent >= 1:
        raise ValueError(f"convexity needs exponent >= 1, got {exponent}")
    scale = _check_positive("scale", scale)
    w = tuple(float(v) for v in (weights if weights is not None else [1.0] * n))
    if len(w) != n or any(v <= 0 for v in w):
        raise ValueError(f"need {n} positive weights, got {w}")
    return UnconditionalBody(
        dim=n,
        kind="weighted-lp-ball",
        params={"p": exponent, "n": n, "scale": scale, "w": w},
        base=_lp_base(np.asarray(w), exponent, scale),
    )


def cross_polytope(scale: float, n: int) -> UnconditionalBody:
    """{x : sum |x_k| <= scale}."""
    scale = _check_positive("scale", scale)
    return UnconditionalBody(
        dim=n,
        kind="cross-polytope",
        params={"scale": scale, "n": n},
        base=lambda m: m.sum(axis=1) <= scale,
    )


def norm_ball(
    norm: Callable[[np.ndarray], np.ndarray], scale: float, n: int
) -> UnconditionalBody:
    """Unit ball (times ``scale``) of a user norm evaluator on (m, n)
    arrays.  Unchecked black box: run :func:`check_unconditional` /
    :func:`check_midpoint_convex` before trusting results."""
    scale = _check_positive("scale", scale)
    return UnconditionalBody(
        dim=n,
        kind="norm-ball",
        params={"scale": scale, "n": n},
        base=lambda m: np.asarray(norm(m), dtype=float) <= scale,
        validated=False,
    )


# ---------------------------------------------------------------------------
# Operations


def contains(body: _RadialBody, point: np.ndarray) -> np.ndarray:
    return body.contains(point)


def _dilate_radial(body, t: float):
    t = float(t)
    if not t > 0:
        raise ValueError(f"dilation scale must be > 0, got {t}")
    parts = body.params.get("parts")
    if parts is not None:
        return replace(body, params={"parts": tuple(p.dilate(t) for p in parts)},
                       base=_conjunction([p.dilate(t) for p in parts]))
    params = dict(body.params)
    for key in ("r", "R", "scale", "p_half", "a", "inner", "outer", "c"):
        if key in params:
            val = params[key]
            params[key] = tuple(v * t for v in val) if isinstance(val, tuple) else val * t
    if body.kind == "strip":
        params["p"] = body.params["p"] * t
    base = body.base

    def scaled(m: np.ndarray, _base=base, _t=t) -> np.ndarray:
        return _base(m / _t)

    return replace(body, params=params, base=scaled)


def dilate(body: _RadialBody, t: float):
    """tK = {t z : z in K}; same kind, scaled parameters."""
    return body.dilate(t)


def _conjunction(parts) -> RadialPredicate:
    dims = [p.dim for p in parts]
    offsets = np.concatenate([[0], np.cumsum(dims)])

    def base(m: np.ndarray) -> np.ndarray:
        out = np.ones(m.shape[0], dtype=bool)
        for part, lo, hi in zip(parts, offsets[:-1], offsets[1:]):
            out &= part.radial_member(m[:, lo:hi])
        return out

    return base


def product(*bodies: _RadialBody) -> _RadialBody:
    """Cartesian product; dimensions add, membership is the conjunction on
    the split coordinates.  Both factors must come from the same family."""
    if len(bodies) < 2:
        raise ValueError("product needs at least two bodies")
    cls = type(bodies[0])
    if not all(isinstance(b, cls) for b in bodies):
        raise TypeError("cannot mix Reinhardt and unconditional bodies in a product")
    flat: list[_RadialBody] = []
    for b in bodies:
        parts = b.params.get("parts")
        flat.extend(parts if parts is not None else [b])
    return cls(
        dim=sum(b.dim for b in flat),
        kind="product",
        params={"parts": tuple(flat)},
        base=_conjunction(flat),
        validated=all(b.validated for b in flat),
    )


def interval_radii(body: _RadialBody) -> tuple[float, ...] | None:
    """If the body's orthant region is a coordinate box {r : r_k <= a_k}
    (entries may be inf), return the a_k; else None.

    This is what unlocks exact product closed forms for measures and
    moments: polydiscs, cylinders, cubes, strips, boxes and their products.
    """
    kind = body.kind
    if kind == "polydisc":
        return body.params["r"]
    if kind == "cylinder":
        return (body.params["R"],) + (math.inf,) * (body.dim - 1)
    if kind == "cube":
        return (body.params["a"],) * body.dim
    if kind == "strip":
        return (body.params["p"],) + (math.inf,) * (body.dim - 1)
    if kind == "product":
        pieces = [interval_radii(p) for p in body.params["parts"]]
        if any(p is None for p in pieces):
            return None
        return tuple(v for piece in pieces for v in piece)
    return None


# ---------------------------------------------------------------------------
# Sampled validation


@dataclass(frozen=True)
class DownwardClosureReport:
    ok: bool
    checked: int
    violation: tuple[tuple[float, ...], tuple[float, ...]] | None = None


def _validation_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _orthant_cloud(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    # Mix of scales so small and large bodies both get interior hits.
    r = rng.exponential(size=(count, dim)) * rng.uniform(0.1, 2.0, size=(count, 1))
    return r


def check_downward_closed(
    body: _RadialBody, samples: int = 2000, rng_seed: int = 0
) -> DownwardClosureReport:
    """Sampled test of the defining property of the radial shadow: every
    coordinatewise shrink of a member stays a member.  Reports the first
    counterexample found."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = _validation_rng(rng_seed)
    r = _orthant_cloud(rng, samples, body.dim)
    member = body.radial_member(r)
    inside = r[member]
    if inside.size == 0:
        # nothing sampled inside: vacuously consistent (body may be empty)
        return DownwardClosureReport(ok=True, checked=0)
    shrink = inside * rng.uniform(0.0, 1.0, size=inside.shape)
    still = body.radial_member(shrink)
    bad = np.nonzero(~still)[0]
    if bad.size:
        i = int(bad[0])
        return DownwardClosureReport(
            ok=False,
            checked=int(inside.shape[0]),
            violation=(tuple(inside[i]), tuple(shrink[i])),
        )
    return DownwardClosureReport(ok=True, checked=int(inside.shape[0]))


def check_unconditional(
    body: UnconditionalBody, samples: int = 2000, rng_seed: int = 0
) -> bool:
    """Membership must be invariant under random coordinate sign flips."""
    rng = _validation_rng(rng_seed)
    x = _orthant_cloud(rng, samples, body.dim)
    signs = rng.choice([-1.0, 1.0], size=x.shape)
    return bool(np.array_equal(body.contains(x), body.contains(signs * x)))


def validate_body(body: _RadialBody, samples: int = 5000, rng_seed: int = 0):
    """Run the class checks for the body's family and return a copy with
    the ``validated`` flag set; raises if a check fails.

    Custom shadows stay unvalidated until this passes, since the dilation
    comparisons are only guaranteed on the supported classes.
    """
    report = check_downward_closed(body, samples, rng_seed)
    if not report.ok:
        raise ValueError(
            f"downward-closure violation: member {report.violation[0]} "
            f"ejects shrink {report.violation[1]}"
        )
    if isinstance(body, UnconditionalBody):
        if not check_unconditional(body, samples, rng_seed):
            raise ValueError("membership is not sign-flip invariant")
        if not check_midpoint_convex(body, samples, rng_seed):
            raise ValueError("midpoint convexity check failed")
    return replace(body, validated=True)


def check_midpoint_convex(
    body: UnconditionalBody, samples: int = 2000, rng_seed: int = 0
) -> bool:
    """Midpoints of sampled member pairs must stay inside."""
    rng = _validation_rng(rng_seed)
    x = _orthant_cloud(rng, samples, body.dim) * rng.choice([-1.0, 1.0], size=(samples, body.dim))
    y = _orthant_cloud(rng, samples, body.dim) * rng.choice([-1.0, 1.0], size=(samples, body.dim))
    both = body.contains(x) & body.contains(y)
    if not both.any():
        return True
    mid = 0.5 * (x[both] + y[both])
    return bool(body.contains(mid).all())


# ---------------------------------------------------------------------------
# Descriptor parsing


def _parse_params(text: str) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    current: str | None = None
    for token in text.split(","):
        if "=" in token:
            current, first = token.split("=", 1)
            current = current.strip()
            out[current] = [first]
        elif current is not None:
            out[current].append(token)
        else:
            raise ValueError(f"malformed descriptor parameters: {text!r}")
    return out


def _one_float(params: dict, key: str, desc: str) -> float:
    if key not in params or len(params[key]) != 1:
        raise ValueError(f"descriptor {desc!r}: expected a single value for {key!r}")
    return float(params[key][0])


def _one_int(params: dict, key: str, desc: str, default: int | None = None) -> int:
    if key not in params:
        if default is not None:
            return default
        raise ValueError(f"descriptor {desc!r}: missing {key!r}")
    return int(params[key][0])


def parse_descriptor(text: str, family: str | None = None) -> _RadialBody:
    """Parse the documented ``kind:key=value,...`` text form.

    ``family`` ("reinhardt" or "unconditional") disambiguates kinds that
    exist in both families (weighted-lp-ball, product).
    """
    text = text.strip()
    if ":" not in text:
        raise ValueError(f"descriptor {text!r} has no kind prefix")
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    if kind == "product":
        if not rest.startswith("parts="):
            raise ValueError(f"product descriptor must be product:parts=...: {text!r}")
        parts = [parse_descriptor(p, family) for p in rest[len("parts="):].split("|")]
        return product(*parts)
    params = _parse_params(rest)
    if kind == "cylinder":
        return cylinder_body(_one_float(params, "R", text), _one_int(params, "n", text, 1))
    if kind == "polydisc":
        return polydisc([float(v) for v in params.get("r", [])])
    if kind == "weighted-lp-ball" or kind == "lp-ball":
        p = _one_float(params, "p", text)
        scale = float(params["scale"][0]) if "scale" in params else 1.0
        if family == "unconditional":
            n = _one_int(params, "n", text, len(params.get("w", [])) or None)
            w = [float(v) for v in params["w"]] if "w" in params else None
            return unconditional_lp_ball(p, n, scale, w)
        if "w" not in params:
            raise ValueError(f"descriptor {text!r}: Reinhardt lp ball needs weights w=")
        return reinhardt_lp_ball([float(v) for v in params["w"]], p, scale)
    if kind == "strip":
        return strip_body(_one_float(params, "p", text), _one_int(params, "n", text, 1))
    if kind == "cube":
        return cube_body(_one_float(params, "a", text), _one_int(params, "n", text, 1))
    if kind == "box":
        return box_body([float(v) for v in params.get("a", [])])
    if kind == "cross-polytope":
        return cross_polytope(_one_float(params, "scale", text), _one_int(params, "n", text, 1))
    if kind == "annulus":
        return annulus_body(_one_float(params, "inner", text), _one_float(params, "outer", text))
    if kind == "upper-set":
        return upper_set_body(_one_float(params, "c", text), _one_int(params, "n", text, 1))
    raise ValueError(f"unknown body kind {kind!r} in descriptor {text!r}")
