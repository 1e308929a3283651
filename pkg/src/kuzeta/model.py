"""K-theory data of finite complexes and the constructions on them.

A datum records, per weight ``w``, the ranks ``beta_even = rank KU^0`` in degree
``2w``, ``beta_odd`` in degree ``2w + 1``, and the order of the torsion that sits
in skeletal weight ``w``.  Everything downstream depends only on this record.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Any, Mapping

import yaml

from .arith import is_prime, is_squarefree, prime_divisors
from .errors import ValidationError

SPLITTING_VALUES = ("complete", "unknown")


@dataclass(frozen=True)
class WeightCell:
    beta_even: int = 0
    beta_odd: int = 0
    torsion_order: int = 1

    def is_zero(self) -> bool:
        return self.beta_even == 0 and self.beta_odd == 0 and self.torsion_order == 1


@dataclass(frozen=True)
class KTheoryDatum:
    """Per-weight K-theory record; equality ignores ``name``."""

    name: str = field(compare=False)
    excluded_primes: frozenset = frozenset({2})
    cells: tuple = ()
    skeletal_splitting: str = "unknown"

    def __init__(
        self,
        name: str,
        excluded_primes=frozenset({2}),
        weights: Mapping[int, WeightCell] | None = None,
        skeletal_splitting: str = "unknown",
    ):
        norm = tuple(
            sorted((int(w), c) for w, c in (weights or {}).items() if not c.is_zero())
        )
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "excluded_primes", frozenset(int(p) for p in excluded_primes))
        object.__setattr__(self, "cells", norm)
        object.__setattr__(self, "skeletal_splitting", skeletal_splitting)

    @property
    def weights(self) -> dict[int, WeightCell]:
        return dict(self.cells)

    def cell(self, w: int) -> WeightCell:
        return self.weights.get(w, WeightCell())

    def betti(self, n: int) -> int:
        """Rank of KU^0 in degree n, read off the weight cells."""
        if n % 2 == 0:
            return self.cell(n // 2).beta_even
        return self.cell((n - 1) // 2).beta_odd

    @property
    def a(self) -> int | None:
        return self.cells[0][0] if self.cells else None

    @property
    def b(self) -> int | None:
        return self.cells[-1][0] if self.cells else None

    @property
    def has_torsion(self) -> bool:
        return any(c.torsion_order > 1 for _, c in self.cells)

    @property
    def torsion_free(self) -> bool:
        return not self.has_torsion

    @property
    def even_concentrated(self) -> bool:
        return all(c.beta_odd == 0 for _, c in self.cells)

    @property
    def torsion_only(self) -> bool:
        return all(c.beta_even == 0 and c.beta_odd == 0 for _, c in self.cells)

    def with_name(self, name: str) -> "KTheoryDatum":
        return KTheoryDatum(name, self.excluded_primes, self.weights, self.skeletal_splitting)


def validate(x: KTheoryDatum) -> KTheoryDatum:
    if 2 not in x.excluded_primes:
        raise ValidationError("excluded_primes must contain 2")
    for p in x.excluded_primes:
        if not is_prime(p):
            raise ValidationError(f"excluded prime {p} is not prime")
    if x.skeletal_splitting not in SPLITTING_VALUES:
        raise ValidationError(
            f"skeletal_splitting must be one of {SPLITTING_VALUES}, got {x.skeletal_splitting!r}"
        )
    for w, c in x.cells:
        for label, v in (("beta_even", c.beta_even), ("beta_odd", c.beta_odd)):
            if not isinstance(v, int) or v < 0:
                raise ValidationError(f"weight {w}: {label} must be a non-negative integer, got {v!r}")
        n = c.torsion_order
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"weight {w}: torsion_order must be a positive integer, got {n!r}")
        if n % 2 == 0:
            raise ValidationError(f"weight {w}: torsion_order {n} is even")
        if not is_squarefree(n):
            raise ValidationError(
                f"weight {w}: torsion_order {n} is not square-free; torsion such as Z/9 "
                "(the mod-9 Moore spectrum) is an open case and is not supported"
            )
        shared = [p for p in prime_divisors(n) if p in x.excluded_primes]
        if shared:
            raise ValidationError(
                f"weight {w}: torsion_order {n} shares the excluded primes {shared}"
            )
    return x


def wedge(x: KTheoryDatum, y: KTheoryDatum) -> KTheoryDatum:
    if x.excluded_primes != y.excluded_primes:
        raise ValidationError("wedge summands must have the same excluded primes")
    cells: dict[int, WeightCell] = {}
    for w in set(x.weights) | set(y.weights):
        cx, cy = x.cell(w), y.cell(w)
        if gcd(cx.torsion_order, cy.torsion_order) != 1:
            raise ValidationError(
                f"weight {w}: torsion orders {cx.torsion_order} and {cy.torsion_order} "
                "are not coprime, so the wedge has non-square-free torsion"
            )
        cells[w] = WeightCell(
            cx.beta_even + cy.beta_even,
            cx.beta_odd + cy.beta_odd,
            cx.torsion_order * cy.torsion_order,
        )
    with_torsion = [d for d in (x, y) if d.has_torsion]
    if with_torsion:
        split = "complete" if all(d.skeletal_splitting == "complete" for d in with_torsion) else "unknown"
    else:
        split = "complete" if x.skeletal_splitting == y.skeletal_splitting == "complete" else "unknown"
    return validate(KTheoryDatum(f"{x.name} v {y.name}", x.excluded_primes, cells, split))


def suspend(x: KTheoryDatum, shift: int) -> KTheoryDatum:
    """Suspension by an even number of degrees; weights move by ``shift / 2``."""
    if shift % 2:
        raise ValidationError(f"only even suspensions are supported, got {shift}")
    m = shift // 2
    name = x.name if m == 0 else f"S^{shift} {x.name}"
    return KTheoryDatum(
        name, x.excluded_primes, {w + m: c for w, c in x.cells}, x.skeletal_splitting
    )


def dual(x: KTheoryDatum) -> KTheoryDatum:
    """Spanier-Whitehead dual of torsion-free data: ``beta_n(DX) = beta_{-n}(X)``."""
    if x.has_torsion:
        raise ValidationError(
            "dual is defined only for torsion-free data; duality moves torsion to odd degree"
        )
    cells: dict[int, list[int]] = {}
    for w, c in x.cells:
        cells.setdefault(-w, [0, 0])[0] += c.beta_even
        # degree 2w+1 maps to -2w-1 = 2(-w-1)+1
        cells.setdefault(-w - 1, [0, 0])[1] += c.beta_odd
    name = x.name[2:] if x.name.startswith("D ") else f"D {x.name}"
    return KTheoryDatum(
        name,
        x.excluded_primes,
        {w: WeightCell(e, o) for w, (e, o) in cells.items()},
        x.skeletal_splitting,
    )


def desuspended_dual(x: KTheoryDatum) -> KTheoryDatum:
    """Torsion part of the desuspended dual: torsion at weight w moves to -w."""
    if not x.torsion_only:
        raise ValidationError("desuspended_dual expects torsion-only data")
    return KTheoryDatum(
        x.name,
        x.excluded_primes,
        {-w: c for w, c in x.cells},
        x.skeletal_splitting,
    )


def sphere() -> KTheoryDatum:
    return KTheoryDatum("sphere", {2}, {0: WeightCell(1)}, "unknown")


def cpn(n: int) -> KTheoryDatum:
    if not isinstance(n, int) or n < 0:
        raise ValidationError(f"cpn needs a non-negative integer, got {n!r}")
    return KTheoryDatum(f"cpn{n}", {2}, {w: WeightCell(1) for w in range(n + 1)}, "unknown")


def moore(q: int) -> KTheoryDatum:
    """Datum of the desuspended mod-q Moore spectrum: Z/q at weight 0."""
    if not isinstance(q, int) or q < 3 or q % 2 == 0 or not is_squarefree(q):
        raise ValidationError(f"moore needs an odd square-free integer >= 3, got {q!r}")
    return validate(KTheoryDatum(f"moore{q}", {2}, {0: WeightCell(0, 0, q)}, "complete"))


def builtin(name: str, param: int | None = None) -> KTheoryDatum:
    if name == "sphere":
        return sphere()
    if name == "cpn":
        return cpn(param)
    if name == "moore":
        return moore(param)
    raise ValidationError(f"unknown builtin {name!r}")


# --- input documents -------------------------------------------------------

_EXPLICIT_KEYS = {"name", "excluded_primes", "weights", "skeletal_splitting"}
_CELL_KEYS = {"beta_even", "beta_odd", "torsion_order"}


def _as_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValidationError(f"{where}: expected an integer, got {value!r}")
    try:
        return int(value)
    except ValueError:
        raise ValidationError(f"{where}: expected an integer, got {value!r}") from None


def _apply_overrides(x: KTheoryDatum, doc: Mapping) -> KTheoryDatum:
    name = doc.get("name", x.name)
    primes = x.excluded_primes
    if "excluded_primes" in doc:
        primes = frozenset(_as_int(p, "excluded_primes") for p in doc["excluded_primes"])
    split = doc.get("skeletal_splitting", x.skeletal_splitting)
    return KTheoryDatum(str(name), primes, x.weights, split)


def parse_document(doc: Any) -> KTheoryDatum:
    """Build a validated datum from a parsed input document."""
    if not isinstance(doc, Mapping):
        raise ValidationError(f"datum document must be a mapping, got {type(doc).__name__}")
    if "datum" in doc:
        return parse_document(doc["datum"])
    overrides = {"name", "excluded_primes", "skeletal_splitting"}
    if "builtin" in doc:
        extra = set(doc) - {"builtin", "n", "q"} - overrides
        if extra:
            raise ValidationError(f"unknown keys in builtin reference: {sorted(extra)}")
        kind = doc["builtin"]
        param = None
        if kind == "cpn":
            param = _as_int(doc.get("n"), "cpn.n")
        elif kind == "moore":
            param = _as_int(doc.get("q"), "moore.q")
        return validate(_apply_overrides(builtin(kind, param), doc))
    if "wedge" in doc:
        extra = set(doc) - {"wedge"} - overrides
        if extra:
            raise ValidationError(f"unknown keys in wedge: {sorted(extra)}")
        parts = doc["wedge"]
        if not isinstance(parts, list) or not parts:
            raise ValidationError("wedge expects a non-empty list of data")
        out = parse_document(parts[0])
        for part in parts[1:]:
            out = wedge(out, parse_document(part))
        return validate(_apply_overrides(out, doc))
    if "suspend" in doc:
        extra = set(doc) - {"suspend"} - overrides
        if extra:
            raise ValidationError(f"unknown keys in suspend: {sorted(extra)}")
        sub = doc["suspend"]
        if not isinstance(sub, Mapping) or "of" not in sub or "by" not in sub:
            raise ValidationError("suspend expects a mapping with keys 'of' and 'by'")
        out = suspend(parse_document(sub["of"]), _as_int(sub["by"], "suspend.by"))
        return validate(_apply_overrides(out, doc))
    extra = set(doc) - _EXPLICIT_KEYS
    if extra:
        raise ValidationError(f"unknown keys in datum: {sorted(extra)}")
    if "weights" not in doc:
        raise ValidationError("datum needs 'weights' (or a builtin/wedge/suspend form)")
    raw = doc["weights"] or {}
    if not isinstance(raw, Mapping):
        raise ValidationError("weights must be a mapping from weight to cell")
    cells = {}
    for w, c in raw.items():
        wi = _as_int(w, "weight")
        if not isinstance(c, Mapping):
            raise ValidationError(f"weight {wi}: cell must be a mapping")
        bad = set(c) - _CELL_KEYS
        if bad:
            raise ValidationError(f"weight {wi}: unknown keys {sorted(bad)}")
        cells[wi] = WeightCell(
            _as_int(c.get("beta_even", 0), f"weight {wi}.beta_even"),
            _as_int(c.get("beta_odd", 0), f"weight {wi}.beta_odd"),
            _as_int(c.get("torsion_order", 1), f"weight {wi}.torsion_order"),
        )
    primes = doc.get("excluded_primes", [2])
    if not isinstance(primes, list):
        raise ValidationError("excluded_primes must be a list")
    return validate(
        KTheoryDatum(
            str(doc.get("name", "unnamed")),
            [_as_int(p, "excluded_primes") for p in primes],
            cells,
            doc.get("skeletal_splitting", "unknown"),
        )
    )


def datum_to_document(x: KTheoryDatum) -> dict:
    return {
        "name": x.name,
        "excluded_primes": sorted(x.excluded_primes),
        "weights": {
            w: {"beta_even": c.beta_even, "beta_odd": c.beta_odd, "torsion_order": c.torsion_order}
            for w, c in x.cells
        },
        "skeletal_splitting": x.skeletal_splitting,
    }


def load_datum(path: str | Path) -> KTheoryDatum:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ValidationError(f"{path} is not valid YAML: {exc}") from None
    return parse_document(doc)
