"""Text file format for algebra bundles.

Line-oriented: `dim d` header, then sections mult / coproduct / counit /
antipode / phi / r / alpha / beta / v, each listing sparse entries as
`indices... : scalar`.  Serialization is deterministic (sorted indices,
canonical scalar text), so serialize . parse is the identity on files the
library writes.
"""

from __future__ import annotations

from quasihopf import linalg
from quasihopf.algebra import QuasiHopfData
from quasihopf.scalar import Cyclo, ONE, ZERO, parse_scalar
from quasihopf.tensors import Tensor

_SECTIONS = ("mult", "coproduct", "counit", "antipode", "phi", "r", "alpha", "beta", "v")
_INDEX_COUNT = {"mult": 3, "coproduct": 3, "counit": 1, "antipode": 2,
                "phi": 3, "r": 2, "alpha": 1, "beta": 1, "v": 1}


class BundleFormatError(ValueError):
    pass


def serialize(alg: QuasiHopfData) -> str:
    lines = [f"dim {alg.dim}"]

    def emit(name: str, rows: list[tuple[tuple[int, ...], Cyclo]]):
        lines.append(name)
        for idx, c in sorted(rows, key=lambda t: t[0]):
            lines.append(" ".join(str(i) for i in idx) + " : " + str(c))

    emit("mult", [((i, j, k), c) for (i, j), row in alg.mult_rows.items()
                  for k, c in row])
    emit("coproduct", [((i,) + ab, c) for i, t in enumerate(alg.coproduct)
                       for ab, c in t.entries.items()])
    emit("counit", [((i,), c) for i, c in enumerate(alg.counit) if not c.is_zero()])
    emit("antipode", [((i, j), c) for i, row in enumerate(alg.antipode) for j, c in row])
    emit("phi", list(alg.phi.entries.items()))
    emit("r", list(alg.r.entries.items()))
    emit("alpha", list(alg.alpha.entries.items()))
    emit("beta", list(alg.beta.entries.items()))
    emit("v", list(alg.v.entries.items()))
    return "\n".join(lines) + "\n"


def parse(text: str) -> QuasiHopfData:
    dim = None
    section = None
    data: dict[str, list[tuple[tuple[int, ...], Cyclo]]] = {s: [] for s in _SECTIONS}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dim "):
            dim = int(line.split()[1])
            continue
        if line in _SECTIONS:
            section = line
            continue
        if ":" not in line:
            raise BundleFormatError(f"line {lineno}: expected `indices : scalar`")
        if section is None or dim is None:
            raise BundleFormatError(f"line {lineno}: entry before dim/section header")
        head, _, tail = line.partition(":")
        idx = tuple(int(t) for t in head.split())
        if len(idx) != _INDEX_COUNT[section]:
            raise BundleFormatError(
                f"line {lineno}: section {section} wants {_INDEX_COUNT[section]} indices")
        if any(i < 0 or i >= dim for i in idx):
            raise BundleFormatError(f"line {lineno}: basis index out of range")
        data[section].append((idx, parse_scalar(tail.strip())))
    if dim is None:
        raise BundleFormatError("missing `dim` header")
    return _assemble(dim, data)


def load(path: str) -> QuasiHopfData:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def save(path: str, alg: QuasiHopfData) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(alg))


def _assemble(d: int, data) -> QuasiHopfData:
    mult_rows: dict[tuple[int, int], list[tuple[int, Cyclo]]] = {}
    for (i, j, k), c in data["mult"]:
        mult_rows.setdefault((i, j), []).append((k, c))

    counit = [ZERO] * d
    for (i,), c in data["counit"]:
        counit[i] = c

    coproduct = [Tensor(d, 2) for _ in range(d)]
    for (i, a, b), c in data["coproduct"]:
        coproduct[i].add_term((a, b), c)

    antipode: list[list[tuple[int, Cyclo]]] = [[] for _ in range(d)]
    for (i, j), c in data["antipode"]:
        antipode[i].append((j, c))

    def vec(name: str, arity: int) -> Tensor:
        t = Tensor(d, arity)
        for idx, c in data[name]:
            t.add_term(idx, c)
        return t

    unit = _solve_unit(d, mult_rows)
    return QuasiHopfData(dim=d, mult_rows=mult_rows, unit=unit, counit=counit,
                         coproduct=coproduct, antipode=antipode,
                         phi=vec("phi", 3), r=vec("r", 2), alpha=vec("alpha", 1),
                         beta=vec("beta", 1), v=vec("v", 1))


def _solve_unit(d: int, mult_rows) -> Tensor:
    rows: list[list[Cyclo]] = []
    rhs: list[Cyclo] = []
    for j in range(d):
        for m in range(d):
            left = [ZERO] * d
            right = [ZERO] * d
            for i in range(d):
                for k, c in mult_rows.get((i, j), []):
                    if k == m:
                        left[i] = left[i] + c
                for k, c in mult_rows.get((j, i), []):
                    if k == m:
                        right[i] = right[i] + c
            rows.append(left)
            rhs.append(ONE if j == m else ZERO)
            rows.append(right)
            rhs.append(ONE if j == m else ZERO)
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise BundleFormatError("multiplication table admits no unit element")
    return Tensor(d, 1, {(i,): c for i, c in enumerate(sol)})
