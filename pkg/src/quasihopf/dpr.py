"""Concrete normalized unimodular quasi-Hopf algebras.

Two families: group algebras k[G] (trivial coassociator, degenerate
monodromy -- test fixtures for the algebra layer only) and the twisted
double D^omega[G] of a finite group by a 3-cocycle.  The twisted-double
structure constants are transcribed from the standard construction; the
exact axiom suite is their correctness gate, and ``build_dpr`` refuses to
return a bundle that fails any part of it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from quasihopf.algebra import (DerivedElements, QuasiHopfData, Report, Check,
                               VerificationError, derive_elements, tensor_mul,
                               verify_antipode, verify_quasi_bialgebra,
                               verify_quasitriangular, verify_ribbon)
from quasihopf.scalar import Cyclo, ONE, ZERO, rat, root_of_unity
from quasihopf.tensors import Tensor


class FiniteGroup:
    def __init__(self, names: list[str], table: list[list[int]]):
        self.order = len(names)
        self.names = names
        self.table = table
        self.identity = self._find_identity()
        self.inv = [self._find_inverse(i) for i in range(self.order)]
        self._check_axioms()

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, x: int, g: int) -> int:
        """x^{-1} g x."""
        return self.mul(self.mul(self.inv[x], g), x)

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][x] == x and self.table[x][e] == x
                   for x in range(self.order)):
                return e
        raise ValueError("no identity element")

    def _find_inverse(self, a: int) -> int:
        for b in range(self.order):
            if self.table[a][b] == self.identity and self.table[b][a] == self.identity:
                return b
        raise ValueError(f"no inverse for element {self.names[a]}")

    def _check_axioms(self) -> None:
        n = self.order
        for a in range(n):
            for b in range(n):
                if not (0 <= self.table[a][b] < n):
                    raise ValueError("multiplication table out of range")
                for c in range(n):
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise ValueError(
                            f"non-associative at ({self.names[a]},{self.names[b]},{self.names[c]})")

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        names = [f"g{k}" if k else "e" for k in range(n)]
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return FiniteGroup(names, table)

    @staticmethod
    def symmetric(n: int) -> "FiniteGroup":
        perms = sorted(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        # (p*q)(i) = p(q(i)): apply q first, then p.
        table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
        names = ["".join(str(x) for x in p) for p in perms]
        return FiniteGroup(names, table)


NAMED_GROUPS = {
    "Z2": lambda: FiniteGroup.cyclic(2),
    "Z3": lambda: FiniteGroup.cyclic(3),
    "Z4": lambda: FiniteGroup.cyclic(4),
    "S3": lambda: FiniteGroup.symmetric(3),
}


@dataclass
class ThreeCocycle:
    """Root-of-unity valued 3-cochain: value(a,b,c) = zeta_conductor^exponents[a,b,c]."""
    conductor: int
    exponents: dict[tuple[int, int, int], int]

    def value(self, a: int, b: int, c: int) -> Cyclo:
        k = self.exponents.get((a, b, c), 0)
        return root_of_unity(self.conductor, k)

    def value_inv(self, a: int, b: int, c: int) -> Cyclo:
        k = self.exponents.get((a, b, c), 0)
        return root_of_unity(self.conductor, -k)

    def is_trivial(self) -> bool:
        return all(k % self.conductor == 0 for k in self.exponents.values())


def trivial_cocycle() -> ThreeCocycle:
    return ThreeCocycle(1, {})


def cyclic_cocycle(p: int, q: int) -> ThreeCocycle:
    """The standard degree-q representative on Z/p:
    omega(a,b,c) = zeta_p^{q a floor((b+c)/p)} with representatives 0..p-1."""
    if p < 1:
        raise ValueError("p must be >= 1")
    exps = {}
    for a in range(p):
        for b in range(p):
            for c in range(p):
                exps[(a, b, c)] = (q * a * ((b + c) // p)) % p
    return ThreeCocycle(p, exps)


def check_cocycle(group: FiniteGroup, omega: ThreeCocycle) -> Report:
    rep = Report("3-cocycle conditions")
    e = group.identity
    ok, wit = True, ""
    for a in range(group.order):
        for b in range(group.order):
            for args in ((e, a, b), (a, e, b), (a, b, e)):
                if omega.value(*args) != ONE:
                    ok, wit = False, str(tuple(group.names[x] for x in args))
                    break
            if not ok:
                break
        if not ok:
            break
    rep.record("normalized (unit argument gives 1)", ok, wit)

    ok, wit = True, ""
    n = group.order
    for g1 in range(n):
        for g2 in range(n):
            for g3 in range(n):
                for g4 in range(n):
                    lhs = omega.value(g2, g3, g4) * omega.value(g1, group.mul(g2, g3), g4) \
                        * omega.value(g1, g2, g3)
                    rhs = omega.value(group.mul(g1, g2), g3, g4) \
                        * omega.value(g1, g2, group.mul(g3, g4))
                    if lhs != rhs:
                        ok = False
                        wit = str(tuple(group.names[x] for x in (g1, g2, g3, g4)))
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    rep.record("3-cocycle identity on G^4", ok, wit)
    return rep


# ---------------------------------------------------------------------------
# group algebras k[G]


def build_group_algebra(group: FiniteGroup) -> QuasiHopfData:
    """k[G] with Delta(g) = g x g, S(g) = g^{-1}, trivial Phi/R/alpha/beta/v."""
    d = group.order
    mult_rows = {(i, j): [(group.mul(i, j), ONE)] for i in range(d) for j in range(d)}
    unit = Tensor.basis(d, (group.identity,))
    counit = [ONE] * d
    coproduct = [Tensor(d, 2, {(i, i): ONE}) for i in range(d)]
    antipode = [[(group.inv[i], ONE)] for i in range(d)]
    unit3 = Tensor(d, 3, {(group.identity,) * 3: ONE})
    unit2 = Tensor(d, 2, {(group.identity,) * 2: ONE})
    alg = QuasiHopfData(
        dim=d, mult_rows=mult_rows, unit=unit, counit=counit, coproduct=coproduct,
        antipode=antipode, phi=unit3, r=unit2, alpha=unit.copy(), beta=unit.copy(),
        v=unit.copy(), phi_inv=unit3.copy(), antipode_inv=antipode,
        v_inv=unit.copy(), basis_names=list(group.names))
    return alg


# ---------------------------------------------------------------------------
# the twisted double D^omega[G]


def _theta(group: FiniteGroup, om: ThreeCocycle, g: int, x: int, y: int) -> Cyclo:
    xy = group.mul(x, y)
    t1 = om.value(g, x, y)
    t2 = om.value(x, y, group.conj(xy, g))
    t3 = om.value(x, group.conj(x, g), y)
    return t1 * t2 * t3.inv()


def _gamma(group: FiniteGroup, om: ThreeCocycle, x: int, h: int, k: int) -> Cyclo:
    t1 = om.value(h, k, x)
    t2 = om.value(x, group.conj(x, h), group.conj(x, k))
    t3 = om.value(h, x, group.conj(x, k))
    return t1 * t2 * t3.inv()


def build_dpr(group: FiniteGroup, omega: ThreeCocycle, check: bool = True) -> QuasiHopfData:
    """The twisted double on basis {(g, x)}, dim |G|^2, fully gate-checked."""
    coc = check_cocycle(group, omega)
    if not coc.passed:
        raise VerificationError(coc)

    n = group.order
    d = n * n
    e = group.identity

    def bi(g: int, x: int) -> int:
        return g * n + x

    names = [f"({group.names[g]}|{group.names[x]})" for g in range(n) for x in range(n)]

    mult_rows: dict[tuple[int, int], list] = {}
    for g in range(n):
        for x in range(n):
            for h in range(n):
                for y in range(n):
                    if g != group.mul(group.mul(x, h), group.inv[x]):
                        continue
                    c = _theta(group, omega, g, x, y)
                    mult_rows[(bi(g, x), bi(h, y))] = [(bi(g, group.mul(x, y)), c)]

    unit = Tensor(d, 1, {(bi(g, e),): ONE for g in range(n)})
    counit = [ONE if g == e else ZERO for g in range(n) for _ in range(n)]

    coproduct = []
    for g in range(n):
        for x in range(n):
            t = Tensor(d, 2)
            for h in range(n):
                k = group.mul(group.inv[h], g)
                t.add_term((bi(h, x), bi(k, x)), _gamma(group, omega, x, h, k))
            coproduct.append(t)

    antipode = []
    for g in range(n):
        for x in range(n):
            gi, xi = group.inv[g], group.inv[x]
            c = (_theta(group, omega, gi, x, xi) * _gamma(group, omega, x, g, gi)).inv()
            antipode.append([(bi(group.conj(x, gi), xi), c)])

    phi = Tensor(d, 3)
    phi_inv = Tensor(d, 3)
    for g in range(n):
        for h in range(n):
            for k in range(n):
                idx = (bi(g, e), bi(h, e), bi(k, e))
                phi.add_term(idx, omega.value_inv(g, h, k))
                phi_inv.add_term(idx, omega.value(g, h, k))

    r = Tensor(d, 2)
    for g in range(n):
        for h in range(n):
            r.add_term((bi(g, e), bi(h, g)), ONE)

    alpha = unit.copy()
    beta = Tensor(d, 1)
    for g in range(n):
        beta.add_term((bi(g, e),), omega.value(g, group.inv[g], g))

    # Provisional bundle (v = 1) to compute u; the ribbon element is found below.
    prov = QuasiHopfData(dim=d, mult_rows=mult_rows, unit=unit, counit=counit,
                         coproduct=coproduct, antipode=antipode, phi=phi, r=r,
                         alpha=alpha, beta=beta, v=unit.copy(), phi_inv=phi_inv,
                         v_inv=unit.copy(), basis_names=names)
    v = _find_ribbon_element(prov, group, omega, bi)
    alg = QuasiHopfData(dim=d, mult_rows=mult_rows, unit=unit, counit=counit,
                        coproduct=coproduct, antipode=antipode, phi=phi, r=r,
                        alpha=alpha, beta=beta, v=v, phi_inv=phi_inv,
                        basis_names=names)
    if check:
        gate_dpr(alg)
    return alg


def gate_dpr(alg: QuasiHopfData) -> DerivedElements:
    """Full verification gate; raises on the first failing report."""
    from quasihopf.integrals import check_M_nondegenerate, check_unimodular, find_left_integrals

    for fn in (verify_quasi_bialgebra, verify_antipode, verify_quasitriangular):
        rep = fn(alg)
        if not rep.passed:
            raise VerificationError(rep)
    der = derive_elements(alg)
    rep = verify_ribbon(alg, der)
    if not rep.passed:
        raise VerificationError(rep)
    integrals = find_left_integrals(alg)
    if len(integrals) != 1:
        raise VerificationError(Report("integral space", [
            Check("one-dimensional left integral space", False, f"dim={len(integrals)}")]))
    if not check_unimodular(alg, integrals[0]):
        raise VerificationError(Report("unimodularity", [
            Check("left integral is two-sided", False)]))
    nondeg, _ = check_M_nondegenerate(der)
    if not nondeg:
        raise VerificationError(Report("monodromy", [
            Check("monodromy element nondegenerate", False)]))
    return der


def _find_ribbon_element(prov: QuasiHopfData, group: FiniteGroup,
                         omega: ThreeCocycle, bi) -> Tensor:
    """Locate the ribbon element v.

    For the untwisted double, u itself is ribbon.  Otherwise v is sought on
    the ansatz span{(g, g^{-1})} by exact square roots of the coefficients of
    u S(u), with the sign pattern fixed by the ribbon conditions.
    """
    d = prov.dim
    u = _compute_u(prov)
    if omega.is_trivial():
        return u
    from quasihopf.algebra import compute_gamma_delta_f
    _, _, f, f_inv = compute_gamma_delta_f(prov)
    target = prov.mul(u, prov.s(u))  # v^2
    n = group.order
    # v = sum_g c_g (g, g^{-1});  v^2 = sum_g c_g^2 theta_g(g^{-1}, g^{-1}) (g, g^{-2}).
    allowed = {(bi(g, group.mul(group.inv[g], group.inv[g])),): g for g in range(n)}
    if any(ix not in allowed for ix in target.entries):
        raise VerificationError(Report("ribbon element", [Check(
            "u S(u) supported on the ribbon ansatz", False,
            "support outside {(g, g^-2)}")]))
    roots: list[tuple[int, Cyclo]] = []
    for ix, coeff in target.entries.items():
        g = allowed[ix]
        th = _theta(group, omega, g, group.inv[g], group.inv[g])
        roots.append((g, _cyclo_sqrt(coeff * th.inv())))
    for signs in itertools.product((1, -1), repeat=len(roots)):
        v = Tensor(d, 1)
        for sgn, (g, root) in zip(signs, roots):
            val = root if sgn == 1 else -root
            v.add_term((bi(g, group.inv[g]),), val)
        if _ribbon_conditions_hold(prov, u, v, f, f_inv):
            return v
    raise VerificationError(Report("ribbon element", [Check(
        "ribbon conditions solvable on the ansatz", False,
        "no sign pattern satisfies the ribbon axioms")]))


def _compute_u(alg: QuasiHopfData) -> Tensor:
    d = alg.dim
    u = Tensor(d, 1)
    for (xb, yb, zb), cp in alg.phi_inv.entries.items():
        inner = alg.mul_many(Tensor.basis(d, (yb,)), alg.beta, alg.s(Tensor.basis(d, (zb,))))
        w = alg.s(inner)
        for (sj, tj), cr in alg.r.entries.items():
            term = alg.mul_many(w, alg.s(Tensor.basis(d, (tj,))), alg.alpha,
                                Tensor.basis(d, (sj,)), Tensor.basis(d, (xb,)))
            for ix, c in term.entries.items():
                u.add_term(ix, c * cp * cr)
    return u


def _ribbon_conditions_hold(alg: QuasiHopfData, u: Tensor, v: Tensor,
                            f: Tensor, f_inv: Tensor) -> bool:
    if alg.s(v) != v or alg.eps(v) != ONE:
        return False
    if alg.mul(v, v) != alg.mul(u, alg.s(u)):
        return False
    for i in range(alg.dim):
        e = alg.basis_element(i)
        if alg.mul(v, e) != alg.mul(e, v):
            return False
    try:
        v_inv = alg.invert(v)
    except ValueError:
        return False
    big_g = alg.mul(u, v_inv)
    lhs = alg.delta(big_g)
    rhs = alg.mul_many(f_inv, alg.s(f.permute((1, 0))), big_g.otimes(big_g))
    return lhs == rhs


def _cyclo_sqrt(z: Cyclo) -> Cyclo:
    """Exact square root of q * zeta_n^k (q rational); raises otherwise."""
    from gmpy2 import isqrt
    for k in range(z.n):
        w = z * root_of_unity(z.n, -k)
        if w.is_rational():
            q = w.as_rational()
            num, den = q.numerator, q.denominator
            sign = 1
            if num < 0:
                sign, num = -1, -num
            rn, rd = isqrt(num), isqrt(den)
            if rn * rn != num or rd * rd != den:
                break
            out = rat(int(rn), int(rd)) * root_of_unity(2 * z.n, k)
            if sign < 0:
                out = out * root_of_unity(4, 1)
            return out
    raise ValueError(f"no exact square root of {z} in a cyclotomic field")
